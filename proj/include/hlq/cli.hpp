#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "hlq/hlmass.hpp"
#include "hlq/ladder.hpp"
#include "hlq/report.hpp"

namespace hlq {

inline constexpr const char* kDefaultCheckpoint = "hlq_checkpoint.tsv";
inline constexpr const char* kCheckpointEnv = "HLQ_CHECKPOINT";

struct RunConfig {
  std::filesystem::path checkpoint_path = kDefaultCheckpoint;
  double rel_tol = 1e-9;
  int correction_depth = 4;
  double c0 = 0.0;
  double epsilon = 0.01;
  std::filesystem::path output_dir;
  std::optional<OutputFormat> format;  // per-command default when unset
  unsigned jobs = 1;

  QuadratureConfig quadrature() const;
  LadderConstants ladder() const { return LadderConstants(c0); }
};

/// Exit status: 0 ok, 1 computation error (error name on err), 2 usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hlq
