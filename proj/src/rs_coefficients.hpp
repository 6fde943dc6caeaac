#pragma once

#include <array>

namespace hlq::detail {

inline constexpr int kMaxCorrectionDepth = 4;

/// Evaluates C_0..C_depth at fractional part p, writing into out.
void rs_corrections(double p, int depth, std::array<double, kMaxCorrectionDepth + 1>& out);

}  // namespace hlq::detail
