#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hlq/error.hpp"
#include "hlq/hlmass.hpp"
#include "hlq/numeric.hpp"

namespace hlq {
namespace {

double parse_double(std::string_view field, std::size_t line_no) {
  const std::string s(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    fail(ErrorKind::format_error, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

bool is_integer(double x) { return std::floor(x) == x; }

}  // namespace

void MassCheckpoint::validate() const {
  if (version != kVersion) fail(ErrorKind::format_error, "unsupported checkpoint version '" + version + "'");
  if (!(tol > 0.0 && tol <= 1e-3)) fail(ErrorKind::format_error, "checkpoint tolerance out of range");
  if (grid.empty() || grid.front().T != 0.0 || grid.front().I != 0.0) {
    fail(ErrorKind::format_error, "checkpoint grid must start at (0, 0)");
  }
  double next_integer = 1.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto& prev = grid[i - 1];
    const auto& cur = grid[i];
    if (!(cur.T > prev.T)) fail(ErrorKind::format_error, "grid heights not strictly increasing at row " + std::to_string(i));
    if (!(cur.I >= prev.I)) fail(ErrorKind::format_error, "grid mass decreases at row " + std::to_string(i));
    if (cur.T >= next_integer) {
      if (cur.T != next_integer) {
        fail(ErrorKind::format_error, "integer height " + format_g17(next_integer) + " missing from grid");
      }
      next_integer += 1.0;
    }
  }
}

long MassCheckpoint::last_integer() const {
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    if (is_integer(it->T)) return static_cast<long>(it->T);
  }
  return 0;
}

std::string serialize_checkpoint(const MassCheckpoint& ckpt) {
  const nlohmann::ordered_json header = {
      {"version", ckpt.version},
      {"tol", ckpt.tol},
      {"z_config", {{"correction_depth", ckpt.z_config.correction_depth}, {"t_switch", ckpt.z_config.t_switch}}},
  };
  std::string out = header.dump();
  out += '\n';
  for (const auto& g : ckpt.grid) {
    out += format_g17(g.T);
    out += '\t';
    out += format_g17(g.I);
    out += '\n';
  }
  return out;
}

MassCheckpoint parse_checkpoint(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::format_error, "empty checkpoint");

  MassCheckpoint ckpt;
  try {
    const auto header = nlohmann::json::parse(line);
    ckpt.version = header.at("version").get<std::string>();
    if (ckpt.version != MassCheckpoint::kVersion) {
      fail(ErrorKind::format_error, "checkpoint version '" + ckpt.version + "' does not match '" +
                                        std::string(MassCheckpoint::kVersion) + "'");
    }
    ckpt.tol = header.at("tol").get<double>();
    const auto& z = header.at("z_config");
    ckpt.z_config.correction_depth = z.at("correction_depth").get<int>();
    ckpt.z_config.t_switch = z.at("t_switch").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::format_error, std::string("bad checkpoint header: ") + e.what());
  }

  ckpt.grid.clear();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      fail(ErrorKind::format_error, "line " + std::to_string(line_no) + ": expected 'T<TAB>I'");
    }
    const std::string_view view(line);
    ckpt.grid.push_back({parse_double(view.substr(0, tab), line_no), parse_double(view.substr(tab + 1), line_no)});
  }
  if (ckpt.grid.empty()) ckpt.grid.push_back({0.0, 0.0});
  ckpt.validate();
  return ckpt;
}

MassCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io_error, "cannot read checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io_error, "read failed for " + path.string());
  return parse_checkpoint(buf.str());
}

void save_checkpoint(const std::filesystem::path& path, const MassCheckpoint& ckpt) {
  ckpt.validate();
  write_file_atomic(path, serialize_checkpoint(ckpt));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io_error, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) fail(ErrorKind::io_error, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::io_error, "rename to " + path.string() + " failed: " + ec.message());
}

}  // namespace hlq
