#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hlq/cli.hpp"
#include "hlq/hlmass.hpp"

using namespace hlq;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hlq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const fs::path kWork = fs::temp_directory_path() / "hlq_cli_test";

struct Workdir {
  Workdir() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    ::setenv(kCheckpointEnv, (kWork / "env.tsv").c_str(), 1);
  }
};

}  // namespace

TEST_CASE("z at the first zero") {
  Workdir w;
  const Run r = run({"z", "--t", "14.1347251"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["z"].get<double>()) < 1e-6);
  CHECK(j["abs_err"].get<double>() < 1e-9);
}

TEST_CASE("scalar CSV output has a header") {
  Workdir w;
  const Run r = run({"theta", "--t", "100", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "t,theta\n100,87.972165231787216\n");
}

TEST_CASE("partition to a file") {
  Workdir w;
  const auto file = kWork / "partition.csv";
  const Run r = run({"partition", "--omega", "1", "--tau", "0", "--start", "1000", "--count", "100", "--out",
                     file.string()});
  REQUIRE(r.code == 0);
  std::istringstream csv(slurp(file));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "nu,T,gap,mass,tan_alpha,predicted_gap,rel_gap_err");
  int intervals = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() < 4 || cols[3].empty()) continue;  // terminal point
    ++intervals;
    CHECK(std::abs(std::stod(cols[3]) - 1.0) <= 1e-8);
  }
  CHECK(intervals == 100);
  CHECK(fs::exists(kWork / "env.tsv"));  // checkpoint from the environment
}

TEST_CASE("verify balasubramanian") {
  Workdir w;
  const Run r = run({"verify", "balasubramanian", "--t", "1000"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "balasubramanian");
  CHECK(j["predicted"].get<double>() == doctest::Approx(5224.31).epsilon(1e-6));
  CHECK(j["residual"].get<double>() == j["observed"].get<double>() - j["predicted"].get<double>());
}

TEST_CASE("checkpoint flag beats the environment") {
  Workdir w;
  const auto flag = kWork / "flag.tsv";
  REQUIRE(run({"mass", "--t", "50", "--checkpoint", flag.string()}).code == 0);
  CHECK(fs::exists(flag));
  CHECK_FALSE(fs::exists(kWork / "env.tsv"));
  CHECK(load_checkpoint(flag).last_integer() == 50);

  // A checkpoint built at a different correction depth is refused.
  const Run bad = run({"mass", "--t", "60", "--checkpoint", flag.string(), "--depth", "2"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("checkpoint_conflict", 0) == 0);
}

TEST_CASE("usage and computation errors") {
  Workdir w;
  const Run none = run({});
  CHECK(none.code == 2);
  CHECK(none.err.find("--checkpoint") != std::string::npos);
  CHECK(run({"z"}).code == 2);
  CHECK(run({"z", "--t", "abc"}).code == 2);
  CHECK(run({"z", "--t", "1", "--bogus"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"mass", "--t", "10", "--tol", "0.5"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const Run far = run({"z", "--t", "1e7"});
  CHECK(far.code == 1);
  CHECK(far.err.rfind("precision_unreachable", 0) == 0);
  const Run planck = run({"planck", "--t", "10000", "--count", "10"});
  CHECK(planck.code == 1);
  CHECK(planck.err.rfind("domain_error", 0) == 0);
}

TEST_CASE("the binary reports exit codes") {
  Workdir w;
  const std::string bin = HLQ_BINARY;
  CHECK(shell(bin + " z --t 25 > /dev/null") == 0);
  CHECK(shell(bin + " > /dev/null 2>&1") == 2);
  CHECK(shell(bin + " z --t 1e7 > /dev/null 2>&1") == 1);
}

TEST_CASE("report output is byte-identical across worker counts") {
  Workdir w;
  const auto a = kWork / "a", b = kWork / "b";
  const std::vector<std::string> common = {"report",     "--t-max", "3000", "--count", "40", "--nu-from", "100",
                                           "--nu-to",    "300",     "--checkpoint"};
  auto args_a = common;
  args_a.insert(args_a.end(), {(kWork / "ca.tsv").string(), "--out", a.string(), "--jobs", "1"});
  auto args_b = common;
  args_b.insert(args_b.end(), {(kWork / "cb.tsv").string(), "--out", b.string(), "--jobs", "6"});
  REQUIRE(run(args_a).code == 0);
  REQUIRE(run(args_b).code == 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    CAPTURE(e.path().filename().string());
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    ++files;
  }
  CHECK(files >= 10);
  CHECK(slurp(kWork / "ca.tsv") == slurp(kWork / "cb.tsv"));
}
