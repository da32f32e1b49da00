#include "doctest.h"

#include "bvlab/cli.hpp"
#include "json.hpp"
#include "support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bvlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.push_back("--tau-cache");
  args.push_back(BVLAB_TEST_TAU_CACHE);
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  auto d = fs::temp_directory_path() / "bvlab_cli_unit";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json manifest(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify symcore exits cleanly") {
    auto m = scratch() / "verify.manifest.json";
    auto r = cli({"verify", "--suite", "symcore", "--seed", "1", "--manifest", m.string()});
    CHECK(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(manifest(m)["status"] == "ok");
  }

  TEST_CASE("titchmarsh two-row report and missing --pi") {
    auto m = scratch() / "t.manifest.json";
    auto r = cli({"titchmarsh", "--pi", "sym3-delta", "--x", "1e4,1e5", "--manifest", m.string()});
    CHECK(r.code == kExitOk);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
    auto j = manifest(m);
    CHECK(j["versions"]["tau_fnv1a"].get<std::string>().size() == 16);
    auto bad = cli({"titchmarsh", "--x", "1e4", "--manifest", m.string()});
    CHECK(bad.code == kExitUsage);
    CHECK(manifest(m)["status"] == "usage_error");
  }

  TEST_CASE("bv output is byte-identical across runs and thread counts") {
    auto d = scratch();
    auto a = d / "a.csv", b = d / "b.csv";
    auto r1 = cli({"bv", "--pi", "delta", "--x", "1e5", "--A", "1", "--B", "1", "--seed", "4", "--threads", "1", "--out", a.string()});
    auto r2 = cli({"--threads", "2", "bv", "--pi", "delta", "--x", "1e5", "--A", "1", "--B", "1", "--seed", "4", "--out", b.string()});
    REQUIRE(r1.code == kExitOk);
    REQUIRE(r2.code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).rfind("x,Q,D,D_over_x,pi,eta,B,A\n", 0) == 0);
    auto j = manifest(fs::path(a.string() + ".manifest.json"));
    CHECK(j["outputs"][0] == a.string());
    CHECK(j["config"]["x"] == 1e5);
  }

  TEST_CASE("invalid arguments are usage errors") {
    auto m = (scratch() / "u.manifest.json").string();
    CHECK(cli({"bv", "--pi", "delta", "--x", "2e6", "--manifest", m}).code == kExitUsage);
    CHECK(cli({"bv", "--pi", "sym5", "--manifest", m}).code == kExitUsage);
    CHECK(cli({"lfunc", "eval", "--d", "9", "--manifest", m}).code == kExitUsage);
    CHECK(cli({"--manifest", m}).code == kExitUsage);
  }

  TEST_CASE("lfunc subcommands") {
    auto m = (scratch() / "l.manifest.json").string();
    auto ev = cli({"lfunc", "eval", "--s", "0.5", "--d", "-3", "--manifest", m});
    CHECK(ev.code == kExitOk);
    CHECK(std::count(ev.out.begin(), ev.out.end(), '\n') == 2);
    auto sm = cli({"lfunc", "second-moment", "--Q", "1..5:1", "--format", "json", "--manifest", m});
    CHECK(sm.code == kExitOk);
    CHECK(nlohmann::json::parse(sm.out)["rows"].size() == 5);
    auto sc = cli({"lfunc", "siegel-scan", "--dmax", "50", "--manifest", m});
    CHECK(sc.code == kExitOk);
    CHECK(sc.out.rfind("d,conductor,L1_re,L1_im,abs_L1\n", 0) == 0);
    auto j = manifest(m);
    CHECK(j["flags"]["nonpositive_value"] == false);
    CHECK(j["flags"].contains("envelope_slope_below_-0.5"));
    CHECK(j["meta"].contains("min_abs_L1"));
  }

  TEST_CASE("config file, flags and BVLAB_SEED precedence") {
    auto d = scratch();
    auto ini = d / "run.ini";
    {
      std::ofstream f(ini);
      f << "seed=5\n[titchmarsh]\npi=delta\nx=1e3,1e4\n";
    }
    auto m = d / "c.manifest.json";
    ::setenv("BVLAB_SEED", "77", 1);
    auto r = cli({"titchmarsh", "--config", ini.string(), "--manifest", m.string()});
    CHECK(r.code == kExitOk);
    CHECK(manifest(m)["seed"] == 5);
    CHECK(manifest(m)["config"]["pi"] == "delta");
    r = cli({"titchmarsh", "--config", ini.string(), "--seed", "9", "--pi", "sym2-delta", "--manifest", m.string()});
    CHECK(manifest(m)["seed"] == 9);
    CHECK(manifest(m)["config"]["pi"] == "sym2-delta");
    r = cli({"titchmarsh", "--pi", "delta", "--x", "1e3", "--manifest", m.string()});
    CHECK(manifest(m)["seed"] == 77);
    ::unsetenv("BVLAB_SEED");
  }
}
