#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhm/cli/cli.hpp"
#include "qhm/cli/config.hpp"
#include "qhm/cli/suites.hpp"

using namespace qhm;
using namespace qhm::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string log;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qhm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, log;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, log);
  return {code, out.str(), log.str()};
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "qhm_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("default derivations pass and write a versioned report") {
  const auto path = scratch_dir() / "derivations.json";
  const auto r = run({"derivations", "--out", path.string()});
  CHECK(r.code == kExitPass);
  const auto j = json::parse(slurp(path));
  CHECK(j.at("report_version") == kReportVersion);
  CHECK(j.at("command") == "derivations");
  CHECK(j.at("pass") == true);
  CHECK(j.at("config").at("algebra").at("alpha") == 2.0);
  CHECK_FALSE(j.at("checks").empty());
  for (const auto& c : j.at("checks")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("value"));
    CHECK(c.contains("tolerance"));
  }
  CHECK(r.log.find("PASS derivations.") != std::string::npos);
}

TEST_CASE("report goes to stdout without --out") {
  const auto r = run({"group"});
  CHECK(r.code == kExitPass);
  CHECK(json::parse(r.out).at("command") == "group");
}

TEST_CASE("config errors exit 2") {
  CHECK(run({"axioms", "--set", "algebra.mu=0", "--set", "algebra.nu=0"}).code ==
        kExitConfigError);
  CHECK(run({"axioms", "--set", "algebra.no_such_key=1"}).code == kExitConfigError);
  CHECK(run({"axioms", "--set", "truncation.Nx=\"many\""}).code == kExitConfigError);
  CHECK(run({"axioms", "--set", "noequals"}).code == kExitConfigError);
  CHECK(run({"axioms", "--config", (scratch_dir() / "missing.json").string()}).code ==
        kExitConfigError);
  const auto bad = scratch_dir() / "bad.json";
  write(bad, "{ not json");
  CHECK(run({"axioms", "--config", bad.string()}).code == kExitConfigError);
  const auto unknown = scratch_dir() / "unknown.json";
  write(unknown, R"({"algebra": {"hbar": 0.2, "colour": 1}})");
  CHECK(run({"axioms", "--config", unknown.string()}).code == kExitConfigError);
  CHECK(run({"frobnicate"}).code == kExitConfigError);
  CHECK(run({}).code == kExitConfigError);
  CHECK(run({"minimize", "--set", "minimize.optim.method=\"newton\""}).code ==
        kExitConfigError);
}

TEST_CASE("config file and overrides are merged into the report") {
  const auto cfg = scratch_dir() / "cfg.json";
  write(cfg, R"({"algebra": {"hbar": 0.25}, "group": {"pairs": 2}})");
  const auto r = run({"group", "--config", cfg.string(), "--set", "group.range=0.5"});
  CHECK(r.code == kExitPass);
  const auto j = json::parse(r.out);
  CHECK(j.at("config").at("algebra").at("hbar") == 0.25);
  CHECK(j.at("config").at("group").at("pairs") == 2);
  CHECK(j.at("config").at("group").at("range") == 0.5);
  CHECK(j.at("details").at("pairs").size() == 2);
}

TEST_CASE("negative controls fail with exit 1") {
  const auto d = run({"derivations", "--set", "derivations.alpha_perturbation=0.1"});
  CHECK(d.code == kExitSuiteFailure);
  CHECK(d.log.find("FAIL derivations.bracket_delta1_delta2_relative") != std::string::npos);
  const auto e = run({"equivalence", "--set", "forms.flip_alpha_sign=true", "--set",
                      "equivalence.runs=[{\"q\":1,\"seeds\":[1]}]"});
  CHECK(e.code == kExitSuiteFailure);
  CHECK(json::parse(e.out).at("checks").at(0).at("value").get<double>() > 1e-3);
}

TEST_CASE("axioms detect the convergence order") {
  RunConfig cfg;
  cfg.truncation.Nx = 16;
  cfg.seeds = {1};
  const auto rep = cmd_axioms(cfg);
  const auto& conv = rep.details.at("convergence").at(0);
  // Nx = 16 -> 32 -> 64: each doubling gains about 2^8
  for (const auto& r : conv.at("ratios")) CHECK(r.get<double>() > 64.0);
  bool assoc_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "associativity_relative") assoc_failed = !c.pass;
  CHECK(assoc_failed);
}

TEST_CASE("oracle with p = 0 factors") {
  RunConfig cfg;
  cfg.seeds = {1};
  cfg.oracle.trial_vectors = 2;
  const auto rep = cmd_oracle(cfg);
  CHECK(rep.pass());
  bool seen = false;
  for (const auto& c : rep.checks)
    if (c.name.find("p0") != std::string::npos) {
      seen = true;
      CHECK(c.value <= 1e-10);
    }
  CHECK(seen);
}

TEST_CASE("reports are deterministic") {
  const auto a = run({"forms", "--set", "forms_suite.samples=2"});
  const auto b = run({"forms", "--set", "forms_suite.samples=2"});
  CHECK(a.code == kExitPass);
  CHECK(a.out == b.out);
  const auto c = run({"oracle", "--set", "seeds=[2]"});
  const auto d = run({"oracle", "--set", "seeds=[2]"});
  CHECK(c.out == d.out);
}

TEST_CASE("config round trip") {
  RunConfig cfg;
  cfg.algebra.hbar = 0.1;
  cfg.minimize.optim.method = DescentMethod::gradient;
  cfg.seeds = {4, 9};
  const auto back = from_json(to_json(cfg));
  CHECK(to_json(back) == to_json(cfg));
  CHECK(command_names().size() == 7);
  CHECK_THROWS_AS(run_command("nope", cfg), ConfigError);
}

}  // TEST_SUITE
