#include "qhm/cli/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "qhm/cli/suites.hpp"

namespace qhm::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Numerical checks for the quantum Heisenberg manifold algebra", "qhm"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " suite");
    sub->add_option("--config", config_path, "JSON config file (defaults are used for missing keys)");
    sub->add_option("--set", overrides, "override a config value, e.g. algebra.hbar=0.5");
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    cfg = resolve_config(config_path, overrides);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  SuiteReport rep;
  try {
    rep = run_command(command, cfg);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kExitSuiteFailure;
  }

  const std::string text = to_json(rep).dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << text)) {
      log << "error: cannot write '" << out_path << "'\n";
      return kExitConfigError;
    }
  }
  for (const auto& c : rep.checks)
    log << (c.pass ? "PASS " : "FAIL ") << command << '.' << c.name << ' ' << c.value << ' '
        << c.relation << ' ' << c.tolerance << '\n';
  return rep.pass() ? kExitPass : kExitSuiteFailure;
}

}  // namespace qhm::cli
