#pragma once

#include <string>
#include <vector>

#include "qhm/cli/config.hpp"

namespace qhm::cli {

struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=" or ">="
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string command;
  json config;
  std::vector<Check> checks;
  json details = json::object();

  void expect_le(std::string name, double value, double tol);
  void expect_ge(std::string name, double value, double tol);
  bool pass() const;
};

/// {report_version, command, config, checks[], details, pass}; contains no
/// timestamps or timings so equal inputs give byte-identical output.
json to_json(const SuiteReport& r);

SuiteReport cmd_axioms(const RunConfig& cfg);
SuiteReport cmd_derivations(const RunConfig& cfg);
SuiteReport cmd_group(const RunConfig& cfg);
SuiteReport cmd_forms(const RunConfig& cfg);
SuiteReport cmd_equivalence(const RunConfig& cfg);
SuiteReport cmd_minimize(const RunConfig& cfg);
SuiteReport cmd_oracle(const RunConfig& cfg);

/// Dispatch by command name; throws ConfigError for an unknown name.
SuiteReport run_command(const std::string& name, const RunConfig& cfg);
const std::vector<std::string>& command_names();

}  // namespace qhm::cli
