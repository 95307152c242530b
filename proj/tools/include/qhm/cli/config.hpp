#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qhm/forms.hpp"
#include "qhm/random.hpp"
#include "qhm/rep_oracle.hpp"
#include "qhm/ym_opt.hpp"

namespace qhm::cli {

using json = nlohmann::json;

inline constexpr int kReportVersion = 1;

struct Tolerances {
  double assoc = 1e-6;
  double order_ratio = 64.0;
  double exact = 1e-12;
  double leibniz = 1e-6;
  double bracket = 1e-6;
  double group = 1e-6;
  double d_squared = 1e-6;
  double negative_control = 1e-1;
  double oracle = 1e-5;
  double oracle_p0 = 1e-10;
  double adjoint = 1e-10;
  double thm = 1e-5;
  double central = 1e-10;
  double grad_fd = 1e-5;
  double min_value = 1e-6;
};

struct AxiomsOptions {
  int refinements = 2;
};

struct DerivationsOptions {
  /// Negative control: the bracket check uses alpha (1 + alpha_perturbation)
  /// on the delta_3 side only.
  double alpha_perturbation = 0.0;
};

struct GroupOptions {
  int pairs = 5;
  double range = 1.0;
};

struct FormsOptions {
  int samples = 10;
};

struct EquivalenceRun {
  int q = 1;
  std::vector<std::uint64_t> seeds;
};

struct EquivalenceOptions {
  std::vector<EquivalenceRun> runs{{1, {1, 2, 3, 4, 5}}, {2, {1, 2, 3}}};
  std::vector<double> central_t{0.5, 1.3};
};

struct MinimizeOptions {
  int q = 1;
  std::uint64_t seed = 1;
  double start_scale = 0.1;
  int chart_P0 = 1;
  int chart_N0 = 4;
  OptimOptions optim{};
  int fd_points = 20;
  double fd_step = 1e-4;
};

struct OracleOptions {
  RepGrid grid{};
  int trial_vectors = 5;
  int vector_p_support = 1;
  int vector_n_support = 2;
};

struct RunConfig {
  AlgebraParams algebra{};
  Truncation truncation{};
  ProfileSpec profile{};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  FormsConfig forms{};
  Tolerances tol{};
  AxiomsOptions axioms{};
  DerivationsOptions derivations{};
  GroupOptions group{};
  FormsOptions forms_suite{};
  EquivalenceOptions equivalence{};
  MinimizeOptions minimize{};
  OracleOptions oracle{};

  /// Throws ConfigError on any invariant violation.
  void validate() const;
};

json to_json(const RunConfig& cfg);
/// Strict: unknown keys and wrong types are ConfigError.
RunConfig from_json(const json& j);

/// Defaults, overlaid by the file (if non-empty), then by key=value
/// overrides addressed with dotted paths (e.g. algebra.hbar=0.5). Values
/// are parsed as JSON when possible, otherwise taken as strings.
RunConfig resolve_config(const std::string& path,
                         const std::vector<std::string>& overrides);

}  // namespace qhm::cli
