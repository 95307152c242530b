#include "qhm/cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhm/connections.hpp"
#include "qhm/star.hpp"
#include "qhm/symmetry.hpp"

namespace qhm::cli {
namespace {

constexpr cplx kI{0.0, 1.0};

SuiteReport start(const std::string& command, const RunConfig& cfg) {
  SuiteReport r;
  r.command = command;
  r.config = to_json(cfg);
  return r;
}

double rel(double num, double den) { return den > 0.0 ? num / den : num; }

json trunc_json(const Truncation& t) { return {{"P", t.P}, {"N", t.N}, {"Nx", t.Nx}}; }

json ym_json(const YMReport& y) {
  return {{"ym_cr", y.ym_cr},
          {"ym_spectral", y.ym_spectral},
          {"c_d", y.c_d},
          {"predicted_ratio", y.predicted_ratio},
          {"residual", y.residual},
          {"q", y.q},
          {"trunc", trunc_json(y.trunc)},
          {"seeds", y.seeds}};
}

Connection random_connection(const RunConfig& cfg, int q, std::uint64_t seed) {
  Rng rng(seed);
  const auto& prm = cfg.algebra;
  const auto& tr = cfg.truncation;
  auto A1 = random_skew_matrix(prm, tr, rng, q, cfg.profile);
  auto A2 = random_skew_matrix(prm, tr, rng, q, cfg.profile);
  auto A3 = random_skew_matrix(prm, tr, rng, q, cfg.profile);
  return make_connection(ModuleSpec{q}, A1, A2, A3);
}

double associativity(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c) {
  const auto l = star(star(a, b), c);
  const auto r = star(a, star(b, c));
  return rel(l2_norm(l - r), l2_norm(a) * l2_norm(b) * l2_norm(c));
}

}  // namespace

void SuiteReport::expect_le(std::string name, double value, double tol) {
  checks.push_back({std::move(name), value, "<=", tol, value <= tol});
}

void SuiteReport::expect_ge(std::string name, double value, double tol) {
  checks.push_back({std::move(name), value, ">=", tol, value >= tol});
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"relation", c.relation},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  return {{"report_version", kReportVersion},
          {"command", r.command},
          {"config", r.config},
          {"checks", checks},
          {"details", r.details},
          {"pass", r.pass()}};
}

SuiteReport cmd_axioms(const RunConfig& cfg) {
  auto rep = start("axioms", cfg);
  const auto& prm = cfg.algebra;
  const auto& tr = cfg.truncation;
  const AlgebraElement one = identity(prm, tr);

  double unit = 0.0, twice = 0.0, assoc = 0.0, inv = 0.0, trp = 0.0;
  double pos_imag = 0.0, pos_real = std::numeric_limits<double>::infinity(), p0comm = 0.0;
  double trunc_mass = 0.0, seam = 0.0;
  for (auto seed : cfg.seeds) {
    Rng rng(seed);
    const auto a = random_element(prm, tr, rng, cfg.profile);
    const auto b = random_element(prm, tr, rng, cfg.profile);
    const auto c = random_element(prm, tr, rng, cfg.profile);
    const double na = l2_norm(a), nb = l2_norm(b);
    unit = std::max({unit, max_abs_diff(star(one, a), a), max_abs_diff(star(a, one), a)});
    twice = std::max(twice, max_abs_diff(involution(involution(a)), a));
    assoc = std::max(assoc, associativity(a, b, c));
    const auto ab = star_checked(a, b);
    trunc_mass = std::max(trunc_mass, ab.truncation_mass);
    inv = std::max(inv, rel(l2_norm(involution(ab.product) - star(involution(b), involution(a))),
                            na * nb));
    trp = std::max(trp, rel(std::abs(trace(ab.product) - trace(star(b, a))), na * nb));
    const cplx t = trace(star(involution(a), a));
    pos_imag = std::max(pos_imag, rel(std::abs(t.imag()), na * na));
    pos_real = std::min(pos_real, rel(t.real(), na * na));
    const auto a0 = random_p0_element(prm, tr, rng, cfg.profile);
    const auto b0 = random_p0_element(prm, tr, rng, cfg.profile);
    p0comm = std::max(p0comm, rel(l2_norm(commutator(a0, b0)), l2_norm(a0) * l2_norm(b0)));
    seam = std::max(seam, seam_residual(a));
  }
  rep.expect_le("unit_laws_max_abs_diff", unit, 0.0);
  rep.expect_le("involution_twice_max_abs_diff", twice, 0.0);
  rep.expect_le("associativity_relative", assoc, cfg.tol.assoc);
  rep.expect_le("involution_antihomomorphism_relative", inv, cfg.tol.assoc);
  rep.expect_le("trace_property_relative", trp, cfg.tol.assoc);
  rep.expect_le("positivity_imaginary_relative", pos_imag, cfg.tol.exact);
  rep.expect_ge("positivity_real_relative_min", pos_real, -cfg.tol.assoc);
  rep.expect_le("p0_commutator_relative", p0comm, cfg.tol.exact);

  // convergence under Nx doubling, same random draws on every grid
  json conv = json::array();
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (auto seed : cfg.seeds) {
    std::vector<double> res;
    for (int k = 0; k <= cfg.axioms.refinements; ++k) {
      Truncation t = tr;
      t.Nx = tr.Nx << k;
      Rng rng(seed);
      const auto a = random_element(prm, t, rng, cfg.profile);
      const auto b = random_element(prm, t, rng, cfg.profile);
      const auto c = random_element(prm, t, rng, cfg.profile);
      res.push_back(associativity(a, b, c));
    }
    json row = {{"seed", seed}, {"associativity", res}, {"ratios", json::array()}};
    for (std::size_t k = 1; k < res.size(); ++k) {
      const double ratio = res[k] > 0.0 ? res[k - 1] / res[k] : std::numeric_limits<double>::infinity();
      row["ratios"].push_back(ratio);
      worst_ratio = std::min(worst_ratio, ratio);
    }
    conv.push_back(row);
  }
  rep.expect_ge("associativity_ratio_per_doubling_min", worst_ratio, cfg.tol.order_ratio);
  rep.details["convergence"] = conv;
  rep.details["seam_residual_max"] = seam;
  rep.details["product_truncation_mass_max"] = trunc_mass;
  return rep;
}

SuiteReport cmd_derivations(const RunConfig& cfg) {
  auto rep = start("derivations", cfg);
  const auto& prm = cfg.algebra;
  const auto& tr = cfg.truncation;
  const DerivationId D1(1), D2(2), D3(3);
  const double alpha_side = prm.alpha * (1.0 + cfg.derivations.alpha_perturbation);
  double leib[3] = {0.0, 0.0, 0.0};
  double c13 = 0.0, c23 = 0.0, bracket = 0.0, tr_d = 0.0, kill_one = 0.0;
  const auto one = identity(prm, tr);
  for (int j = 1; j <= 3; ++j)
    kill_one = std::max(kill_one, l2_norm(derive(DerivationId(j), one)));
  for (auto seed : cfg.seeds) {
    Rng rng(seed);
    const auto a = random_element(prm, tr, rng, cfg.profile);
    const auto b = random_element(prm, tr, rng, cfg.profile);
    const double na = l2_norm(a), nb = l2_norm(b);
    const auto ab = star(a, b);
    for (int j = 1; j <= 3; ++j) {
      const DerivationId D(j);
      const auto lhs = derive(D, ab);
      const auto rhs = star(derive(D, a), b) + star(a, derive(D, b));
      leib[j - 1] = std::max(leib[j - 1], rel(l2_norm(lhs - rhs), na * nb));
      tr_d = std::max(tr_d, rel(std::abs(trace(derive(D, a))), na));
    }
    c13 = std::max(c13, rel(l2_norm(delta(D1, delta(D3, a)) - delta(D3, delta(D1, a))), na));
    c23 = std::max(c23, rel(l2_norm(delta(D2, delta(D3, a)) - delta(D3, delta(D2, a))), na));
    const auto br = delta(D1, delta(D2, a)) - delta(D2, delta(D1, a));
    bracket = std::max(bracket, rel(l2_norm(br + (kI / alpha_side) * delta(D3, a)), na));
  }
  rep.expect_le("leibniz_d1_relative", leib[0], cfg.tol.leibniz);
  rep.expect_le("leibniz_d2_relative", leib[1], cfg.tol.leibniz);
  rep.expect_le("leibniz_d3_relative", leib[2], cfg.tol.leibniz);
  rep.expect_le("commutator_delta1_delta3_relative", c13, cfg.tol.exact);
  rep.expect_le("commutator_delta2_delta3_relative", c23, cfg.tol.exact);
  rep.expect_le("bracket_delta1_delta2_relative", bracket, cfg.tol.bracket);
  rep.expect_le("trace_of_derivative_relative", tr_d, cfg.tol.exact);
  rep.expect_le("derivations_of_identity", kill_one, 0.0);
  rep.details["alpha_used_in_bracket"] = alpha_side;
  return rep;
}

SuiteReport cmd_group(const RunConfig& cfg) {
  auto rep = start("group", cfg);
  const auto& prm = cfg.algebra;
  const auto& tr = cfg.truncation;
  const int c = prm.c;
  double law = 0.0, autom = 0.0, trinv = 0.0, invol = 0.0, glaw = 0.0, ginv = 0.0;
  Rng rng(cfg.seeds.front());
  json pairs = json::array();
  for (int k = 0; k < cfg.group.pairs; ++k) {
    const auto g = random_group_element(rng, cfg.group.range);
    const auto h = random_group_element(rng, cfg.group.range);
    const auto f = random_group_element(rng, cfg.group.range);
    const auto a = random_element(prm, tr, rng, cfg.profile);
    const auto b = random_element(prm, tr, rng, cfg.profile);
    const double na = l2_norm(a), nb = l2_norm(b);
    law = std::max(law, rel(l2_norm(act(g, act(h, a)) - act(group_mul(g, h, c), a)), na));
    autom = std::max(autom, rel(l2_norm(act(g, star(a, b)) - star(act(g, a), act(g, b))), na * nb));
    trinv = std::max(trinv, rel(std::abs(trace(act(g, a)) - trace(a)), na));
    invol = std::max(invol, rel(l2_norm(act(g, involution(a)) - involution(act(g, a))), na));
    const auto l = group_mul(group_mul(g, h, c), f, c);
    const auto r = group_mul(g, group_mul(h, f, c), c);
    glaw = std::max({glaw, std::abs(l.r - r.r), std::abs(l.s - r.s), std::abs(l.t - r.t)});
    const auto e = group_mul(g, group_inv(g, c), c);
    ginv = std::max({ginv, std::abs(e.r), std::abs(e.s), std::abs(e.t)});
    pairs.push_back({{"g", {g.r, g.s, g.t}}, {"h", {h.r, h.s, h.t}}});
  }
  rep.expect_le("action_law_relative", law, cfg.tol.group);
  rep.expect_le("automorphism_relative", autom, cfg.tol.group);
  rep.expect_le("trace_invariance_relative", trinv, cfg.tol.group);
  rep.expect_le("involution_equivariance_relative", invol, cfg.tol.group);
  rep.expect_le("group_associativity_abs", glaw, cfg.tol.exact);
  rep.expect_le("group_inverse_abs", ginv, cfg.tol.exact);
  rep.details["pairs"] = pairs;
  return rep;
}

SuiteReport cmd_forms(const RunConfig& cfg) {
  auto rep = start("forms", cfg);
  const auto& prm = cfg.algebra;
  const auto& tr = cfg.truncation;
  FormsConfig flipped = cfg.forms;
  flipped.flip_alpha_sign = !cfg.forms.flip_alpha_sign;
  double dd = 0.0, dd_flip = std::numeric_limits<double>::infinity(), leib = 0.0, herm = 0.0;
  double leib_ab = 0.0;
  double pos = std::numeric_limits<double>::infinity();
  Rng rng(cfg.seeds.front());
  for (int k = 0; k < cfg.forms_suite.samples; ++k) {
    const auto a = random_element(prm, tr, rng, cfg.profile);
    const auto b = random_element(prm, tr, rng, cfg.profile);
    const double na = l2_norm(a), nb = l2_norm(b);
    const auto da = d0(a);
    dd = std::max(dd, rel(max_l2(d1form(da, cfg.forms)), na));
    dd_flip = std::min(dd_flip, rel(max_l2(d1form(da, flipped)), na));
    const auto db = d0(b);
    const double lres = max_l2(d1form(scale(a, db), cfg.forms) - mul11(da, db));
    leib = std::max(leib, rel(lres, max_l2(da) * max_l2(db)));
    leib_ab = std::max(leib_ab, rel(lres, na * nb));
    const auto t1 = mul11(da, db);
    const auto t2 = d1form(OneForm{{b, a, star(a, b)}}, cfg.forms);
    const cplx x = two_form_inner(t1, t2, cfg.forms);
    const cplx y = two_form_inner(t2, t1, cfg.forms);
    const double s1 = std::sqrt(std::abs(two_form_inner(t1, t1, cfg.forms)));
    const double s2 = std::sqrt(std::abs(two_form_inner(t2, t2, cfg.forms)));
    herm = std::max(herm, rel(std::abs(x - std::conj(y)), s1 * s2));
    pos = std::min(pos, rel(two_form_inner(t1, t1, cfg.forms).real(), s1 * s1));
  }
  const auto one = identity(prm, tr);
  const auto zero = zero_element(prm, tr);
  const auto cor3 = d1form(OneForm{{zero, zero, one}}, cfg.forms);
  const auto expect3 = TwoForm{{zero, zero, cplx{-1.0 / prm.alpha, 0.0} * one}};
  double cor = max_l2(cor3 - expect3);
  cor = std::max(cor, max_l2(d1form(OneForm{{one, zero, zero}}, cfg.forms)));
  cor = std::max(cor, max_l2(d1form(OneForm{{zero, one, zero}}, cfg.forms)));
  double pauli = 0.0;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      const auto p = pauli_mul(j, k);
      const auto r = pauli_mul(k, j);
      if (j != k) pauli = std::max(pauli, std::abs(p.coeff + r.coeff) + (p.index == r.index ? 0.0 : 1.0));
    }
  rep.expect_le("d_squared_relative", dd, cfg.tol.d_squared);
  rep.expect_le("d1form_constant_abs", cor, cfg.tol.exact);
  rep.expect_ge("negative_control_flipped_alpha_sign_d_squared", dd_flip, cfg.tol.negative_control);
  rep.expect_le("leibniz_forms_relative", leib, cfg.tol.leibniz);
  rep.details["leibniz_forms_over_element_norms"] = leib_ab;
  rep.expect_le("inner_product_conjugate_symmetry_relative", herm, cfg.tol.assoc);
  rep.expect_ge("inner_product_positivity_relative_min", pos, -cfg.tol.assoc);
  rep.expect_le("pauli_antisymmetry_defect", pauli, 0.0);
  return rep;
}

SuiteReport cmd_equivalence(const RunConfig& cfg) {
  auto rep = start("equivalence", cfg);
  const auto& prm = cfg.algebra;
  const auto& tr = cfg.truncation;
  double worst = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  json runs = json::array();
  for (const auto& run : cfg.equivalence.runs) {
    for (auto seed : run.seeds) {
      auto y = equivalence_report(random_connection(cfg, run.q, seed), cfg.forms);
      y.seeds = {seed};
      worst = std::max(worst, y.residual);
      min_value = std::min({min_value, y.ym_cr, y.ym_spectral});
      runs.push_back(ym_json(y));
    }
  }
  rep.expect_le("ym_ratio_residual_max", worst, cfg.tol.thm);
  rep.expect_ge("ym_values_min", min_value, 0.0);

  const auto flat = equivalence_report(flat_connection(ModuleSpec{1}, prm, tr), cfg.forms);
  rep.expect_le("flat_connection_residual", flat.residual, 0.0);
  rep.expect_le("flat_connection_ym_cr_abs", std::abs(flat.ym_cr), 0.0);

  double central = 0.0;
  json central_rows = json::array();
  for (double t : cfg.equivalence.central_t) {
    AlgebraMatrix z(1, prm, tr);
    const auto A3 = scalar_matrix(1, cplx{0.0, t} * identity(prm, tr));
    const auto y = equivalence_report(make_connection(ModuleSpec{1}, z, z, A3), cfg.forms);
    const double a2 = prm.alpha * prm.alpha;
    const double expect_cr = t * t / a2;
    const double expect_sp = cfg.forms.C_D / 2.0 * t * t / a2;
    central = std::max({central, std::abs(y.ym_cr - expect_cr), std::abs(y.ym_spectral - expect_sp)});
    central_rows.push_back({{"t", t},
                            {"ym_cr", y.ym_cr},
                            {"ym_cr_expected", expect_cr},
                            {"ym_spectral", y.ym_spectral},
                            {"ym_spectral_expected", expect_sp}});
  }
  rep.expect_le("central_family_abs", central, cfg.tol.central);
  rep.details["runs"] = runs;
  rep.details["central_family"] = central_rows;
  return rep;
}

SuiteReport cmd_minimize(const RunConfig& cfg) {
  auto rep = start("minimize", cfg);
  const auto& m = cfg.minimize;
  const ParamChart chart(ModuleSpec{m.q}, cfg.algebra, cfg.truncation, m.chart_P0, m.chart_N0);

  // gradient against central differences along random directions
  double fd_worst = 0.0;
  json fd_points = json::array();
  Rng rng(m.seed + 1);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int k = 0; k < m.fd_points; ++k) {
    std::vector<double> x = chart.pack(random_connection(cfg, m.q, rng()));
    std::vector<double> h(x.size());
    for (auto& v : h) v = nd(rng);
    // unit direction, so the step is the actual displacement in the chart
    double hn = 0.0;
    for (double v : h) hn += v * v;
    hn = std::sqrt(hn);
    for (auto& v : h) v /= hn;
    const auto vg = ym_value_grad(x, chart);
    double an = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) an += vg.grad[i] * h[i];
    auto xp = x, xm = x;
    for (std::size_t i = 0; i < h.size(); ++i) {
      xp[i] += m.fd_step * h[i];
      xm[i] -= m.fd_step * h[i];
    }
    const double fd = (ym_cr(chart.unpack(xp)) - ym_cr(chart.unpack(xm))) / (2.0 * m.fd_step);
    const double relerr = std::abs(an - fd) / std::max(std::abs(fd), 1e-300);
    fd_worst = std::max(fd_worst, relerr);
    fd_points.push_back({{"analytic", an}, {"finite_difference", fd}, {"relative", relerr}});
  }
  rep.details["gradient_fd"] = fd_points;
  if (m.fd_points > 0) rep.expect_le("gradient_fd_relative_max", fd_worst, cfg.tol.grad_fd);

  std::vector<double> x0 = chart.pack(random_connection(cfg, m.q, m.seed));
  for (auto& v : x0) v *= m.start_scale;
  const auto res = minimize(chart.unpack(x0), chart, m.optim, m.seed);
  const auto& r = res.report;
  rep.expect_le("terminal_value", r.values.back(), cfg.tol.min_value);
  rep.expect_ge("monotone_iterates", r.monotone ? 1.0 : 0.0, 1.0);
  rep.details["optim"] = {{"iters", r.iters},
                          {"values", r.values},
                          {"grad_norms", r.grad_norms},
                          {"termination", r.termination},
                          {"chart_dim", r.chart_dim},
                          {"seed", r.seed}};
  return rep;
}

SuiteReport cmd_oracle(const RunConfig& cfg) {
  auto rep = start("oracle", cfg);
  const auto& prm = cfg.algebra;
  const auto& tr = cfg.truncation;
  const auto& o = cfg.oracle;
  const double margin = oracle_margin(prm, tr);
  double worst = 0.0, worst_p0 = 0.0, adj = 0.0;
  json rows = json::array();
  for (auto seed : cfg.seeds) {
    Rng rng(seed);
    const auto a = random_element(prm, tr, rng, cfg.profile);
    const auto b = random_element(prm, tr, rng, cfg.profile);
    std::vector<RepVector> vs;
    for (int k = 0; k < o.trial_vectors; ++k)
      vs.push_back(random_trial_vector(o.grid, margin, o.vector_p_support, o.vector_n_support, rng));
    const auto r = oracle_check_product(a, b, o.grid, vs);
    worst = std::max(worst, r.relative);
    adj = std::max(adj, rel(oracle_check_adjoint(a, o.grid, vs), sup_bound(a)));

    const auto a0 = random_p0_element(prm, tr, rng, cfg.profile);
    const auto b0 = random_p0_element(prm, tr, rng, cfg.profile);
    std::vector<RepVector> v0;
    for (int k = 0; k < o.trial_vectors; ++k)
      v0.push_back(random_trial_vector(o.grid, margin, 0, o.vector_n_support, rng));
    const auto r0 = oracle_check_product(a0, b0, o.grid, v0);
    worst_p0 = std::max(worst_p0, r0.relative);
    rows.push_back({{"seed", seed},
                    {"relative", r.relative},
                    {"absolute", r.residual},
                    {"truncation_mass", r.truncation_mass},
                    {"p0_relative", r0.relative}});
  }
  rep.expect_le("homomorphism_relative_max", worst, cfg.tol.oracle);
  rep.expect_le("homomorphism_p0_relative_max", worst_p0, cfg.tol.oracle_p0);
  rep.expect_le("adjoint_relative_max", adj, cfg.tol.adjoint);
  rep.details["pairs"] = rows;
  return rep;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"axioms",      "derivations", "group",  "forms",
                                              "equivalence", "minimize",    "oracle"};
  return names;
}

SuiteReport run_command(const std::string& name, const RunConfig& cfg) {
  if (name == "axioms") return cmd_axioms(cfg);
  if (name == "derivations") return cmd_derivations(cfg);
  if (name == "group") return cmd_group(cfg);
  if (name == "forms") return cmd_forms(cfg);
  if (name == "equivalence") return cmd_equivalence(cfg);
  if (name == "minimize") return cmd_minimize(cfg);
  if (name == "oracle") return cmd_oracle(cfg);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace qhm::cli
