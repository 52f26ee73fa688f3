#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraceig/asymptotics.hpp"
#include "fraceig/dirichlet.hpp"
#include "fraceig/eigenpair.hpp"
#include "fraceig/nonlocal.hpp"

namespace fraceig::suites {

namespace {

using json = nlohmann::json;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

SuiteResult poincare(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg, std::mt19937_64& rng) {
  SuiteResult r{.name = "poincare", .trials = 100};
  const KernelOperator op(dom, params, cfg.threads);
  const double I = poincare_constant(*dom, params, cfg.threads);
  r.worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < r.trials; ++k) {
    const auto u = random_function(dom, rng);
    const double lhs = std::pow(lp_norm(u, params.p()), params.p());
    const double rhs = I * gagliardo_energy(u, op);
    const double margin = (rhs - lhs) / rhs;
    r.worst = std::min(r.worst, margin);
    if (lhs > rhs) ++r.failures;
  }
  r.detail = {{"I", I}};
  return r;
}

SuiteResult clarkson(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg, std::mt19937_64& rng) {
  SuiteResult r{.name = "clarkson", .trials = 100};
  r.worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < r.trials; ++k) {
    const auto u = random_function(dom, rng);
    const auto v = random_function(dom, rng);
    const auto sides = clarkson_gap(u, v, params, cfg.threads);
    const double slack = (sides.rhs - sides.lhs) / sides.rhs;
    r.worst = std::min(r.worst, slack);
    if (slack < -1e-12) ++r.failures;
  }
  return r;
}

// Relative to the Cauchy-Schwarz scale of the pairing, which stays away
// from zero when the two sides cancel.
SuiteResult adjoint(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg, std::mt19937_64& rng) {
  SuiteResult r{.name = "adjoint", .trials = 100};
  for (int k = 0; k < r.trials; ++k) {
    const auto u = random_function(dom, rng);
    const auto phi = random_pair_function(dom, rng);
    const auto ru = nonlocal_gradient(u, params);
    const double lhs = pair_inner(ru, phi);
    const double rhs = field_inner(u, nonlocal_divergence(phi, params, cfg.threads));
    const double scale = std::sqrt(pair_inner(ru, ru) * pair_inner(phi, phi));
    const double gap = std::abs(lhs - rhs) / scale;
    r.worst = std::max(r.worst, gap);
    if (gap > 1e-12) ++r.failures;
  }
  return r;
}

SuiteResult monotone(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg, std::mt19937_64& rng) {
  SuiteResult r{.name = "monotone", .trials = 100};
  r.worst = std::numeric_limits<double>::infinity();
  std::size_t pairs = 0;
  for (int k = 0; k < r.trials; ++k) {
    const auto u = random_function(dom, rng);
    const auto v = random_function(dom, rng);
    const auto c = monotonicity_certificate(u, v, params, cfg.threads);
    pairs += c.pairs_checked;
    const double margin = params.p() < 2.0 ? c.worst_pair_margin : (c.pairing - c.bound) / c.pairing;
    r.worst = std::min(r.worst, margin);
    if (!c.holds) ++r.failures;
  }
  r.detail = {{"pairs_checked", pairs}};
  return r;
}

SuiteResult comparison(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg,
                       std::mt19937_64& rng) {
  SuiteResult r{.name = "comparison", .trials = 20};
  r.worst = -std::numeric_limits<double>::infinity();
  const std::size_t n = dom->omega_count();
  for (int k = 0; k < r.trials; ++k) {
    std::vector<double> f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) {
      f1[i] = uniform(rng, -1.0, 1.0);
      f2[i] = f1[i] + uniform(rng, 0.0, 1.0);
    }
    const auto rep = comparison_check(dom, f1, f2, params, cfg);
    r.worst = std::max(r.worst, rep.max_gap);
    if (!rep.passed) ++r.failures;
  }
  return r;
}

SuiteResult scaling(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg) {
  SuiteResult r{.name = "scaling", .trials = 3};
  const auto rep = scaling_check(dom, params, {2.0, 3.0, 0.5}, cfg);
  json entries = json::array();
  for (const auto& e : rep.entries) {
    r.worst = std::max(r.worst, e.rel_error);
    if (e.rel_error > 1e-10) ++r.failures;
    entries.push_back({{"factor", e.factor}, {"lambda", e.lambda}, {"rel_error", e.rel_error}});
  }
  r.detail = {{"base_lambda", rep.base_lambda}, {"entries", entries}};
  return r;
}

SuiteResult equivalence(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg,
                        std::mt19937_64& rng) {
  SuiteResult r{.name = "equivalence", .trials = 20};
  double bound = 0.0;
  for (int k = 0; k < r.trials; ++k) {
    const auto rep = equivalence_check(random_function(dom, rng), params, cfg.threads);
    bound = rep.bound;
    r.worst = std::max(r.worst, rep.ratio);
    if (!rep.ratio_bound_ok) ++r.failures;
  }
  r.detail = {{"bound", bound}};
  return r;
}

SuiteResult translation(const DomainSpec& spec, const DomainPtr& dom, const FracParams& params,
                        const SolverConfig& cfg) {
  SuiteResult r{.name = "translation", .trials = 1};
  DomainSpec fine = spec;
  fine.h = 0.5 * spec.h;
  json levels = json::array();
  std::vector<double> fits;
  for (const auto& d : {dom, build_domain(fine, dom->t())}) {
    const auto e = first_eigenpair(d, params, cfg);
    const auto rep = translation_quotient_check(e.eigenfunction, params, dyadic_shifts(*d), cfg.threads);
    if (!rep.finite) ++r.failures;
    fits.push_back(rep.C_fit);
    levels.push_back({{"h", d->h()}, {"sup_quotient", rep.sup_quotient}, {"energy", rep.energy}, {"C_fit", rep.C_fit}});
  }
  r.worst = std::max(fits[0], fits[1]) / std::min(fits[0], fits[1]);
  if (!(r.worst <= 2.0)) ++r.failures;
  r.detail = {{"levels", levels}};
  return r;
}

SuiteResult holder(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg) {
  SuiteResult r{.name = "holder", .trials = 1};
  const auto e = first_eigenpair(dom, params, cfg);
  const auto rep = holder_report(e.eigenfunction, params);
  r.worst = rep.sup_quotient;
  if (!std::isfinite(rep.sup_quotient)) ++r.failures;
  r.detail = {{"gamma", rep.gamma}};
  return r;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> all{"poincare", "clarkson",    "adjoint",     "monotone", "comparison",
                                            "scaling",  "equivalence", "translation", "holder"};
  return all;
}

bool known(const std::string& name) { return std::ranges::find(names(), name) != names().end(); }

GridFunction random_function(const DomainPtr& dom, std::mt19937_64& rng) {
  std::vector<double> free(dom->omega_count());
  for (auto& x : free) x = uniform(rng, -1.0, 1.0);
  return GridFunction::from_free(dom, free);
}

PairFunction random_pair_function(const DomainPtr& dom, std::mt19937_64& rng) {
  std::vector<double> v(dom->size() * dom->size());
  for (auto& x : v) x = uniform(rng, -1.0, 1.0);
  return {dom, std::move(v)};
}

SuiteResult run(const std::string& name, const DomainSpec& spec, const DomainPtr& dom, const FracParams& params,
                const SolverConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  SuiteResult r;
  if (name == "poincare") r = poincare(dom, params, cfg, rng);
  else if (name == "clarkson") r = clarkson(dom, params, cfg, rng);
  else if (name == "adjoint") r = adjoint(dom, params, cfg, rng);
  else if (name == "monotone") r = monotone(dom, params, cfg, rng);
  else if (name == "comparison") r = comparison(dom, params, cfg, rng);
  else if (name == "scaling") r = scaling(dom, params, cfg);
  else if (name == "equivalence") r = equivalence(dom, params, cfg, rng);
  else if (name == "translation") r = translation(spec, dom, params, cfg);
  else if (name == "holder") r = holder(dom, params, cfg);
  else throw InvalidInput("unknown suite: " + name);
  r.passed = r.failures == 0;
  return r;
}

nlohmann::json to_json(const SuiteResult& r) {
  json j = {{"suite", r.name}, {"trials", r.trials}, {"failures", r.failures}, {"passed", r.passed},
            {"skipped", r.skipped}, {"worst", r.worst}};
  j["detail"] = r.detail;
  return j;
}

}  // namespace fraceig::suites
