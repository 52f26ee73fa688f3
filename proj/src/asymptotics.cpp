#include "fraceig/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "fraceig/nonlocal.hpp"

namespace fraceig {

std::size_t weighted_monotonicity_violations(SweepReport& report, double rel_tol) {
  std::size_t count = 0;
  double worst = 0.0;
  const SweepRow* prev = nullptr;
  for (const auto& row : report.rows) {
    if (!row.ok) continue;
    if (prev) {
      const double drop = (prev->weighted_lambda - row.weighted_lambda) /
                          std::max(prev->weighted_lambda, row.weighted_lambda);
      worst = std::max(worst, drop);
      if (drop > rel_tol) ++count;
    }
    prev = &row;
  }
  report.violations = count;
  report.worst_violation = worst;
  return count;
}

SweepReport s_sweep(const DomainPtr& dom, double p, std::vector<double> s_list, double s_base,
                    const SolverConfig& cfg) {
  cfg.validate();
  if (s_list.empty()) throw InvalidInput("s list is empty");
  for (double s : s_list)
    if (!(s > 0.0 && s < 1.0)) throw InvalidInput("s must lie in (0,1)");
  std::sort(s_list.begin(), s_list.end());
  s_list.erase(std::unique(s_list.begin(), s_list.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               s_list.end());
  const auto base_it =
      std::find_if(s_list.begin(), s_list.end(), [&](double s) { return std::abs(s - s_base) < 1e-12; });
  if (base_it == s_list.end()) throw InvalidInput("s_base must be one of the sweep values");
  const auto base = static_cast<std::size_t>(base_it - s_list.begin());
  (void)FracParams(s_base, p, dom->t());  // validates p and s_base

  const std::size_t n = s_list.size();
  SweepReport report;
  report.s_base = s_list[base];
  report.p = p;
  report.t = dom->t();
  report.h = dom->h();
  report.diameter = dom->diameter();
  report.dim = dom->dim();
  report.rows.resize(n);
  std::vector<std::optional<GridFunction>> funcs(n);

  // Sweep points are independent; each solve is deterministic on its own, so
  // completion order does not matter.
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.threads)
  for (std::size_t k = 0; k < n; ++k) {
    SweepRow& row = report.rows[k];
    row.s = s_list[k];
    try {
      const FracParams params(row.s, p, dom->t());
      auto pair = first_eigenpair(dom, params, cfg);
      row.lambda = pair.lambda;
      row.iterations = pair.iterations;
      row.residual = pair.residual;
      row.noise_limited = pair.noise_limited;
      row.weighted_lambda = std::pow(2.5 * dom->diameter(), params.sp()) * pair.lambda;
      funcs[k].emplace(std::move(pair.eigenfunction));
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  }

  if (funcs[base]) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!funcs[k]) continue;
      const FracParams params(std::min(s_list[k], s_list[base]), p, dom->t());
      report.rows[k].dist_to_base = k == base ? 0.0 : seminorm_distance(*funcs[k], *funcs[base], params, cfg.threads);
    }
  }
  weighted_monotonicity_violations(report);
  return report;
}

namespace {

std::vector<LimitGap> limit_gaps(const SweepReport& report, bool above) {
  const SweepRow* base = nullptr;
  for (const auto& r : report.rows)
    if (std::abs(r.s - report.s_base) < 1e-12) base = &r;
  std::vector<LimitGap> out;
  if (!base || !base->ok) return out;
  for (const auto& r : report.rows) {
    if (!r.ok || (above ? r.s <= base->s : r.s >= base->s)) continue;
    out.push_back({std::abs(r.s - base->s), std::abs(r.lambda - base->lambda), r.dist_to_base});
  }
  std::sort(out.begin(), out.end(), [](const LimitGap& a, const LimitGap& b) { return a.delta > b.delta; });
  return out;
}

}  // namespace

std::vector<LimitGap> right_limit_gaps(const SweepReport& report) { return limit_gaps(report, true); }
std::vector<LimitGap> left_limit_gaps(const SweepReport& report) { return limit_gaps(report, false); }

ScalingReport scaling_check(const DomainPtr& dom, const FracParams& params, const std::vector<double>& factors,
                            const SolverConfig& cfg) {
  const double base = first_eigenpair(dom, params, cfg).lambda;
  ScalingReport report{base, {}, true};
  for (double c : factors) {
    const auto scaled = dilate(*dom, c);
    const double lambda = first_eigenpair(scaled, params, cfg).lambda;
    const double err = std::abs(std::pow(c, params.sp()) * lambda / base - 1.0);
    report.entries.push_back({c, lambda, err});
    report.passed = report.passed && err <= 1e-10;
  }
  return report;
}

EquivalenceReport equivalence_check(const GridFunction& u, const FracParams& params, int threads) {
  const GridDomain& dom = u.host();
  if (std::abs(params.t() - 4.0) > 1e-12 || std::abs(dom.t() - 4.0) > 1e-12)
    throw InvalidInput("equivalence_check needs t = 4");
  const int dim = dom.dim();
  const double h = dom.h();
  const double vol = dom.cell_volume();
  const double p = params.p();
  const double sp = params.sp();
  const double expo = dim + sp;
  const double R = dom.diameter();
  const Point c = dom.center();
  const double r_inner = 0.75 * R;  // B_{3R/2} has diameter 3R/2
  const double r_out = 20.0 * R;

  auto dist_to_center2 = [&](Index idx) {
    const double x = dom.origin()[0] + (idx[0] + 0.5) * h - c[0];
    const double y = dim == 2 ? dom.origin()[1] + (idx[1] + 0.5) * h - c[1] : 0.0;
    return x * x + y * y;
  };
  for (auto i : dom.omega_cells())
    if (dist_to_center2(dom.cells()[i]) > r_inner * r_inner * (1.0 + 1e-12))
      throw InvalidInput("Omega is not contained in B_{3R/2}");

  const KernelOperator op(u.host_ptr(), params, threads);
  const auto free = u.free_values();
  EquivalenceReport rep;
  rep.V = op.energy(free);

  // |offset|^{-(N+sp)} for offsets out to r_out.
  const int reach = static_cast<int>(std::ceil((r_out + R) / h)) + 2;
  const int ny = dim == 2 ? reach + 1 : 1;
  std::vector<double> table(static_cast<std::size_t>(reach + 1) * ny, 0.0);
  for (int dy = 0; dy < ny; ++dy)
    for (int dx = 0; dx <= reach; ++dx)
      if (dx || dy)
        table[static_cast<std::size_t>(dy) * (reach + 1) + dx] =
            std::pow(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy, -0.5 * expo);
  auto kernel = [&](Index a, Index b) {
    const int dx = std::abs(a[0] - b[0]);
    const int dy = std::abs(a[1] - b[1]);
    return table[static_cast<std::size_t>(dy) * (reach + 1) + dx];
  };
  const double scale = std::pow(h, -expo) * vol * vol;

  // Lattice cells of the far shell: outside the ball, within r_out of the center.
  const Index lo{static_cast<int>(std::floor((c[0] - r_out - dom.origin()[0]) / h)) - 1,
                 dim == 2 ? static_cast<int>(std::floor((c[1] - r_out - dom.origin()[1]) / h)) - 1 : 0};
  const Index hi{static_cast<int>(std::ceil((c[0] + r_out - dom.origin()[0]) / h)) + 1,
                 dim == 2 ? static_cast<int>(std::ceil((c[1] + r_out - dom.origin()[1]) / h)) + 1 : 0};
  std::vector<Index> shell;
  for (int iy = lo[1]; iy <= hi[1]; ++iy)
    for (int ix = lo[0]; ix <= hi[0]; ++ix) {
      const Index idx{ix, iy};
      if (dom.find(idx)) continue;
      if (dist_to_center2(idx) <= r_out * r_out) shell.push_back(idx);
    }

  const double surface = dim == 1 ? 2.0 : 2.0 * std::numbers::pi;
  const double tail_density = surface * std::pow(r_out, -sp) / sp;  // integral beyond r_out

  const auto omega = dom.omega_cells();
  const std::size_t n = omega.size();
  std::vector<double> x_rows(n), y_rows(n), w_rows(n), tail_rows(n);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::size_t a = 0; a < n; ++a) {
    const Index xi = dom.cells()[omega[a]];
    double inner = 0.0, annulus = 0.0;
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (dom.in_omega(j)) continue;
      const double k = kernel(xi, dom.cells()[j]);
      if (dist_to_center2(dom.cells()[j]) <= r_inner * r_inner * (1.0 + 1e-12))
        inner += k;
      else
        annulus += k;
    }
    double far = 0.0;
    for (const auto& y : shell) far += kernel(xi, y);
    const double up = std::pow(std::abs(free[a]), p);
    double pairs = 0.0;
    for (std::size_t b = 0; b < n; ++b) pairs += std::pow(std::abs(free[a] - free[b]), p) * op.weight(a, b);
    x_rows[a] = pairs + 2.0 * up * inner * scale;
    y_rows[a] = 2.0 * up * annulus * scale;
    tail_rows[a] = 2.0 * up * vol * tail_density;
    w_rows[a] = 2.0 * up * far * scale + tail_rows[a];
  }
  for (std::size_t a = 0; a < n; ++a) {
    rep.X += x_rows[a];
    rep.Y += y_rows[a];
    rep.W += w_rows[a];
    rep.W_tail += tail_rows[a];
  }
  rep.bound = std::pow(2.0, sp) / (std::pow(0.8, sp) - std::pow(2.0 / 3.0, sp));
  rep.ratio = rep.Y > 0.0 ? rep.W / rep.Y : 0.0;
  rep.ratio_bound_ok = rep.W <= rep.bound * rep.Y;
  return rep;
}

std::vector<Index> dyadic_shifts(const GridDomain& dom) {
  std::vector<Index> out;
  const double limit = dom.t() * dom.diameter();
  for (int k = 1; k * dom.h() <= limit * (1.0 + 1e-12); k *= 2) out.push_back({k, 0});
  return out;
}

TranslationReport translation_quotient_check(const GridFunction& u, const FracParams& params,
                                             const std::vector<Index>& shifts, int threads) {
  if (shifts.empty()) throw InvalidInput("shift list is empty");
  const GridDomain& dom = u.host();
  const double p = params.p();
  const double vol = dom.cell_volume();
  auto value_at = [&](Index idx) {
    const auto cell = dom.find(idx);
    return cell ? u[*cell] : 0.0;
  };
  TranslationReport rep;
  for (Index sh : shifts) {
    if (dom.dim() == 1) sh[1] = 0;
    if (sh[0] == 0 && sh[1] == 0) throw InvalidInput("zero shift");
    const double len = dom.h() * std::sqrt(static_cast<double>(sh[0]) * sh[0] + static_cast<double>(sh[1]) * sh[1]);
    // Sum over the union of supp u and supp u(. + shift).
    double acc = 0.0;
    for (auto i : dom.omega_cells()) {
      const Index x = dom.cells()[i];
      const Index fwd{x[0] + sh[0], x[1] + sh[1]};
      acc += std::pow(std::abs(value_at(fwd) - u[i]), p);
      const Index back{x[0] - sh[0], x[1] - sh[1]};
      const auto bcell = dom.find(back);
      if (!bcell || !dom.in_omega(*bcell)) acc += std::pow(std::abs(u[i]), p);
    }
    rep.shifts.push_back({sh, len, acc * vol / std::pow(len, params.sp())});
  }
  rep.energy = gagliardo_energy(u, params, threads);
  double shortest = std::numeric_limits<double>::infinity();
  bool finite = true;
  for (const auto& s : rep.shifts) {
    rep.sup_quotient = std::max(rep.sup_quotient, s.quotient);
    shortest = std::min(shortest, s.length);
    finite = finite && std::isfinite(s.quotient);
  }
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (const auto& s : rep.shifts)
    if (s.length <= 10.0 * shortest * (1.0 + 1e-12)) {
      dmax = std::max(dmax, s.quotient);
      dmin = std::min(dmin, s.quotient);
    }
  rep.decade_spread = dmin > 0.0 ? dmax / dmin : (dmax == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
  rep.C_fit = rep.energy > 0.0 ? rep.sup_quotient / rep.energy : 0.0;
  rep.finite = finite && std::isfinite(rep.energy);
  return rep;
}

HolderReport holder_report(const GridFunction& u, const FracParams& params) {
  const GridDomain& dom = u.host();
  if (!(params.sp() > dom.dim())) throw InvalidInput("holder_report needs sp > N");
  const double gamma = params.s() - dom.dim() / params.p();
  double sup = 0.0;
  for (auto i : dom.omega_cells())
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (j == i) continue;
      sup = std::max(sup, std::abs(u[i] - u[j]) / std::pow(dom.distance(i, j), gamma));
    }
  return {gamma, sup};
}

}  // namespace fraceig
