#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fraceig/domain.hpp"
#include "fraceig/params.hpp"
#include "helpers.hpp"

using namespace fraceig;

namespace {

double flagged_diameter(const GridDomain& d) {
  double best = 0.0;
  for (auto i : d.omega_cells())
    for (auto j : d.omega_cells()) best = std::max(best, d.distance(i, j));
  return best;
}

void check_invariants(const GridDomain& d) {
  const double R = d.diameter();
  bool any_out = false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto c = d.cell_center(i);
    const double r = std::hypot(c[0] - d.center()[0], d.dim() == 2 ? c[1] - d.center()[1] : 0.0);
    CHECK(r <= 0.5 * d.t() * R + 1e-12);
    if (d.in_omega(i)) CHECK(r <= R / 2 + d.h() + 1e-12);
    any_out = any_out || !d.in_omega(i);
  }
  CHECK(d.omega_count() > 0);
  CHECK(any_out);
  CHECK(std::abs(R - flagged_diameter(d)) <= d.h() * std::sqrt(double(d.dim())) + 1e-12);
}

}  // namespace

TEST_CASE("interval grid covers the relative ball") {
  auto d = th::interval(0, 1, 1.0 / 8);
  CHECK(d->omega_count() == 8);
  CHECK(d->diameter() == doctest::Approx(1.0));
  CHECK(d->center()[0] == doctest::Approx(0.5));
  double lo = 1e9, hi = -1e9;
  for (std::size_t i = 0; i < d->size(); ++i) {
    lo = std::min(lo, d->cell_center(i)[0] - d->h() / 2);
    hi = std::max(hi, d->cell_center(i)[0] + d->h() / 2);
  }
  CHECK(lo == doctest::Approx(-1.5));
  CHECK(hi == doctest::Approx(2.5));
  check_invariants(*d);
}

TEST_CASE("disjoint intervals") {
  auto d = th::two_intervals(1.0 / 8);
  CHECK(d->diameter() == doctest::Approx(3.0));
  CHECK(d->omega_count() == 16);
  double lo = 1e9, hi = -1e9;
  for (std::size_t i = 0; i < d->size(); ++i) {
    lo = std::min(lo, d->cell_center(i)[0] - d->h() / 2);
    hi = std::max(hi, d->cell_center(i)[0] + d->h() / 2);
  }
  CHECK(lo == doctest::Approx(-4.5));
  CHECK(hi == doctest::Approx(7.5));
  check_invariants(*d);
}

TEST_CASE("unit square") {
  auto d = th::unit_square(1.0 / 16);
  CHECK(d->diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(d->center()[0] == doctest::Approx(0.5));
  CHECK(d->center()[1] == doctest::Approx(0.5));
  CHECK(d->omega_count() == 256);
  check_invariants(*d);
}

TEST_CASE("ball and mask shapes") {
  auto disk = build_domain({2, 1.0 / 8, Shape::ball({0, 0}, 1.0)}, 4.0);
  check_invariants(*disk);
  std::vector<std::uint8_t> cells{1, 1, 0, 1};
  auto m = build_domain({2, 0.25, Shape::mask({0, 0}, {2, 2}, cells)}, 4.0);
  CHECK(m->omega_count() == 3);
  check_invariants(*m);
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(build_domain({1, 0.0, Shape::interval(0, 1)}, 4.0), InvalidInput);
  CHECK_THROWS_AS(build_domain({1, 0.1, Shape::interval(1, 0)}, 4.0), InvalidInput);
  CHECK_THROWS_AS(build_domain({1, 0.1, Shape::interval(0, 1)}, 1.0), InvalidInput);
  CHECK_THROWS_AS(build_domain({1, 1.0, Shape::interval(0, 0.2)}, 4.0), InvalidInput);
  CHECK_THROWS_AS(FracParams(1.2, 2.0), InvalidInput);
  CHECK_THROWS_AS(FracParams(0.5, 1.0), InvalidInput);
}

TEST_CASE("dilation") {
  auto d = th::interval(0, 1, 1.0 / 8);
  auto d2 = dilate(*d, 2.0);
  CHECK(d2->h() == doctest::Approx(0.25));
  CHECK(d2->omega_count() == 8);
  CHECK(d2->diameter() == doctest::Approx(2.0));
  CHECK(std::ranges::equal(d->omega_mask(), d2->omega_mask()));
  auto same = dilate(*d, 1.0);
  CHECK(same->h() == d->h());
  CHECK(same->diameter() == d->diameter());
  CHECK(same->size() == d->size());
  auto sq = th::unit_square(1.0 / 8);
  CHECK(dilate(*sq, 3.0)->diameter() == doctest::Approx(3.0 * sq->diameter()));
}

// Every grid interval of whole cells in the complement, scored by hand.
TEST_CASE("Poincare constant matches brute force over intervals") {
  auto d = th::interval(0, 1, 1.0 / 16);
  const FracParams par(0.5, 2.0);
  const double h = d->h();
  // Omega occupies cells 0..15; the ball runs over cells -24..39.
  double best = 1e300;
  for (int a = -24; a <= 39; ++a)
    for (int b = a; b <= 39; ++b) {
      if (!(b < 0 || a > 15)) continue;
      const double lo = std::min(0.5, (a + 0.5)), hi = std::max(15.5, b + 0.5);
      const double diam = (hi - lo) * h;
      const double meas = (b - a + 1) * h;
      // Lattice balls of radius k h, k >= 1: an odd number of cells, at least three.
      if ((b - a) % 2 != 0 || b - a < 2) continue;
      best = std::min(best, std::pow(diam, 1.0 + par.sp()) / meas);
    }
  CHECK(poincare_constant(*d, par) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("Poincare constant scaling") {
  auto d = th::interval(0, 1, 1.0 / 16);
  const FracParams par(0.5, 2.0);
  CHECK(poincare_constant(*dilate(*d, 2.0), par) == doctest::Approx(2.0 * poincare_constant(*d, par)).epsilon(1e-12));
  const FracParams par3(0.4, 3.0);
  auto sq = th::unit_square(1.0 / 8);
  CHECK(poincare_constant(*dilate(*sq, 3.0), par3) ==
        doctest::Approx(std::pow(3.0, par3.sp()) * poincare_constant(*sq, par3)).epsilon(1e-12));
}

TEST_CASE("Poincare constant is thread independent") {
  auto sq = th::unit_square(1.0 / 8);
  const FracParams par(0.5, 2.0);
  CHECK(poincare_constant(*sq, par, 1) == poincare_constant(*sq, par, 4));
}
