#include "fraceig/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace fraceig {

Shape Shape::interval(double a, double b) {
  Shape s;
  s.kind = Kind::Interval;
  s.lo = {a, 0.0};
  s.hi = {b, 0.0};
  return s;
}

Shape Shape::box(Point lo, Point hi) {
  Shape s;
  s.kind = Kind::Box;
  s.lo = lo;
  s.hi = hi;
  return s;
}

Shape Shape::ball(Point center, double radius) {
  Shape s;
  s.kind = Kind::Ball;
  s.center = center;
  s.radius = radius;
  return s;
}

Shape Shape::mask(Point origin, Index counts, std::vector<std::uint8_t> cells) {
  Shape s;
  s.kind = Kind::Mask;
  s.origin = origin;
  s.counts = counts;
  s.cells = std::move(cells);
  return s;
}

Shape Shape::union_of(std::vector<Shape> parts) {
  Shape s;
  s.kind = Kind::Union;
  s.parts = std::move(parts);
  return s;
}

GridDomain::GridDomain(int dim, double h, double t, Point origin, Point center, double diameter,
                       std::vector<Index> cells, std::vector<std::uint8_t> omega_mask)
    : dim_(dim),
      h_(h),
      t_(t),
      origin_(origin),
      center_(center),
      diameter_(diameter),
      cells_(std::move(cells)),
      mask_(std::move(omega_mask)) {
  if (dim_ != 1 && dim_ != 2) throw InvalidInput("dim must be 1 or 2");
  if (!(h_ > 0.0)) throw InvalidInput("h must be > 0");
  if (!(t_ > 1.0)) throw InvalidInput("t must be > 1");
  if (cells_.empty() || cells_.size() != mask_.size()) throw InvalidInput("cell list and mask size differ");

  Index hi{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
  box_lo_ = {std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (dim_ == 1) cells_[i][1] = 0;
    for (int d = 0; d < 2; ++d) {
      box_lo_[d] = std::min(box_lo_[d], cells_[i][d]);
      hi[d] = std::max(hi[d], cells_[i][d]);
    }
    if (mask_[i]) omega_cells_.push_back(i);
  }
  if (omega_cells_.empty()) throw InvalidInput("Omega is empty");
  if (omega_cells_.size() == cells_.size()) throw InvalidInput("relative ball has no cells outside Omega");
  box_counts_ = {hi[0] - box_lo_[0] + 1, hi[1] - box_lo_[1] + 1};
  lookup_.assign(static_cast<std::size_t>(box_counts_[0]) * static_cast<std::size_t>(box_counts_[1]), -1);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto flat = static_cast<std::size_t>(cells_[i][1] - box_lo_[1]) * box_counts_[0] +
                      static_cast<std::size_t>(cells_[i][0] - box_lo_[0]);
    if (lookup_[flat] != -1) throw InvalidInput("duplicate cell in grid");
    lookup_[flat] = static_cast<std::int32_t>(i);
  }
}

Point GridDomain::cell_center(std::size_t i) const {
  Point x{origin_[0] + (cells_[i][0] + 0.5) * h_, 0.0};
  if (dim_ == 2) x[1] = origin_[1] + (cells_[i][1] + 0.5) * h_;
  return x;
}

std::int64_t GridDomain::dist2(std::size_t i, std::size_t j) const {
  const std::int64_t dx = cells_[i][0] - cells_[j][0];
  const std::int64_t dy = cells_[i][1] - cells_[j][1];
  return dx * dx + dy * dy;
}

double GridDomain::distance(std::size_t i, std::size_t j) const {
  return h_ * std::sqrt(static_cast<double>(dist2(i, j)));
}

std::optional<std::size_t> GridDomain::find(Index idx) const {
  if (dim_ == 1) idx[1] = 0;
  const int ix = idx[0] - box_lo_[0];
  const int iy = idx[1] - box_lo_[1];
  if (ix < 0 || iy < 0 || ix >= box_counts_[0] || iy >= box_counts_[1]) return std::nullopt;
  const auto v = lookup_[static_cast<std::size_t>(iy) * box_counts_[0] + static_cast<std::size_t>(ix)];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

namespace {

using IPoint = std::array<std::int64_t, 2>;

void flatten(const Shape& s, int dim, std::vector<const Shape*>& out) {
  switch (s.kind) {
    case Shape::Kind::Union:
      if (s.parts.empty()) throw InvalidInput("union has no parts");
      for (const auto& part : s.parts) flatten(part, dim, out);
      return;
    case Shape::Kind::Interval:
      if (dim != 1) throw InvalidInput("interval shape requires dim 1");
      if (!(s.hi[0] > s.lo[0])) throw InvalidInput("interval needs a < b");
      break;
    case Shape::Kind::Box:
      for (int d = 0; d < dim; ++d)
        if (!(s.hi[d] > s.lo[d])) throw InvalidInput("box needs lo < hi in every coordinate");
      break;
    case Shape::Kind::Ball:
      if (!(s.radius > 0.0)) throw InvalidInput("ball radius must be > 0");
      break;
    case Shape::Kind::Mask: {
      std::size_t n = 1;
      for (int d = 0; d < dim; ++d) {
        if (s.counts[d] < 1) throw InvalidInput("mask counts must be >= 1");
        n *= static_cast<std::size_t>(s.counts[d]);
      }
      if (s.cells.size() != n) throw InvalidInput("mask cell array does not match counts");
      break;
    }
  }
  out.push_back(&s);
}

// Lower and upper corners of a primitive's bounding box.
std::pair<Point, Point> bounds(const Shape& s, int dim, double h) {
  switch (s.kind) {
    case Shape::Kind::Ball:
      return {{s.center[0] - s.radius, s.center[1] - s.radius}, {s.center[0] + s.radius, s.center[1] + s.radius}};
    case Shape::Kind::Mask: {
      Point hi{s.origin[0] + s.counts[0] * h, s.origin[1] + (dim == 2 ? s.counts[1] * h : 0.0)};
      return {s.origin, hi};
    }
    default:
      return {s.lo, s.hi};
  }
}

bool contains(const Shape& s, int dim, double h, const Point& x) {
  switch (s.kind) {
    case Shape::Kind::Interval:
      return x[0] > s.lo[0] && x[0] < s.hi[0];
    case Shape::Kind::Box:
      for (int d = 0; d < dim; ++d)
        if (!(x[d] > s.lo[d] && x[d] < s.hi[d])) return false;
      return true;
    case Shape::Kind::Ball: {
      double r2 = 0.0;
      for (int d = 0; d < dim; ++d) r2 += (x[d] - s.center[d]) * (x[d] - s.center[d]);
      return r2 < s.radius * s.radius;
    }
    case Shape::Kind::Mask: {
      const int ix = static_cast<int>(std::floor((x[0] - s.origin[0]) / h));
      const int iy = dim == 2 ? static_cast<int>(std::floor((x[1] - s.origin[1]) / h)) : 0;
      if (ix < 0 || ix >= s.counts[0] || iy < 0 || (dim == 2 && iy >= s.counts[1])) return false;
      return s.cells[static_cast<std::size_t>(iy) * s.counts[0] + static_cast<std::size_t>(ix)] != 0;
    }
    case Shape::Kind::Union:
      break;
  }
  return false;
}

std::int64_t cross(const IPoint& o, const IPoint& a, const IPoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; collinear points dropped.
std::vector<IPoint> convex_hull(std::vector<IPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::int64_t max_pair_dist2(const std::vector<IPoint>& pts) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto dx = pts[i][0] - pts[j][0];
      const auto dy = pts[i][1] - pts[j][1];
      best = std::max(best, dx * dx + dy * dy);
    }
  return best;
}

struct Circle {
  double x, y, r2;
  bool covers(double px, double py) const {
    const double d2 = (px - x) * (px - x) + (py - y) * (py - y);
    return d2 <= r2 * (1.0 + 1e-12) + 1e-12;
  }
};

Circle circle_two(const IPoint& a, const IPoint& b) {
  const double x = 0.5 * (a[0] + b[0]);
  const double y = 0.5 * (a[1] + b[1]);
  return {x, y, (a[0] - x) * (a[0] - x) + (a[1] - y) * (a[1] - y)};
}

Circle circle_three(const IPoint& a, const IPoint& b, const IPoint& c) {
  const double bx = static_cast<double>(b[0] - a[0]), by = static_cast<double>(b[1] - a[1]);
  const double cx = static_cast<double>(c[0] - a[0]), cy = static_cast<double>(c[1] - a[1]);
  const double d = 2.0 * (bx * cy - by * cx);
  if (d == 0.0) {
    Circle best = circle_two(a, b);
    for (const auto& cand : {circle_two(a, c), circle_two(b, c)})
      if (cand.r2 > best.r2) best = cand;
    return best;
  }
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  return {a[0] + ux, a[1] + uy, ux * ux + uy * uy};
}

// Smallest enclosing circle (Welzl, iterative form) with a fixed shuffle seed.
Circle enclosing_circle(std::vector<IPoint> pts) {
  std::mt19937 rng(0x5eed);
  std::shuffle(pts.begin(), pts.end(), rng);
  Circle c{static_cast<double>(pts[0][0]), static_cast<double>(pts[0][1]), 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (c.covers(pts[i][0], pts[i][1])) continue;
    c = {static_cast<double>(pts[i][0]), static_cast<double>(pts[i][1]), 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (c.covers(pts[j][0], pts[j][1])) continue;
      c = circle_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k)
        if (!c.covers(pts[k][0], pts[k][1])) c = circle_three(pts[i], pts[j], pts[k]);
    }
  }
  return c;
}

}  // namespace

DomainPtr build_domain(const DomainSpec& spec, double t) {
  const int dim = spec.dim;
  const double h = spec.h;
  if (dim != 1 && dim != 2) throw InvalidInput("dim must be 1 or 2");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("h must be > 0");
  if (!(t > 1.0) || !std::isfinite(t)) throw InvalidInput("t must be > 1");

  std::vector<const Shape*> parts;
  flatten(spec.shape, dim, parts);

  Point origin{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const Shape* part : parts) {
    const auto [lo, hi] = bounds(*part, dim, h);
    for (int d = 0; d < dim; ++d) origin[d] = std::min(origin[d], lo[d]);
  }
  if (dim == 1) origin[1] = 0.0;
  for (const Shape* part : parts) {
    if (part->kind != Shape::Kind::Mask) continue;
    for (int d = 0; d < dim; ++d) {
      const double off = (part->origin[d] - origin[d]) / h;
      if (std::abs(off - std::round(off)) > 1e-9) throw InvalidInput("mask origin is not aligned with the lattice");
    }
  }

  // Omega cells: lattice cells whose centers satisfy some part's predicate.
  std::set<Index> flagged;
  for (const Shape* part : parts) {
    const auto [lo, hi] = bounds(*part, dim, h);
    Index ilo{0, 0}, ihi{0, 0};
    for (int d = 0; d < dim; ++d) {
      ilo[d] = static_cast<int>(std::floor((lo[d] - origin[d]) / h)) - 1;
      ihi[d] = static_cast<int>(std::ceil((hi[d] - origin[d]) / h)) + 1;
    }
    std::size_t hits = 0;
    for (int iy = ilo[1]; iy <= ihi[1]; ++iy)
      for (int ix = ilo[0]; ix <= ihi[0]; ++ix) {
        const Point x{origin[0] + (ix + 0.5) * h, dim == 2 ? origin[1] + (iy + 0.5) * h : 0.0};
        if (contains(*part, dim, h, x)) {
          flagged.insert(Index{ix, iy});
          ++hits;
        }
      }
    if (hits == 0) throw InvalidInput("h is larger than the smallest feature of Omega (a part contains no cell center)");
  }
  if (flagged.empty()) throw InvalidInput("Omega is empty");

  // Diameter and enclosing center from the union of flagged closed cells.
  double diameter = 0.0;
  Point center{0.0, 0.0};
  if (dim == 1) {
    const int lo = flagged.begin()->at(0);
    const int hi = flagged.rbegin()->at(0) + 1;
    diameter = (hi - lo) * h;
    center[0] = origin[0] + 0.5 * (lo + hi) * h;
  } else {
    std::vector<IPoint> corners;
    corners.reserve(4 * flagged.size());
    for (const auto& c : flagged)
      for (int dx = 0; dx <= 1; ++dx)
        for (int dy = 0; dy <= 1; ++dy) corners.push_back({c[0] + dx, c[1] + dy});
    const auto hull = convex_hull(std::move(corners));
    diameter = h * std::sqrt(static_cast<double>(max_pair_dist2(hull)));
    const Circle circ = enclosing_circle(hull);
    center = {origin[0] + circ.x * h, origin[1] + circ.y * h};
  }

  const double radius = 0.5 * t * diameter;
  const double r2 = radius * radius * (1.0 + 1e-12);
  Index ilo{0, 0}, ihi{0, 0};
  for (int d = 0; d < dim; ++d) {
    ilo[d] = static_cast<int>(std::floor((center[d] - radius - origin[d]) / h)) - 1;
    ihi[d] = static_cast<int>(std::ceil((center[d] + radius - origin[d]) / h)) + 1;
  }
  std::vector<Index> cells;
  std::vector<std::uint8_t> mask;
  std::size_t omega_in_ball = 0;
  for (int iy = ilo[1]; iy <= ihi[1]; ++iy)
    for (int ix = ilo[0]; ix <= ihi[0]; ++ix) {
      const double x = origin[0] + (ix + 0.5) * h - center[0];
      const double y = dim == 2 ? origin[1] + (iy + 0.5) * h - center[1] : 0.0;
      if (x * x + y * y > r2) continue;
      cells.push_back({ix, iy});
      const bool in = flagged.count(Index{ix, iy}) > 0;
      mask.push_back(in ? 1 : 0);
      omega_in_ball += in ? 1 : 0;
    }
  if (omega_in_ball != flagged.size()) throw InvalidInput("t is too small: Omega does not fit in the relative ball");
  return std::make_shared<const GridDomain>(dim, h, t, origin, center, diameter, std::move(cells), std::move(mask));
}

DomainPtr dilate(const GridDomain& dom, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("dilation factor must be > 0");
  const Point origin{dom.origin()[0] * c, dom.origin()[1] * c};
  const Point center{dom.center()[0] * c, dom.center()[1] * c};
  std::vector<std::uint8_t> mask(dom.omega_mask().begin(), dom.omega_mask().end());
  return std::make_shared<const GridDomain>(dom.dim(), dom.h() * c, dom.t(), origin, center, dom.diameter() * c,
                                            dom.cells(), std::move(mask));
}

double poincare_constant(const GridDomain& dom, const FracParams& params, int threads) {
  const int dim = dom.dim();
  const double expo = dim + params.sp();

  // Farthest Omega distance from any lattice point is attained on Omega's hull.
  std::vector<IPoint> omega_pts;
  for (auto i : dom.omega_cells()) omega_pts.push_back({dom.cells()[i][0], dom.cells()[i][1]});
  const std::vector<IPoint> hull = dim == 2 ? convex_hull(omega_pts) : [&] {
    auto [lo, hi] = std::minmax_element(omega_pts.begin(), omega_pts.end());
    return std::vector<IPoint>{*lo, *hi};
  }();
  const std::int64_t omega_diam2 = max_pair_dist2(hull);

  // Offsets grouped into rings k-1 < |d| <= k.
  const int kmax = std::max(dom.box_counts()[0], dom.box_counts()[1]);
  std::vector<std::vector<Index>> rings(static_cast<std::size_t>(kmax) + 1);
  const int ylim = dim == 2 ? kmax : 0;
  for (int dy = -ylim; dy <= ylim; ++dy)
    for (int dx = -kmax; dx <= kmax; ++dx) {
      const std::int64_t d2 = static_cast<std::int64_t>(dx) * dx + static_cast<std::int64_t>(dy) * dy;
      if (d2 == 0 || d2 > static_cast<std::int64_t>(kmax) * kmax) continue;
      auto k = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(d2))));
      while ((k - 1) * (k - 1) >= d2) --k;
      while (k * k < d2) ++k;
      rings[static_cast<std::size_t>(k)].push_back({dx, dy});
    }

  const std::size_t m = dom.size();
  std::vector<double> best(m, std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::size_t c = 0; c < m; ++c) {
    if (dom.in_omega(c)) continue;
    const Index ci = dom.cells()[c];
    std::int64_t count = 1;
    std::int64_t far2 = 0;
    for (const auto& hp : hull) {
      const auto dx = hp[0] - ci[0], dy = hp[1] - ci[1];
      far2 = std::max(far2, dx * dx + dy * dy);
    }
    for (int k = 1; k <= kmax; ++k) {
      bool fits = true;
      std::int64_t ring_far2 = far2;
      for (const auto& off : rings[static_cast<std::size_t>(k)]) {
        const auto cell = dom.find({ci[0] + off[0], ci[1] + off[1]});
        if (!cell || dom.in_omega(*cell)) {
          fits = false;
          break;
        }
        const Index yi = dom.cells()[*cell];
        for (const auto& hp : hull) {
          const auto dx = hp[0] - yi[0], dy = hp[1] - yi[1];
          ring_far2 = std::max(ring_far2, dx * dx + dy * dy);
        }
      }
      if (!fits) break;
      far2 = ring_far2;
      count += static_cast<std::int64_t>(rings[static_cast<std::size_t>(k)].size());
      const std::int64_t d2 = std::max<std::int64_t>({omega_diam2, std::int64_t{4} * k * k, far2});
      const double value =
          std::pow(static_cast<double>(d2), 0.5 * expo) / static_cast<double>(count);
      best[c] = std::min(best[c], value);
    }
  }
  const double min_value = *std::min_element(best.begin(), best.end());
  if (!std::isfinite(min_value))
    throw InvalidInput("no candidate ball fits in the relative ball outside Omega at this resolution");
  // d^{N+sp} h^{N+sp} / (count h^N)
  return min_value * std::pow(dom.h(), params.sp());
}

}  // namespace fraceig
