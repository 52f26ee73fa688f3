#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fraceig/params.hpp"

namespace fraceig {

using Point = std::array<double, 2>;
/// Integer lattice coordinates of a cell; only the first `dim` entries are used.
using Index = std::array<int, 2>;

/// Description of the open set Omega before discretization.
struct Shape {
  enum class Kind { Interval, Box, Ball, Union, Mask };
  Kind kind = Kind::Interval;
  // Interval: lo[0] < x < hi[0].  Box: lo < x < hi componentwise.
  Point lo{0.0, 0.0};
  Point hi{0.0, 0.0};
  // Ball: |x - center| < radius.
  Point center{0.0, 0.0};
  double radius = 0.0;
  // Mask: cells of width h with lower corner `origin`, x index fastest.
  Point origin{0.0, 0.0};
  Index counts{1, 1};
  std::vector<std::uint8_t> cells;
  // Union members.
  std::vector<Shape> parts;

  static Shape interval(double a, double b);
  static Shape box(Point lo, Point hi);
  static Shape ball(Point center, double radius);
  static Shape mask(Point origin, Index counts, std::vector<std::uint8_t> cells);
  static Shape union_of(std::vector<Shape> parts);
};

struct DomainSpec {
  int dim = 1;
  double h = 0.0;
  Shape shape;
};

/// Uniform-grid discretization of Omega together with the relative ball
/// B_{tR}(Omega) (diameter tR, concentric with the smallest ball enclosing
/// Omega). Cells are listed row by row over the ball's bounding index box,
/// x fastest; only cells whose centers lie in the ball are kept.
///
/// Distances are computed from integer index offsets times h, so a dilation
/// changes every distance by exactly the same factor.
class GridDomain {
 public:
  GridDomain(int dim, double h, double t, Point origin, Point center, double diameter,
             std::vector<Index> cells, std::vector<std::uint8_t> omega_mask);

  int dim() const { return dim_; }
  double h() const { return h_; }
  double t() const { return t_; }
  /// Lower corner of the lattice: cell `idx` covers origin + [idx, idx+1) * h.
  Point origin() const { return origin_; }
  Point center() const { return center_; }
  /// R = diam(Omega), taken over the union of flagged closed cells.
  double diameter() const { return diameter_; }
  double ball_radius() const { return 0.5 * t_ * diameter_; }
  /// Cell measure h^N.
  double cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

  std::size_t size() const { return cells_.size(); }
  std::size_t omega_count() const { return omega_cells_.size(); }
  const std::vector<Index>& cells() const { return cells_; }
  bool in_omega(std::size_t i) const { return mask_[i] != 0; }
  std::span<const std::uint8_t> omega_mask() const { return mask_; }
  /// Cell ids flagged in Omega, ascending.
  std::span<const std::size_t> omega_cells() const { return omega_cells_; }

  Point cell_center(std::size_t i) const;
  /// Squared lattice distance between two cells, in units of h^2.
  std::int64_t dist2(std::size_t i, std::size_t j) const;
  double distance(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> find(Index idx) const;

  /// Bounding index box of the ball cells.
  Index box_lo() const { return box_lo_; }
  Index box_counts() const { return box_counts_; }

 private:
  int dim_;
  double h_;
  double t_;
  Point origin_;
  Point center_;
  double diameter_;
  std::vector<Index> cells_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::size_t> omega_cells_;
  Index box_lo_{0, 0};
  Index box_counts_{1, 1};
  std::vector<std::int32_t> lookup_;
};

using DomainPtr = std::shared_ptr<const GridDomain>;

/// Discretizes `spec` and the relative ball of diameter t*R around it.
/// Throws InvalidInput for an empty Omega, a part too thin to contain a cell
/// center at spacing h, h <= 0, t <= 1 or a malformed shape.
DomainPtr build_domain(const DomainSpec& spec, double t = 4.0);

/// Grid for c*Omega: same cells and mask, spacing c*h, geometry scaled by c.
DomainPtr dilate(const GridDomain& dom, double c);

/// Discrete Poincare constant: the minimum of diam(Omega u B)^{N+sp} / |B| over
/// lattice balls B (cells with centers within k*h, k >= 1, of a non-Omega
/// cell center) that fit inside the relative ball without touching Omega.
/// The diameter is taken over cell centers and |B| counts cells times h^N,
/// which makes ||u||_p^p <= I * [u]^p hold exactly for the discrete energy.
double poincare_constant(const GridDomain& dom, const FracParams& params, int threads = 1);

}  // namespace fraceig
