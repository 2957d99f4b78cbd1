#pragma once

// Uniform cell-centred grids on a bounding box in R^n (n = 1, 2), sampled
// functions on them, and the midpoint-rule quadrature every other module
// integrates with.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mohardy {

/// A point of R^n. In one dimension the second coordinate is always 0.
using Point = std::array<double, 2>;

/// Multi-index alpha for monomials x^alpha. Unused entries are 0.
using MultiIndex = std::array<int, 2>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

double norm(const Point& p);
double distance(const Point& a, const Point& b);

class Grid {
 public:
  /// Throws Precondition if dim is not 1 or 2, the resolution is not a power
  /// of two >= 2, or an axis is degenerate.
  Grid(int dim, std::vector<Interval> box, std::size_t resolution);

  int dim() const { return dim_; }
  std::size_t resolution() const { return resolution_; }
  std::size_t size() const { return size_; }
  const Interval& axis(int a) const { return box_[static_cast<std::size_t>(a)]; }
  const std::vector<Interval>& box() const { return box_; }
  double spacing(int a) const { return spacing_[static_cast<std::size_t>(a)]; }
  /// Largest per-axis spacing.
  double cell_width() const;
  double cell_volume() const { return cell_volume_; }
  /// Diameter of one cell (used as the "within one cell" tolerance).
  double cell_diameter() const;

  /// Node (cell centre) for flat index. Axis 0 varies fastest.
  Point node(std::size_t flat) const;
  double coord(int a, std::size_t i) const {
    return box_[static_cast<std::size_t>(a)].lo +
           (static_cast<double>(i) + 0.5) * spacing_[static_cast<std::size_t>(a)];
  }
  std::array<std::size_t, 2> unflatten(std::size_t flat) const;
  std::size_t flatten(std::size_t i0, std::size_t i1 = 0) const {
    return i0 + resolution_ * i1;
  }
  /// Per-axis index range [first, last] of nodes whose coordinate lies in
  /// [lo, hi]. Returns false if the range is empty.
  bool index_range(int a, double lo, double hi, std::size_t& first,
                   std::size_t& last) const;
  /// Index of the node nearest to x along axis a (clamped into the grid).
  std::size_t nearest_index(int a, double x) const;

  bool contains(const Point& p) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int dim_;
  std::vector<Interval> box_;
  std::size_t resolution_;
  std::size_t size_;
  std::array<double, 2> spacing_{0.0, 0.0};
  double cell_volume_;
};

struct Ball {
  Point center{0.0, 0.0};
  double radius = 1.0;

  /// Centre-of-cell membership test; nodes exactly on the sphere count as inside.
  bool contains(const Point& p) const { return distance(p, center) <= radius; }
  Ball dilate(double factor) const { return Ball{center, radius * factor}; }
};

/// Lebesgue measure of a ball in R^n.
double ball_volume(int dim, double radius);

using BallFamily = std::vector<Ball>;

/// FNV-1a hash of the family, reported alongside sup-over-family quantities.
std::uint64_t family_hash(const BallFamily& family);

/// Centres on a coarse sub-grid (every `center_stride`-th node, offset so the
/// box centre is included when the stride allows) crossed with dyadic radii
/// r_min * 2^j <= r_max. Balls containing no node are dropped.
BallFamily make_ball_family(const Grid& grid, std::size_t center_stride,
                            double r_min, double r_max);

/// Flat indices of nodes inside the ball, ascending.
std::vector<std::size_t> nodes_in_ball(const Grid& grid, const Ball& ball);

class GridFunction {
 public:
  explicit GridFunction(Grid grid);
  GridFunction(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double max_abs() const;
  bool is_zero() const;
  /// Flat indices of nonzero samples, ascending.
  std::vector<std::size_t> support() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c);

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

/// Samples a callable on every node.
template <class F>
GridFunction sample(const Grid& grid, F&& fn) {
  GridFunction out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid.node(i));
  return out;
}

/// A function known to vanish outside a small set of nodes.
struct SparseField {
  std::vector<std::size_t> index;  // ascending flat indices
  std::vector<double> value;

  std::size_t size() const { return index.size(); }
  bool empty() const { return index.empty(); }
  double max_abs() const;
};

SparseField sparsify(const GridFunction& f);
GridFunction densify(const Grid& grid, const SparseField& s);
/// out += c * s
void accumulate(GridFunction& out, const SparseField& s, double c = 1.0);

/// Midpoint rule over the whole box.
double integrate(const GridFunction& f);
/// Midpoint rule over the nodes inside the ball. Throws Precondition
/// "empty region" when the ball contains no node.
double integrate(const GridFunction& f, const Ball& region);

/// Integral of f(x) * x^alpha. Throws Precondition if |alpha| > kMaxMomentOrder.
inline constexpr int kMaxMomentOrder = 8;
double moment(const GridFunction& f, const MultiIndex& alpha);
/// Integral of f(x) * ((x - center) / scale)^alpha, the dimensionless form
/// used for moment tolerances.
double centered_moment(const Grid& grid, const SparseField& f,
                       const MultiIndex& alpha, const Point& center, double scale);
double centered_moment(const GridFunction& f, const MultiIndex& alpha,
                       const Point& center, double scale);

/// All multi-indices with |alpha| <= s in graded order.
std::vector<MultiIndex> multi_indices(int dim, int s);

/// Unnormalised compactly supported smooth bump exp(-1/(1-|x|^2)) on |x| < 1.
double bump(const Point& x);

/// f * phi_t with the built-in bump normalised to unit mass on the grid.
/// Throws Precondition "scale below resolution" if t is below one cell width.
GridFunction mollify(const GridFunction& f, double t);

/// Throws Precondition if f has nonzero samples within `margin` (fraction of
/// each axis width) of the box boundary.
void check_support_margin(const GridFunction& f, double margin = 0.1);

/// CSV function format: header "x,value" or "x,y,value", rows in flat order.
void write_csv(std::ostream& os, const GridFunction& f);
/// Validates header, row count, node coordinates and finiteness. Throws Parse.
GridFunction read_csv(std::istream& is, const Grid& grid);

}  // namespace mohardy
