#include "mohardy/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mohardy/error.hpp"

namespace mohardy {

double norm(const Point& p) { return std::hypot(p[0], p[1]); }

double distance(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

Grid::Grid(int dim, std::vector<Interval> box, std::size_t resolution)
    : dim_(dim), box_(std::move(box)), resolution_(resolution) {
  require(dim_ == 1 || dim_ == 2, "grid dimension must be 1 or 2");
  require(box_.size() == static_cast<std::size_t>(dim_),
          "grid box must have one interval per axis");
  require(resolution_ >= 2 && std::has_single_bit(resolution_),
          "grid resolution must be a power of two >= 2");
  cell_volume_ = 1.0;
  size_ = 1;
  for (int a = 0; a < dim_; ++a) {
    const Interval& iv = box_[static_cast<std::size_t>(a)];
    require(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.hi > iv.lo,
            "grid box must be nondegenerate");
    spacing_[static_cast<std::size_t>(a)] = iv.width() / static_cast<double>(resolution_);
    cell_volume_ *= spacing_[static_cast<std::size_t>(a)];
    size_ *= resolution_;
  }
}

double Grid::cell_width() const {
  return dim_ == 1 ? spacing_[0] : std::max(spacing_[0], spacing_[1]);
}

double Grid::cell_diameter() const {
  return dim_ == 1 ? spacing_[0] : std::hypot(spacing_[0], spacing_[1]);
}

Point Grid::node(std::size_t flat) const {
  if (dim_ == 1) return {coord(0, flat), 0.0};
  return {coord(0, flat % resolution_), coord(1, flat / resolution_)};
}

std::array<std::size_t, 2> Grid::unflatten(std::size_t flat) const {
  if (dim_ == 1) return {flat, 0};
  return {flat % resolution_, flat / resolution_};
}

bool Grid::index_range(int a, double lo, double hi, std::size_t& first,
                       std::size_t& last) const {
  const double h = spacing(a);
  const double x0 = axis(a).lo;
  // node i sits at x0 + (i + 1/2) h
  double fi = std::ceil((lo - x0) / h - 0.5);
  double li = std::floor((hi - x0) / h - 0.5);
  fi = std::max(fi, 0.0);
  li = std::min(li, static_cast<double>(resolution_) - 1.0);
  if (fi > li) return false;
  first = static_cast<std::size_t>(fi);
  last = static_cast<std::size_t>(li);
  // guard against rounding in the division
  while (first > 0 && coord(a, first - 1) >= lo) --first;
  while (first <= last && coord(a, first) < lo) ++first;
  while (last + 1 < resolution_ && coord(a, last + 1) <= hi) ++last;
  while (last >= first && coord(a, last) > hi) {
    if (last == 0) return false;
    --last;
  }
  return first <= last;
}

std::size_t Grid::nearest_index(int a, double x) const {
  const double fi = std::round((x - axis(a).lo) / spacing(a) - 0.5);
  if (fi <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(fi), resolution_ - 1);
}

bool Grid::contains(const Point& p) const {
  for (int a = 0; a < dim_; ++a)
    if (p[static_cast<std::size_t>(a)] < axis(a).lo || p[static_cast<std::size_t>(a)] > axis(a).hi)
      return false;
  return true;
}

bool Grid::operator==(const Grid& other) const {
  return dim_ == other.dim_ && resolution_ == other.resolution_ && box_ == other.box_;
}

double ball_volume(int dim, double radius) {
  return dim == 1 ? 2.0 * radius : std::numbers::pi * radius * radius;
}

std::uint64_t family_hash(const BallFamily& family) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  };
  for (const Ball& b : family) {
    mix(b.center[0]);
    mix(b.center[1]);
    mix(b.radius);
  }
  return h;
}

BallFamily make_ball_family(const Grid& grid, std::size_t center_stride, double r_min,
                            double r_max) {
  require(center_stride >= 1, "ball family stride must be >= 1");
  require(r_min > 0.0 && r_max >= r_min, "ball family radii must satisfy 0 < r_min <= r_max");
  std::vector<double> radii;
  for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);

  // Centres on cell boundaries so that balls are node-symmetric; the box
  // centre is always a candidate.
  std::vector<std::vector<double>> centers(static_cast<std::size_t>(grid.dim()));
  for (int a = 0; a < grid.dim(); ++a) {
    const Interval& iv = grid.axis(a);
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double step = grid.spacing(a) * static_cast<double>(center_stride);
    auto& cs = centers[static_cast<std::size_t>(a)];
    for (double c = mid; c > iv.lo; c -= step) cs.push_back(c);
    for (double c = mid + step; c < iv.hi; c += step) cs.push_back(c);
    std::sort(cs.begin(), cs.end());
  }
  BallFamily family;
  auto emit = [&](const Point& c) {
    for (double r : radii) {
      Ball b{c, r};
      if (!nodes_in_ball(grid, b).empty()) family.push_back(b);
    }
  };
  if (grid.dim() == 1) {
    for (double c : centers[0]) emit({c, 0.0});
  } else {
    for (double cy : centers[1])
      for (double cx : centers[0]) emit({cx, cy});
  }
  return family;
}

std::vector<std::size_t> nodes_in_ball(const Grid& grid, const Ball& ball) {
  std::vector<std::size_t> out;
  std::size_t f0 = 0, l0 = 0;
  if (!grid.index_range(0, ball.center[0] - ball.radius, ball.center[0] + ball.radius, f0, l0))
    return out;
  if (grid.dim() == 1) {
    for (std::size_t i = f0; i <= l0; ++i)
      if (ball.contains(grid.node(i))) out.push_back(i);
    return out;
  }
  std::size_t f1 = 0, l1 = 0;
  if (!grid.index_range(1, ball.center[1] - ball.radius, ball.center[1] + ball.radius, f1, l1))
    return out;
  for (std::size_t j = f1; j <= l1; ++j) {
    const double y = grid.coord(1, j);
    for (std::size_t i = f0; i <= l0; ++i) {
      if (ball.contains({grid.coord(0, i), y})) out.push_back(grid.flatten(i, j));
    }
  }
  return out;
}

GridFunction::GridFunction(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.size(), "sample count must equal node count");
  for (double v : values_) require(std::isfinite(v), "grid function samples must be finite");
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

std::vector<std::size_t> GridFunction::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != 0.0) out.push_back(i);
  return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require(grid_ == other.grid_, "grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require(grid_ == other.grid_, "grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

double SparseField::max_abs() const {
  double m = 0.0;
  for (double v : value) m = std::max(m, std::abs(v));
  return m;
}

SparseField sparsify(const GridFunction& f) {
  SparseField s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0.0) {
      s.index.push_back(i);
      s.value.push_back(f[i]);
    }
  }
  return s;
}

GridFunction densify(const Grid& grid, const SparseField& s) {
  GridFunction out(grid);
  accumulate(out, s);
  return out;
}

void accumulate(GridFunction& out, const SparseField& s, double c) {
  for (std::size_t k = 0; k < s.index.size(); ++k) out[s.index[k]] += c * s.value[k];
}

double integrate(const GridFunction& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_volume();
}

double integrate(const GridFunction& f, const Ball& region) {
  const auto nodes = nodes_in_ball(f.grid(), region);
  require(!nodes.empty(), "empty region");
  double sum = 0.0;
  for (std::size_t i : nodes) sum += f[i];
  return sum * f.grid().cell_volume();
}

namespace {

double monomial(const Point& x, const MultiIndex& alpha) {
  double v = 1.0;
  for (int k = 0; k < alpha[0]; ++k) v *= x[0];
  for (int k = 0; k < alpha[1]; ++k) v *= x[1];
  return v;
}

void check_alpha(const Grid& grid, const MultiIndex& alpha) {
  require(alpha[0] >= 0 && alpha[1] >= 0, "multi-index entries must be nonnegative");
  require(grid.dim() == 2 || alpha[1] == 0, "multi-index has too many entries for a 1-D grid");
  require(alpha[0] + alpha[1] <= kMaxMomentOrder, "moment order exceeds the supported maximum");
}

}  // namespace

double moment(const GridFunction& f, const MultiIndex& alpha) {
  check_alpha(f.grid(), alpha);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) sum += f[i] * monomial(f.grid().node(i), alpha);
  return sum * f.grid().cell_volume();
}

double centered_moment(const Grid& grid, const SparseField& f, const MultiIndex& alpha,
                       const Point& center, double scale) {
  check_alpha(grid, alpha);
  double sum = 0.0;
  for (std::size_t k = 0; k < f.index.size(); ++k) {
    const Point x = grid.node(f.index[k]);
    sum += f.value[k] * monomial({(x[0] - center[0]) / scale, (x[1] - center[1]) / scale}, alpha);
  }
  return sum * grid.cell_volume();
}

double centered_moment(const GridFunction& f, const MultiIndex& alpha, const Point& center,
                       double scale) {
  return centered_moment(f.grid(), sparsify(f), alpha, center, scale);
}

std::vector<MultiIndex> multi_indices(int dim, int s) {
  std::vector<MultiIndex> out;
  for (int deg = 0; deg <= s; ++deg) {
    if (dim == 1) {
      out.push_back({deg, 0});
    } else {
      for (int a = deg; a >= 0; --a) out.push_back({a, deg - a});
    }
  }
  return out;
}

double bump(const Point& x) {
  const double r2 = x[0] * x[0] + x[1] * x[1];
  if (r2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r2));
}

GridFunction mollify(const GridFunction& f, double t) {
  const Grid& g = f.grid();
  require(t >= g.cell_width() * (1.0 - 1e-12), "scale below resolution");
  const int dim = g.dim();
  const auto reach0 = static_cast<long>(std::ceil(t / g.spacing(0)));
  const long reach1 = dim == 2 ? static_cast<long>(std::ceil(t / g.spacing(1))) : 0;

  struct Tap {
    long d0, d1;
    double w;
  };
  std::vector<Tap> taps;
  double mass = 0.0;
  for (long d1 = -reach1; d1 <= reach1; ++d1) {
    for (long d0 = -reach0; d0 <= reach0; ++d0) {
      const Point z{static_cast<double>(d0) * g.spacing(0) / t,
                    dim == 2 ? static_cast<double>(d1) * g.spacing(1) / t : 0.0};
      const double w = bump(z);
      if (w > 0.0) {
        taps.push_back({d0, d1, w});
        mass += w;
      }
    }
  }
  for (Tap& tap : taps) tap.w /= mass * g.cell_volume();

  GridFunction out(g);
  const auto n = static_cast<long>(g.resolution());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double fi = f[i];
    if (fi == 0.0) continue;
    const auto idx = g.unflatten(i);
    const auto i0 = static_cast<long>(idx[0]);
    const auto i1 = static_cast<long>(idx[1]);
    for (const Tap& tap : taps) {
      const long j0 = i0 + tap.d0;
      const long j1 = i1 + tap.d1;
      if (j0 < 0 || j0 >= n || j1 < 0 || (dim == 2 && j1 >= n)) continue;
      out[g.flatten(static_cast<std::size_t>(j0), static_cast<std::size_t>(j1))] +=
          fi * tap.w * g.cell_volume();
    }
  }
  return out;
}

void check_support_margin(const GridFunction& f, double margin) {
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    const Point x = g.node(i);
    for (int a = 0; a < g.dim(); ++a) {
      const Interval& iv = g.axis(a);
      const double band = margin * iv.width();
      const double c = x[static_cast<std::size_t>(a)];
      if (c < iv.lo + band || c > iv.hi - band)
        fail(ErrorKind::Precondition,
             "input is not supported inside the box margin of " + std::to_string(margin));
    }
  }
}

void write_csv(std::ostream& os, const GridFunction& f) {
  const Grid& g = f.grid();
  os << (g.dim() == 1 ? "x,value\n" : "x,y,value\n");
  char buf[128];
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = g.node(i);
    if (g.dim() == 1)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x[0], f[i]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x[0], x[1], f[i]);
    os << buf;
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim whitespace and a trailing carriage return
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return cells;
}

double parse_number(const std::string& s, std::size_t row) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "malformed number '" + s + "' in CSV row " + std::to_string(row));
  }
  if (used != s.size())
    fail(ErrorKind::Parse, "malformed number '" + s + "' in CSV row " + std::to_string(row));
  return v;
}

}  // namespace

GridFunction read_csv(std::istream& is, const Grid& grid) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::Parse, "empty CSV input");
  const auto header = split_csv_line(line);
  const std::vector<std::string> expected =
      grid.dim() == 1 ? std::vector<std::string>{"x", "value"}
                      : std::vector<std::string>{"x", "y", "value"};
  if (header != expected)
    fail(ErrorKind::Parse, std::string("CSV header must be '") +
                               (grid.dim() == 1 ? "x,value" : "x,y,value") + "'");

  std::vector<double> values;
  values.reserve(grid.size());
  std::size_t row = 0;
  const double tol = 1e-6 * grid.cell_width();
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    const auto cells = split_csv_line(line);
    if (cells.size() != expected.size())
      fail(ErrorKind::Parse, "CSV row " + std::to_string(row) + " has the wrong column count");
    if (values.size() >= grid.size())
      fail(ErrorKind::Parse, "CSV has more rows than grid nodes");
    const Point node = grid.node(values.size());
    for (int a = 0; a < grid.dim(); ++a) {
      const double c = parse_number(cells[static_cast<std::size_t>(a)], row);
      if (std::abs(c - node[static_cast<std::size_t>(a)]) > tol)
        fail(ErrorKind::Parse, "CSV row " + std::to_string(row) +
                                   " coordinate does not match the grid node");
    }
    const double v = parse_number(cells.back(), row);
    if (!std::isfinite(v))
      fail(ErrorKind::Parse, "CSV row " + std::to_string(row) + " has a non-finite value");
    values.push_back(v);
  }
  if (values.size() != grid.size())
    fail(ErrorKind::Parse, "CSV is incomplete: expected " + std::to_string(grid.size()) +
                               " rows, got " + std::to_string(values.size()));
  return GridFunction(grid, std::move(values));
}

}  // namespace mohardy
