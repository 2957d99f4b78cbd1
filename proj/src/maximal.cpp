#include "mohardy/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "mohardy/error.hpp"
#include "mohardy/norms.hpp"

namespace mohardy {

// ---------------------------------------------------------------- Poly2

Poly2::Poly2(int degree)
    : degree_(degree), c_(static_cast<std::size_t>((degree + 1) * (degree + 1)), 0.0) {
  require(degree >= 0, "polynomial degree must be nonnegative");
}

Poly2 Poly2::constant(double c) {
  Poly2 p(0);
  p.c_[0] = c;
  return p;
}

Poly2 Poly2::monomial(int a, int b, double c) {
  Poly2 p(a + b);
  p.add(a, b, c);
  return p;
}

double Poly2::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > degree_) return 0.0;
  return c_[static_cast<std::size_t>(a * (degree_ + 1) + b)];
}

void Poly2::add(int a, int b, double c) {
  require(a >= 0 && b >= 0 && a + b <= degree_, "monomial exceeds polynomial degree");
  c_[static_cast<std::size_t>(a * (degree_ + 1) + b)] += c;
}

double Poly2::operator()(const Point& y) const {
  // Horner in y1 for each power of y0, then Horner in y0
  double out = 0.0;
  for (int a = degree_; a >= 0; --a) {
    double inner = 0.0;
    for (int b = degree_ - a; b >= 0; --b) inner = inner * y[1] + coeff(a, b);
    out = out * y[0] + inner;
  }
  return out;
}

Poly2 Poly2::derivative(int axis) const {
  Poly2 d(std::max(0, degree_ - 1));
  for (int a = 0; a <= degree_; ++a)
    for (int b = 0; a + b <= degree_; ++b) {
      const double c = coeff(a, b);
      if (c == 0.0) continue;
      if (axis == 0 && a > 0) d.add(a - 1, b, a * c);
      if (axis == 1 && b > 0) d.add(a, b - 1, b * c);
    }
  return d;
}

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r(degree_ + o.degree_);
  for (int a = 0; a <= degree_; ++a)
    for (int b = 0; a + b <= degree_; ++b) {
      const double c = coeff(a, b);
      if (c == 0.0) continue;
      for (int a2 = 0; a2 <= o.degree_; ++a2)
        for (int b2 = 0; a2 + b2 <= o.degree_; ++b2) {
          const double c2 = o.coeff(a2, b2);
          if (c2 != 0.0) r.add(a + a2, b + b2, c * c2);
        }
    }
  return r;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 r(std::max(degree_, o.degree_));
  for (int a = 0; a <= r.degree_; ++a)
    for (int b = 0; a + b <= r.degree_; ++b) {
      const double c = coeff(a, b) + o.coeff(a, b);
      if (c != 0.0) r.add(a, b, c);
    }
  return r;
}

Poly2 Poly2::operator*(double s) const {
  Poly2 r = *this;
  for (double& c : r.c_) c *= s;
  return r;
}

// ---------------------------------------------------------------- members

namespace {

struct Form {
  Poly2 poly;
  int k = 0;
};

const Poly2& unit_u() {
  static const Poly2 u = [] {
    Poly2 p(2);
    p.add(0, 0, 1.0);
    p.add(2, 0, -1.0);
    p.add(0, 2, -1.0);
    return p;
  }();
  return u;
}

// d_i (P u^{-k} e^{-1/u}) = (dP u^2 + 2k y_i P u - 2 y_i P) u^{-(k+2)} e^{-1/u}
Form derive(const Form& f, int axis) {
  const Poly2& u = unit_u();
  const Poly2 yi = axis == 0 ? Poly2::monomial(1, 0) : Poly2::monomial(0, 1);
  Poly2 out = f.poly.derivative(axis) * (u * u);
  if (f.k != 0) out = out + yi * f.poly * u * (2.0 * f.k);
  out = out + yi * f.poly * (-2.0);
  return {out, f.k + 2};
}

Form derive(Form f, const MultiIndex& alpha) {
  for (int j = 0; j < alpha[0]; ++j) f = derive(f, 0);
  for (int j = 0; j < alpha[1]; ++j) f = derive(f, 1);
  return f;
}

double eval_form(const Form& f, const Point& y) {
  const double u = 1.0 - y[0] * y[0] - y[1] * y[1];
  if (u <= 0.0) return 0.0;
  const double e = -1.0 / u - f.k * std::log(u);
  if (e < -745.0) return 0.0;
  return f.poly(y) * std::exp(e);
}

Point to_local(const DictMember& m, const Point& x) {
  return {(x[0] - m.center[0]) / m.rho, (x[1] - m.center[1]) / m.rho};
}

}  // namespace

double member_value(const DictMember& m, const Point& x) {
  return m.amplitude * eval_form({m.poly, m.k}, to_local(m, x));
}

double member_derivative(const DictMember& m, const MultiIndex& alpha, const Point& x) {
  const Form f = derive(Form{m.poly, m.k}, alpha);
  return m.amplitude * std::pow(m.rho, -(alpha[0] + alpha[1])) * eval_form(f, to_local(m, x));
}

double member_seminorm(const DictMember& member, int m, int dim) {
  const double expo = static_cast<double>((m + 2) * (dim + 1));
  double best = 0.0;
  for (const MultiIndex& alpha : multi_indices(dim, m + 1)) {
    const Form f = derive(Form{member.poly, member.k}, alpha);
    const double scale = member.amplitude * std::pow(member.rho, -(alpha[0] + alpha[1]));
    auto value = [&](const Point& y) {
      const Point x{member.center[0] + member.rho * y[0], member.center[1] + member.rho * y[1]};
      return std::pow(1.0 + norm(x), expo) * std::abs(scale * eval_form(f, y));
    };
    // coarse scan of the unit ball, then two rounds of local zoom
    const int n = dim == 1 ? 4000 : 160;
    double step = 2.0 / n;
    Point arg{0.0, 0.0};
    double local = -1.0;
    auto scan = [&](const Point& centre, double half, double h) {
      const int cnt = static_cast<int>(std::round(half / h));
      for (int j = dim == 1 ? 0 : -cnt; j <= (dim == 1 ? 0 : cnt); ++j)
        for (int i = -cnt; i <= cnt; ++i) {
          const Point y{centre[0] + i * h, dim == 1 ? 0.0 : centre[1] + j * h};
          const double v = value(y);
          if (v > local) {
            local = v;
            arg = y;
          }
        }
    };
    scan({0.0, 0.0}, 1.0, step);
    for (int round = 0; round < 2; ++round) {
      const Point c = arg;
      scan(c, step, step / 20.0);
      step /= 20.0;
    }
    best = std::max(best, local);
  }
  return best;
}

std::vector<double> dyadic_scales(double t_min, double t_max) {
  require(t_min > 0.0 && t_max >= t_min, "scales need 0 < t_min <= t_max");
  std::vector<double> out;
  for (double t = t_min; t <= t_max * (1.0 + 1e-12); t *= 2.0) out.push_back(t);
  return out;
}

std::vector<double> default_scales(const Grid& grid) {
  double w = grid.axis(0).width();
  if (grid.dim() == 2) w = std::min(w, grid.axis(1).width());
  const double t_min = 2.0 * grid.cell_width();
  return dyadic_scales(t_min, std::max(t_min, w / 32.0));
}

namespace {

void push_member(std::vector<DictMember>& out, std::string label, Form f, Point c, double rho) {
  out.push_back({std::move(label), std::move(f.poly), f.k, c, rho, 1.0});
}

std::string alpha_label(const MultiIndex& a, int dim) {
  return dim == 1 ? std::to_string(a[0]) : std::to_string(a[0]) + "," + std::to_string(a[1]);
}

}  // namespace

TestDictionary build_dictionary(int m, std::size_t count, std::vector<double> scales, int dim) {
  require(m >= 0, "dictionary smoothness must be >= 0");
  require(count >= 1, "dictionary needs at least one member");
  require(dim == 1 || dim == 2, "dimension must be 1 or 2");
  require(!scales.empty(), "dictionary needs at least one scale");
  for (double t : scales) require(t > 0.0, "scales must be positive");
  std::sort(scales.begin(), scales.end());

  const Form bump_form{Poly2::constant(1.0), 0};
  std::vector<DictMember> members;
  auto full = [&] { return members.size() >= count; };

  push_member(members, "bump", bump_form, {0, 0}, 1.0);
  for (int order = 1; order <= m + 1 && !full(); ++order)
    for (const MultiIndex& a : multi_indices(dim, order))
      if (a[0] + a[1] == order && !full())
        push_member(members, "d^" + alpha_label(a, dim) + " bump", derive(bump_form, a), {0, 0},
                    1.0);
  for (int order = 1; order <= m + 1 && !full(); ++order)
    for (const MultiIndex& a : multi_indices(dim, order))
      if (a[0] + a[1] == order && !full())
        push_member(members, "y^" + alpha_label(a, dim) + " bump",
                    {Poly2::monomial(a[0], a[1]), 0}, {0, 0}, 1.0);
  for (int level = 1; !full(); ++level) {
    require(level <= 12, "dictionary size too large for the generator");
    const double rho = std::ldexp(1.0, -level);
    // centres c with |c| + rho <= 1 on the axes, symmetric, inner first
    std::vector<double> offsets;
    for (double c = rho; c + rho <= 1.0 + 1e-12; c += 2.0 * rho) offsets.push_back(c);
    for (int deriv = 0; deriv <= 1 && !full(); ++deriv) {
      for (double c : offsets) {
        for (int axis = 0; axis < dim && !full(); ++axis) {
          for (double sign : {-1.0, 1.0}) {
            if (full()) break;
            Point centre{0, 0};
            centre[static_cast<std::size_t>(axis)] = sign * c;
            Form f = deriv == 0 ? bump_form : derive(bump_form, axis);
            std::string label = (deriv == 0 ? "bump" : "d bump") + std::string(" @") +
                                std::to_string(sign * c) + " rho " + std::to_string(rho);
            push_member(members, label, std::move(f), centre, rho);
          }
        }
      }
    }
  }
  for (DictMember& mem : members) {
    const double s = member_seminorm(mem, m, dim);
    mem.amplitude = 1.0 / (s * kSeminormSafety);
  }
  return TestDictionary{m, dim, std::move(members), std::move(scales)};
}

// ---------------------------------------------------------------- grand maximal

namespace {

// Rectangular index window of the grid.
struct Region {
  std::size_t lo[2] = {0, 0};
  std::size_t n[2] = {1, 1};
  std::size_t size() const { return n[0] * n[1]; }
};

Region support_region(const Grid& grid, const SparseField& f, std::size_t pad0, std::size_t pad1) {
  std::size_t lo[2] = {grid.resolution(), grid.resolution()}, hi[2] = {0, 0};
  for (std::size_t k = 0; k < f.index.size(); ++k) {
    if (f.value[k] == 0.0) continue;
    const auto ij = grid.unflatten(f.index[k]);
    for (int a = 0; a < 2; ++a) {
      lo[a] = std::min(lo[a], ij[static_cast<std::size_t>(a)]);
      hi[a] = std::max(hi[a], ij[static_cast<std::size_t>(a)]);
    }
  }
  Region r;
  const std::size_t pad[2] = {pad0, pad1};
  for (int a = 0; a < grid.dim(); ++a) {
    r.lo[a] = lo[a] > pad[a] ? lo[a] - pad[a] : 0;
    const std::size_t top = std::min(grid.resolution() - 1, hi[a] + pad[a]);
    r.n[a] = top - r.lo[a] + 1;
  }
  return r;
}

// Half-widths along axis 0 for each row offset dy in [-w1, w1] of a disc of
// radius t; strict (< t) or inclusive (<= t).
std::vector<long> disc_rows(double h0, double h1, double t, bool strict, int dim) {
  auto inside = [&](long d0, long d1) {
    const double r2 = (d0 * h0) * (d0 * h0) + (d1 * h1) * (d1 * h1);
    return strict ? r2 < t * t : r2 <= t * t;
  };
  long w1 = 0;
  if (dim == 2)
    while (inside(0, w1 + 1)) ++w1;
  std::vector<long> rows;
  for (long d1 = -w1; d1 <= w1; ++d1) {
    long w = -1;
    if (inside(0, d1)) {
      w = static_cast<long>(std::floor(std::sqrt(std::max(0.0, t * t - (d1 * h1) * (d1 * h1))) / h0));
      while (inside(w + 1, d1)) ++w;
      while (w >= 0 && !inside(w, d1)) --w;
    }
    rows.push_back(w);
  }
  return rows;
}

// 1-D sliding max of width 2w+1 along axis 0 of every row.
void row_max(const std::vector<double>& in, std::vector<double>& out, const Region& r, long w) {
  out.assign(in.size(), 0.0);
  const long n0 = static_cast<long>(r.n[0]);
  std::deque<long> dq;
  for (std::size_t row = 0; row < r.n[1]; ++row) {
    const double* src = in.data() + row * r.n[0];
    double* dst = out.data() + row * r.n[0];
    dq.clear();
    long next = 0;
    for (long i = 0; i < n0; ++i) {
      const long hi = std::min(n0 - 1, i + w);
      while (next <= hi) {
        while (!dq.empty() && src[dq.back()] <= src[next]) dq.pop_back();
        dq.push_back(next++);
      }
      while (dq.front() < i - w) dq.pop_front();
      dst[i] = src[dq.front()];
    }
  }
}

// max over the disc window |y - x| < t (strict) or <= t of `in`.
std::vector<double> disc_max(const std::vector<double>& in, const Region& r, double h0, double h1,
                             double t, bool strict, int dim) {
  const auto rows = disc_rows(h0, h1, t, strict, dim);
  const long w1 = static_cast<long>(rows.size() / 2);
  std::vector<double> out(in.size(), 0.0);
  std::vector<long> widths(rows.begin(), rows.end());
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
  std::vector<double> tmp;
  for (long w : widths) {
    if (w < 0) continue;
    row_max(in, tmp, r, w);
    for (long d1 = -w1; d1 <= w1; ++d1) {
      if (rows[static_cast<std::size_t>(d1 + w1)] != w) continue;
      for (std::size_t j = 0; j < r.n[1]; ++j) {
        const long src_row = static_cast<long>(j) + d1;
        if (src_row < 0 || src_row >= static_cast<long>(r.n[1])) continue;
        const double* s = tmp.data() + static_cast<std::size_t>(src_row) * r.n[0];
        double* d = out.data() + j * r.n[0];
        for (std::size_t i = 0; i < r.n[0]; ++i) d[i] = std::max(d[i], s[i]);
      }
    }
  }
  return out;
}

// Kernel stencil row: offsets d0 in [first, first + w.size()) at row offset d1.
struct StencilRow {
  long d1;
  long first;
  std::vector<double> w;
};

std::vector<StencilRow> kernel_stencil(const DictMember& mem, const Grid& g, double t) {
  const int dim = g.dim();
  const double h0 = g.spacing(0), h1 = dim == 2 ? g.spacing(1) : 1.0;
  const double vol = g.cell_volume() / std::pow(t, dim);
  const long r0 = static_cast<long>(std::ceil(t / h0));
  const long r1 = dim == 2 ? static_cast<long>(std::ceil(t / h1)) : 0;
  std::vector<StencilRow> rows;
  for (long d1 = -r1; d1 <= r1; ++d1) {
    StencilRow row{d1, 0, {}};
    long first = 0;
    bool started = false;
    std::vector<double> vals;
    for (long d0 = -r0; d0 <= r0; ++d0) {
      const Point z{d0 * h0 / t, dim == 2 ? d1 * h1 / t : 0.0};
      const double v = member_value(mem, z) * vol;
      if (!started && v == 0.0) continue;
      if (!started) {
        started = true;
        first = d0;
      }
      vals.push_back(v);
    }
    while (!vals.empty() && vals.back() == 0.0) vals.pop_back();
    if (vals.empty()) continue;
    row.first = first;
    row.w = std::move(vals);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct LocalResult {
  Region region;
  std::vector<double> values;
};

LocalResult grand_maximal_local(const Grid& g, const SparseField& f, const TestDictionary& dict) {
  require(dict.dim == g.dim(), "dictionary dimension does not match the grid");
  const double t_max = dict.scales.back();
  const std::size_t pad0 = static_cast<std::size_t>(std::ceil(2.0 * t_max / g.spacing(0))) + 2;
  const std::size_t pad1 =
      g.dim() == 2 ? static_cast<std::size_t>(std::ceil(2.0 * t_max / g.spacing(1))) + 2 : 0;
  LocalResult out;
  out.region = support_region(g, f, pad0, pad1);
  const Region& r = out.region;
  out.values.assign(r.size(), 0.0);

  // support in region-local coordinates
  std::vector<long> li0, li1;
  std::vector<double> fv;
  for (std::size_t k = 0; k < f.index.size(); ++k) {
    if (f.value[k] == 0.0) continue;
    const auto ij = g.unflatten(f.index[k]);
    li0.push_back(static_cast<long>(ij[0] - r.lo[0]));
    li1.push_back(static_cast<long>(ij[1] - r.lo[1]));
    fv.push_back(f.value[k]);
  }
  const long n0 = static_cast<long>(r.n[0]), n1 = static_cast<long>(r.n[1]);
  std::vector<double> conv(r.size()), absmax(r.size());
  for (double t : dict.scales) {
    std::fill(absmax.begin(), absmax.end(), 0.0);
    for (const DictMember& mem : dict.members) {
      const auto stencil = kernel_stencil(mem, g, t);
      std::fill(conv.begin(), conv.end(), 0.0);
      for (std::size_t k = 0; k < fv.size(); ++k) {
        const double fk = fv[k];
        for (const StencilRow& row : stencil) {
          const long y1 = li1[k] + row.d1;
          if (y1 < 0 || y1 >= n1) continue;
          long a = li0[k] + row.first;
          long skip = 0;
          if (a < 0) {
            skip = -a;
            a = 0;
          }
          const long len = std::min(static_cast<long>(row.w.size()) - skip, n0 - a);
          if (len <= 0) continue;
          double* dst = conv.data() + static_cast<std::size_t>(y1 * n0 + a);
          const double* w = row.w.data() + skip;
          for (long i = 0; i < len; ++i) dst[i] += fk * w[i];
        }
      }
      for (std::size_t i = 0; i < conv.size(); ++i)
        absmax[i] = std::max(absmax[i], std::abs(conv[i]));
    }
    const auto win = disc_max(absmax, r, g.spacing(0), g.dim() == 2 ? g.spacing(1) : 1.0, t,
                              /*strict=*/true, g.dim());
    for (std::size_t i = 0; i < win.size(); ++i) out.values[i] = std::max(out.values[i], win[i]);
  }
  return out;
}

}  // namespace

SparseField grand_maximal(const Grid& grid, const SparseField& f, const TestDictionary& dict) {
  SparseField out;
  bool any = false;
  for (double v : f.value) any = any || v != 0.0;
  if (!any) return out;
  const LocalResult loc = grand_maximal_local(grid, f, dict);
  const Region& r = loc.region;
  for (std::size_t j = 0; j < r.n[1]; ++j)
    for (std::size_t i = 0; i < r.n[0]; ++i) {
      const double v = loc.values[j * r.n[0] + i];
      if (v != 0.0) {
        out.index.push_back(grid.flatten(r.lo[0] + i, r.lo[1] + j));
        out.value.push_back(v);
      }
    }
  // flatten order within the region is already ascending
  return out;
}

GridFunction grand_maximal(const GridFunction& f, const TestDictionary& dict) {
  return densify(f.grid(), grand_maximal(f.grid(), sparsify(f), dict));
}

// ---------------------------------------------------------------- Hardy-Littlewood

GridFunction hl_maximal(const GridFunction& f, const HlOptions& options) {
  const Grid& g = f.grid();
  require(options.radii_per_octave >= 1, "radii per octave must be >= 1");
  const int dim = g.dim();
  double r_max = options.r_max;
  if (r_max <= 0.0) r_max = dim == 1 ? g.axis(0).width() : std::max(g.axis(0).width(), g.axis(1).width());
  const double h0 = g.spacing(0), h1 = dim == 2 ? g.spacing(1) : 1.0;
  const std::size_t n = g.resolution();
  const std::size_t rows = dim == 2 ? n : 1;
  Region whole;
  whole.n[0] = n;
  whole.n[1] = rows;

  std::vector<double> absf(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) absf[i] = std::abs(f[i]);
  // per-row prefix sums
  std::vector<double> pre((n + 1) * rows, 0.0);
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t i = 0; i < n; ++i)
      pre[j * (n + 1) + i + 1] = pre[j * (n + 1) + i] + absf[j * n + i];

  GridFunction out(g);
  std::vector<double> avg(g.size());
  const double r0 = 0.5 * std::min(h0, dim == 2 ? h1 : h0);
  for (int j = 0;; ++j) {
    const double r = r0 * std::exp2(static_cast<double>(j) / options.radii_per_octave);
    if (r > r_max * (1.0 + 1e-12)) break;
    const auto disc = disc_rows(h0, h1, r, /*strict=*/false, dim);
    const long w1 = static_cast<long>(disc.size() / 2);
    double count = 0.0;
    for (long w : disc) count += static_cast<double>(2 * w + 1);
    for (std::size_t cj = 0; cj < rows; ++cj) {
      for (std::size_t ci = 0; ci < n; ++ci) {
        double sum = 0.0;
        for (long d1 = -w1; d1 <= w1; ++d1) {
          const long row = static_cast<long>(cj) + d1;
          if (row < 0 || row >= static_cast<long>(rows)) continue;
          const long w = disc[static_cast<std::size_t>(d1 + w1)];
          const long a = std::max(0L, static_cast<long>(ci) - w);
          const long b = std::min(static_cast<long>(n) - 1, static_cast<long>(ci) + w);
          const double* p = pre.data() + static_cast<std::size_t>(row) * (n + 1);
          sum += p[b + 1] - p[a];
        }
        avg[cj * n + ci] = sum / count;
      }
    }
    const auto win = disc_max(avg, whole, h0, h1, r, /*strict=*/false, dim);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = std::max(out[i], win[i]);
  }
  return out;
}

double hphi_norm(const GridFunction& f, const GrowthFunction& gf, const TestDictionary& dict,
                 int m_required) {
  if (dict.m < m_required) fail(ErrorKind::Precondition, "dictionary smoothness below m(phi)");
  return luxembourg_norm(grand_maximal(f, dict), gf).norm;
}

double domination_constant(const GridFunction& fstar, const GridFunction& mf) {
  require(fstar.grid() == mf.grid(), "grid mismatch");
  double c = 0.0;
  for (std::size_t i = 0; i < mf.size(); ++i) {
    if (mf[i] > 0.0)
      c = std::max(c, fstar[i] / mf[i]);
    else if (fstar[i] > 0.0)
      return std::numeric_limits<double>::infinity();
  }
  return c;
}

double hl_weighted_constant(const GridFunction& f, const GridFunction& mf,
                            const GrowthFunction& gf, double q, const std::vector<double>& t_grid) {
  const Grid& g = f.grid();
  double c = 0.0;
  for (double t : t_grid) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (mf[i] == 0.0) continue;
      const double w = gf(g.node(i), t);
      num += std::pow(mf[i], q) * w;
      den += std::pow(std::abs(f[i]), q) * w;
    }
    if (den > 0.0) c = std::max(c, num / den);
  }
  return c;
}

double average_weighted_constant(const GridFunction& f, const GrowthFunction& gf, double q,
                                 const BallFamily& balls, const std::vector<double>& t_grid) {
  const Grid& g = f.grid();
  double c = 0.0;
  for (const Ball& b : balls) {
    const auto nodes = nodes_in_ball(g, b);
    if (nodes.empty()) continue;
    double l1 = 0.0;
    for (std::size_t i : nodes) l1 += std::abs(f[i]);
    if (l1 == 0.0) continue;
    const double avg = l1 / static_cast<double>(nodes.size());
    for (double t : t_grid) {
      double mass = 0.0, weighted = 0.0;
      for (std::size_t i : nodes) {
        const double w = gf(g.node(i), t);
        mass += w;
        weighted += std::pow(std::abs(f[i]), q) * w;
      }
      c = std::max(c, std::pow(avg, q) * mass / weighted);
    }
  }
  return c;
}

}  // namespace mohardy
