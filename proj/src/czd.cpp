#include "mohardy/czd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "mohardy/error.hpp"
#include "mohardy/norms.hpp"

namespace mohardy {

namespace {

// Distance from an arbitrary point to the nearest node outside Omega.
class ComplementDistance {
 public:
  ComplementDistance(const Grid& grid, const NodeMask& omega) : grid_(grid), omega_(omega) {
    if (grid.dim() == 1) {
      const std::size_t n = grid.resolution();
      prev_.assign(n, -1);
      next_.assign(n, -1);
      long last = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (!omega[i]) last = static_cast<long>(i);
        prev_[i] = last;
      }
      last = -1;
      for (std::size_t i = n; i-- > 0;) {
        if (!omega[i]) last = static_cast<long>(i);
        next_[i] = last;
      }
    }
  }

  double operator()(const Point& p) const {
    return grid_.dim() == 1 ? query1(p) : query2(p);
  }

 private:
  double query1(const Point& p) const {
    const std::size_t i = grid_.nearest_index(0, p[0]);
    double best = std::numeric_limits<double>::infinity();
    for (long j : {static_cast<long>(i) - 1, static_cast<long>(i), static_cast<long>(i) + 1}) {
      if (j < 0 || j >= static_cast<long>(grid_.resolution())) continue;
      for (long c : {prev_[static_cast<std::size_t>(j)], next_[static_cast<std::size_t>(j)]})
        if (c >= 0) best = std::min(best, std::abs(grid_.coord(0, static_cast<std::size_t>(c)) - p[0]));
    }
    return best;
  }

  // Expanding square rings around the nearest node; stops once a ring cannot
  // hold anything closer than the best hit.
  double query2(const Point& p) const {
    const long n = static_cast<long>(grid_.resolution());
    const long ci = static_cast<long>(grid_.nearest_index(0, p[0]));
    const long cj = static_cast<long>(grid_.nearest_index(1, p[1]));
    const double hmin = std::min(grid_.spacing(0), grid_.spacing(1));
    double best = std::numeric_limits<double>::infinity();
    auto visit = [&](long i, long j) {
      if (i < 0 || j < 0 || i >= n || j >= n) return;
      const std::size_t flat = grid_.flatten(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!omega_[flat]) best = std::min(best, distance(grid_.node(flat), p));
    };
    for (long k = 0; k <= n; ++k) {
      if (static_cast<double>(k - 1) * hmin > best) break;
      if (k == 0) {
        visit(ci, cj);
        continue;
      }
      for (long d = -k; d <= k; ++d) {
        visit(ci + d, cj - k);
        visit(ci + d, cj + k);
      }
      for (long d = -k + 1; d <= k - 1; ++d) {
        visit(ci - k, cj + d);
        visit(ci + k, cj + d);
      }
    }
    return best;
  }

  const Grid& grid_;
  const NodeMask& omega_;
  std::vector<long> prev_, next_;
};

// Count of Omega nodes in index boxes via a summed-area table.
class MaskCounter {
 public:
  MaskCounter(const Grid& grid, const NodeMask& omega) : n_(grid.resolution()), dim_(grid.dim()) {
    const std::size_t rows = dim_ == 2 ? n_ : 1;
    sat_.assign((n_ + 1) * (rows + 1), 0);
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t i = 0; i < n_; ++i)
        at(i + 1, j + 1) = at(i, j + 1) + at(i + 1, j) - at(i, j) + omega[j * n_ + i];
  }
  // nodes with i in [i0, i1), j in [j0, j1)
  long count(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const {
    if (i0 >= i1 || j0 >= j1) return 0;
    return at(i1, j1) - at(i0, j1) - at(i1, j0) + at(i0, j0);
  }

 private:
  long& at(std::size_t i, std::size_t j) { return sat_[j * (n_ + 1) + i]; }
  long at(std::size_t i, std::size_t j) const { return sat_[j * (n_ + 1) + i]; }
  std::size_t n_;
  int dim_;
  std::vector<long> sat_;
};

// Node index range [first, last) whose coordinate lies in [lo, hi).
void half_open_range(const Grid& g, int a, double lo, double hi, std::size_t& first,
                     std::size_t& last) {
  const double x0 = g.axis(a).lo, h = g.spacing(a);
  const long n = static_cast<long>(g.resolution());
  long f = static_cast<long>(std::ceil((lo - x0) / h - 0.5));
  long l = static_cast<long>(std::ceil((hi - x0) / h - 0.5));
  f = std::clamp(f, 0L, n);
  l = std::clamp(l, 0L, n);
  while (f > 0 && g.coord(a, static_cast<std::size_t>(f - 1)) >= lo) --f;
  while (f < n && g.coord(a, static_cast<std::size_t>(f)) < lo) ++f;
  while (l > 0 && g.coord(a, static_cast<std::size_t>(l - 1)) >= hi) --l;
  while (l < n && g.coord(a, static_cast<std::size_t>(l)) < hi) ++l;
  first = static_cast<std::size_t>(f);
  last = static_cast<std::size_t>(std::max(f, l));
}

}  // namespace

WhitneyCover whitney(const Grid& grid, const NodeMask& omega) {
  require(omega.size() == grid.size(), "mask size must equal node count");
  WhitneyCover cover;
  cover.omega = omega;
  const std::size_t n = grid.resolution();
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!omega[i]) continue;
    any = true;
    const auto ij = grid.unflatten(i);
    const bool edge = ij[0] == 0 || ij[0] == n - 1 ||
                      (grid.dim() == 2 && (ij[1] == 0 || ij[1] == n - 1));
    if (edge) fail(ErrorKind::Precondition, "level set not compactly contained");
  }
  if (!any) return cover;

  const ComplementDistance dist(grid, omega);
  const MaskCounter counter(grid, omega);
  const int dim = grid.dim();
  double side0 = grid.axis(0).width();
  if (dim == 2) side0 = std::max(side0, grid.axis(1).width());
  const double circ = dim == 1 ? 0.5 : std::sqrt(2.0) / 2.0;

  struct Cube {
    int level;
    long a, b;
  };
  std::vector<Cube> stack{{0, 0, 0}};
  while (!stack.empty()) {
    const Cube c = stack.back();
    stack.pop_back();
    const double side = std::ldexp(side0, -c.level);
    const double lo0 = grid.axis(0).lo + static_cast<double>(c.a) * side;
    const double lo1 = dim == 2 ? grid.axis(1).lo + static_cast<double>(c.b) * side : 0.0;
    std::size_t i0, i1, j0 = 0, j1 = 1;
    half_open_range(grid, 0, lo0, lo0 + side, i0, i1);
    if (dim == 2) half_open_range(grid, 1, lo1, lo1 + side, j0, j1);
    if (counter.count(i0, i1, j0, j1) == 0) continue;
    const Point centre{lo0 + side / 2, dim == 2 ? lo1 + side / 2 : 0.0};
    const double r = side * circ;
    if (dist(centre) > kClearFactor * r) {
      cover.balls.push_back({centre, r});
      continue;
    }
    if (c.level >= 60) fail(ErrorKind::Invariant, "whitney refinement did not terminate");
    for (long db = 0; db < (dim == 2 ? 2 : 1); ++db)
      for (long da = 0; da < 2; ++da)
        stack.push_back({c.level + 1, 2 * c.a + da, dim == 2 ? 2 * c.b + db : 0});
  }
  // deterministic order: larger balls first, then by centre
  std::sort(cover.balls.begin(), cover.balls.end(), [](const Ball& x, const Ball& y) {
    if (x.radius != y.radius) return x.radius > y.radius;
    if (x.center[1] != y.center[1]) return x.center[1] < y.center[1];
    return x.center[0] < y.center[0];
  });
  const WhitneyCheck check = verify_whitney(grid, cover);
  if (!check.ok()) fail(ErrorKind::Invariant, "whitney cover failed its property check");
  cover.overlap = check.overlap;
  return cover;
}

WhitneyCheck verify_whitney(const Grid& grid, const WhitneyCover& cover) {
  WhitneyCheck chk;
  const auto& omega = cover.omega;
  // (i) and (iii)-clear and (iv), by node enumeration
  std::vector<std::uint32_t> covered(grid.size(), 0), depth(grid.size(), 0);
  chk.clear = true;
  for (const Ball& b : cover.balls) {
    for (std::size_t i : nodes_in_ball(grid, b)) covered[i] = 1;
    for (std::size_t i : nodes_in_ball(grid, b.dilate(kClearFactor))) {
      if (!omega[i]) chk.clear = false;
      ++depth[i];
    }
  }
  chk.covers = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (omega[i] && !covered[i]) chk.covers = false;
    if (omega[i]) chk.overlap = std::max<std::size_t>(chk.overlap, depth[i]);
  }
  // (iii)-reach: some Omega^c node within 54 r
  chk.reaches = true;
  for (const Ball& b : cover.balls) {
    bool hit = false;
    for (std::size_t i : nodes_in_ball(grid, b.dilate(kReachFactor)))
      if (!omega[i]) {
        hit = true;
        break;
      }
    if (!hit) chk.reaches = false;
  }
  // (ii): |x_i - x_j| >= (r_i + r_j) / 4; sweep along axis 0
  std::vector<std::size_t> order(cover.balls.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cover.balls[a].center[0] < cover.balls[b].center[0];
  });
  double r_max = 0.0;
  for (const Ball& b : cover.balls) r_max = std::max(r_max, b.radius);
  chk.disjoint = true;
  for (std::size_t p = 0; p < order.size() && chk.disjoint; ++p) {
    const Ball& bi = cover.balls[order[p]];
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const Ball& bj = cover.balls[order[q]];
      if (bj.center[0] - bi.center[0] >= (bi.radius + r_max) / kInnerFactor) break;
      if (distance(bi.center, bj.center) < (bi.radius + bj.radius) / kInnerFactor) {
        chk.disjoint = false;
        break;
      }
    }
  }
  return chk;
}

double cutoff(double radius) {
  if (radius <= 1.0) return 1.0;
  if (radius >= 2.0) return 0.0;
  const double a = std::exp(-1.0 / (2.0 - radius));
  const double b = std::exp(-1.0 / (radius - 1.0));
  return a / (a + b);
}

PartitionOfUnity partition_of_unity(const Grid& grid, const WhitneyCover& cover) {
  require(!cover.balls.empty(), "partition of unity needs a nonempty cover");
  PartitionOfUnity pou;
  std::vector<double> total(grid.size(), 0.0);
  std::vector<SparseField> theta(cover.balls.size());
  for (std::size_t j = 0; j < cover.balls.size(); ++j) {
    const Ball& b = cover.balls[j];
    for (std::size_t i : nodes_in_ball(grid, b.dilate(2.0))) {
      if (!cover.omega[i]) continue;
      const double v = cutoff(distance(grid.node(i), b.center) / b.radius);
      if (v == 0.0) continue;
      theta[j].index.push_back(i);
      theta[j].value.push_back(v);
      total[i] += v;
    }
  }
  pou.zetas.resize(theta.size());
  std::vector<double> sum(grid.size(), 0.0);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    SparseField& z = pou.zetas[j];
    z.index = theta[j].index;
    z.value.resize(z.index.size());
    for (std::size_t k = 0; k < z.index.size(); ++k) {
      z.value[k] = theta[j].value[k] / total[z.index[k]];
      sum[z.index[k]] += z.value[k];
    }
    const Ball& b = cover.balls[j];
    for (std::size_t k = 0; k < z.index.size(); ++k)
      if (b.contains(grid.node(z.index[k]))) pou.min_inner = std::min(pou.min_inner, z.value[k]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    pou.max_sum_error =
        std::max(pou.max_sum_error, std::abs(sum[i] - (cover.omega[i] ? 1.0 : 0.0)));
  return pou;
}

// ---------------------------------------------------------------- projection

namespace {

double centred_monomial(const Point& y, const MultiIndex& a) {
  double v = 1.0;
  for (int k = 0; k < a[0]; ++k) v *= y[0];
  for (int k = 0; k < a[1]; ++k) v *= y[1];
  return v;
}

}  // namespace

double Polynomial::operator()(const Point& x) const {
  // same graded order as multi_indices
  const double y0 = (x[0] - center[0]) / scale;
  double v = 0.0;
  if (dim == 1) {
    for (int d = degree; d >= 0; --d) v = v * y0 + coef[static_cast<std::size_t>(d)];
    return v;
  }
  const double y1 = (x[1] - center[1]) / scale;
  std::array<double, kMaxMomentOrder + 1> p0{}, p1{};
  p0[0] = p1[0] = 1.0;
  for (int d = 1; d <= degree; ++d) {
    p0[static_cast<std::size_t>(d)] = p0[static_cast<std::size_t>(d - 1)] * y0;
    p1[static_cast<std::size_t>(d)] = p1[static_cast<std::size_t>(d - 1)] * y1;
  }
  std::size_t k = 0;
  for (int d = 0; d <= degree; ++d)
    for (int a = d; a >= 0; --a, ++k)
      v += coef[k] * p0[static_cast<std::size_t>(a)] * p1[static_cast<std::size_t>(d - a)];
  return v;
}

Projection poly_project(const Grid& grid, const SparseField& f, const SparseField& zeta,
                        const Ball& ball, int s) {
  require(s >= 0 && s <= kMaxMomentOrder, "projection degree out of range");
  require(f.index.size() == zeta.index.size(), "f must be sampled on the support of zeta");
  const int dim = grid.dim();
  const auto alphas = multi_indices(dim, s);
  const std::size_t K = alphas.size(), N = zeta.index.size();
  double mass = 0.0;
  for (double z : zeta.value) mass += z;
  if (!(mass > 0.0)) fail(ErrorKind::Precondition, "degenerate weight");

  std::vector<Point> ys(N);
  std::vector<double> sw(N);
  for (std::size_t k = 0; k < N; ++k) {
    const Point x = grid.node(zeta.index[k]);
    ys[k] = {(x[0] - ball.center[0]) / ball.radius, (x[1] - ball.center[1]) / ball.radius};
    sw[k] = std::sqrt(zeta.value[k]);
  }
  // weighted modified Gram-Schmidt with re-orthogonalisation
  std::vector<std::vector<double>> q, T;
  for (std::size_t a = 0; a < K; ++a) {
    std::vector<double> v(N), t(K, 0.0);
    t[a] = 1.0;
    double norm0 = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      v[k] = sw[k] * centred_monomial(ys[k], alphas[a]);
      norm0 += v[k] * v[k];
    }
    norm0 = std::sqrt(norm0);
    if (norm0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t b = 0; b < q.size(); ++b) {
        double d = 0.0;
        for (std::size_t k = 0; k < N; ++k) d += q[b][k] * v[k];
        for (std::size_t k = 0; k < N; ++k) v[k] -= d * q[b][k];
        for (std::size_t c = 0; c < K; ++c) t[c] -= d * T[b][c];
      }
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv <= 1e-10 * norm0) continue;  // numerically dependent on this support
    for (double& x : v) x /= nv;
    for (double& x : t) x /= nv;
    q.push_back(std::move(v));
    T.push_back(std::move(t));
  }
  Projection out;
  out.rank = q.size();
  out.poly = Polynomial{ball.center, ball.radius, dim, s, std::vector<double>(K, 0.0)};
  for (std::size_t b = 0; b < q.size(); ++b) {
    double c = 0.0;
    for (std::size_t k = 0; k < N; ++k) c += sw[k] * f.value[k] * q[b][k];
    for (std::size_t a = 0; a < K; ++a) out.poly.coef[a] += c * T[b][a];
  }
  // residual orthogonality against every monomial
  for (std::size_t a = 0; a < K; ++a) {
    double r = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      const Point x = grid.node(zeta.index[k]);
      r += zeta.value[k] * (f.value[k] - out.poly(x)) * centred_monomial(ys[k], alphas[a]);
    }
    out.max_residual = std::max(out.max_residual, std::abs(r / mass));
  }
  return out;
}

Projection poly_project(const GridFunction& f, const SparseField& zeta, const Ball& ball, int s) {
  SparseField fs;
  fs.index = zeta.index;
  fs.value.resize(zeta.index.size());
  for (std::size_t k = 0; k < zeta.index.size(); ++k) fs.value[k] = f[zeta.index[k]];
  return poly_project(f.grid(), fs, zeta, ball, s);
}

// ---------------------------------------------------------------- decomposition

double moment_tolerance(const SparseField& piece, int dim, const Ball& ball, double f_scale) {
  return 1e-6 * std::max(piece.max_abs(), 1e-8 * f_scale) * ball_volume(dim, ball.radius);
}

double centred_moment_residual(const Grid& grid, const SparseField& piece, const Ball& ball,
                               int s) {
  double worst = 0.0;
  for (const MultiIndex& a : multi_indices(grid.dim(), s))
    worst = std::max(worst, std::abs(centered_moment(grid, piece, a, ball.center, ball.radius)));
  return worst;
}

CzDecomposition cz_decompose(const GridFunction& f, double lambda, int s,
                             const TestDictionary& dict, const CzOptions& options) {
  return cz_decompose(f, grand_maximal(f, dict), lambda, s, dict, options);
}

CzDecomposition cz_decompose(const GridFunction& f, const GridFunction& fstar, double lambda, int s,
                             const TestDictionary& dict, const CzOptions& options) {
  require(lambda > 0.0, "height must be positive");
  require(s >= 0, "degree must be nonnegative");
  require(f.grid() == fstar.grid(), "grid mismatch");
  const Grid& grid = f.grid();
  CzDecomposition out{f, {}, lambda, s, false, {}, {}, {}, 0.0, 0.0};
  if (lambda >= fstar.max_abs()) {
    out.trivial = true;
    return out;
  }
  NodeMask omega(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) omega[i] = fstar[i] > lambda ? 1 : 0;
  out.cover = whitney(grid, omega);
  out.pou = partition_of_unity(grid, out.cover);

  GridFunction sum_b(grid);
  const double f_scale = f.max_abs();
  out.parts.reserve(out.cover.balls.size());
  for (std::size_t j = 0; j < out.cover.balls.size(); ++j) {
    const Ball& ball = out.cover.balls[j];
    const SparseField& zeta = out.pou.zetas[j];
    CzPart part{ball, {}, zeta, {}, 0.0};
    part.poly = poly_project(f, zeta, ball, s).poly;
    part.b.index = zeta.index;
    part.b.value.resize(zeta.index.size());
    for (std::size_t k = 0; k < zeta.index.size(); ++k) {
      const std::size_t i = zeta.index[k];
      part.b.value[k] = (f[i] - part.poly(grid.node(i))) * zeta.value[k];
    }
    const Ball support = ball.dilate(2.0);
    part.moment_residual = centred_moment_residual(grid, part.b, support, s);
    const double tol = moment_tolerance(part.b, grid.dim(), support, f_scale);
    if (part.moment_residual > 0.0)
      out.moment_tolerance_ratio =
          std::max(out.moment_tolerance_ratio,
                   tol > 0.0 ? part.moment_residual / tol : std::numeric_limits<double>::infinity());
    accumulate(out.g, part.b, -1.0);
    accumulate(sum_b, part.b);
    out.parts.push_back(std::move(part));
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.reconstruction_residual =
        std::max(out.reconstruction_residual, std::abs(f[i] - out.g[i] - sum_b[i]));

  if (!options.diagnostics) return out;
  CzDiagnostics& d = out.diagnostics;
  d.computed = true;
  const int n = grid.dim();
  d.m_s = std::min(s + 1, dict.m + 1);
  const double decay = n + d.m_s;
  for (const CzPart& part : out.parts) {
    for (std::size_t k = 0; k < part.zeta.index.size(); ++k) {
      const Point x = grid.node(part.zeta.index[k]);
      d.c2 = std::max(d.c2, std::abs(part.poly(x) * part.zeta.value[k]) / lambda);
    }
    const SparseField bstar = grand_maximal(grid, part.b, dict);
    for (std::size_t k = 0; k < bstar.index.size(); ++k) {
      const std::size_t i = bstar.index[k];
      const double dist = distance(grid.node(i), part.ball.center);
      if (dist <= 9.0 * part.ball.radius) {
        if (fstar[i] > 0.0) d.c3 = std::max(d.c3, bstar.value[k] / fstar[i]);
      } else {
        d.c4 = std::max(d.c4, bstar.value[k] * std::pow(dist / part.ball.radius, decay) / lambda);
      }
    }
  }
  if (options.growth != nullptr) {
    const GridFunction sstar = grand_maximal(sum_b, dict);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Point x = grid.node(i);
      if (sstar[i] > 0.0) num += (*options.growth)(x, sstar[i]);
      if (omega[i]) den += (*options.growth)(x, fstar[i]);
    }
    d.aggregate = den > 0.0 ? num / den : 0.0;
  }
  // good-part bound, on a node subsample when the ball sum is expensive
  const GridFunction gstar = grand_maximal(out.g, dict);
  const double work = static_cast<double>(grid.size()) * static_cast<double>(out.parts.size());
  const auto stride = static_cast<std::size_t>(std::max(1.0, std::ceil(work / 2e8)));
  for (std::size_t i = 0; i < grid.size(); i += stride) {
    const Point x = grid.node(i);
    const double excess = gstar[i] - (omega[i] ? 0.0 : fstar[i]);
    if (excess <= 0.0) continue;
    double sum = 0.0;
    for (const CzPart& part : out.parts) {
      const double r = part.ball.radius;
      const double u = r / (distance(x, part.ball.center) + r);
      double term = 1.0;
      for (int e = 0; e < n + d.m_s; ++e) term *= u;
      sum += term;
    }
    d.good_part = std::max(d.good_part, excess / (lambda * sum));
  }
  return out;
}

}  // namespace mohardy
