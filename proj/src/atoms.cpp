#include "mohardy/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "mohardy/error.hpp"

namespace mohardy {

namespace {

bool touches_edge(const GridFunction& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.resolution();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (f[i] == 0.0) continue;
    const auto ij = g.unflatten(i);
    if (ij[0] == 0 || ij[0] == n - 1) return true;
    if (g.dim() == 2 && (ij[1] == 0 || ij[1] == n - 1)) return true;
  }
  return false;
}

// Smallest k with 2^k >= v, and largest k with 2^k < v.
int ceil_log2(double v) {
  int k = static_cast<int>(std::ceil(std::log2(v)));
  while (std::ldexp(1.0, k) < v) ++k;
  while (std::ldexp(1.0, k - 1) >= v) --k;
  return k;
}
int below_log2(double v) { return ceil_log2(v) - 1; }

struct Contribution {
  std::size_t piece;
  std::size_t node;
  double value;
};

// Node -> (ball index, zeta value) lists for one level.
struct ZetaIndex {
  std::vector<std::size_t> start;
  std::vector<std::pair<std::size_t, double>> entries;

  ZetaIndex(std::size_t nodes, const std::vector<CzPart>& parts) : start(nodes + 1, 0) {
    for (const CzPart& p : parts)
      for (std::size_t i : p.zeta.index) ++start[i + 1];
    for (std::size_t i = 0; i < nodes; ++i) start[i + 1] += start[i];
    entries.resize(start.back());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t j = 0; j < parts.size(); ++j)
      for (std::size_t k = 0; k < parts[j].zeta.size(); ++k)
        entries[fill[parts[j].zeta.index[k]]++] = {j, parts[j].zeta.value[k]};
  }
};

// h_i^k for every ball i of `cur`, given the decomposition one level up.
void assemble_level(int k, const GridFunction& f, const CzDecomposition& cur,
                    const CzDecomposition& nxt, int s, double f_scale, AtomicDecomposition& out,
                    std::vector<double>& cross_sum) {
  const Grid& grid = f.grid();
  std::vector<Contribution> contrib;
  for (std::size_t i = 0; i < cur.parts.size(); ++i)
    for (std::size_t q = 0; q < cur.parts[i].b.size(); ++q)
      contrib.push_back({i, cur.parts[i].b.index[q], cur.parts[i].b.value[q]});

  const ZetaIndex lower(grid.size(), cur.parts);
  const double next_height = std::ldexp(1.0, k + 1);
  std::vector<std::size_t> near;
  for (const CzPart& pj : nxt.parts) {
    const auto& S = pj.zeta.index;
    std::vector<double> residual(S.size());
    for (std::size_t q = 0; q < S.size(); ++q) residual[q] = f[S[q]] - pj.poly(grid.node(S[q]));
    near.clear();
    for (std::size_t node : S)
      for (std::size_t e = lower.start[node]; e < lower.start[node + 1]; ++e)
        near.push_back(lower.entries[e].first);
    std::sort(near.begin(), near.end());
    near.erase(std::unique(near.begin(), near.end()), near.end());
    for (std::size_t i : near) {
      SparseField u{S, std::vector<double>(S.size(), 0.0)};
      for (std::size_t q = 0; q < S.size(); ++q)
        for (std::size_t e = lower.start[S[q]]; e < lower.start[S[q] + 1]; ++e)
          if (lower.entries[e].first == i) u.value[q] = residual[q] * lower.entries[e].second;
      const Polynomial pij = poly_project(grid, u, pj.zeta, pj.ball, s).poly;
      for (std::size_t q = 0; q < S.size(); ++q) {
        const double p = pij(grid.node(S[q]));
        const double z = pj.zeta.value[q];
        out.cross_constant = std::max(out.cross_constant, std::abs(p * z) / next_height);
        cross_sum[S[q]] += p * z;
        contrib.push_back({i, S[q], -(u.value[q] - p) * z});
      }
    }
  }

  std::sort(contrib.begin(), contrib.end(), [](const Contribution& a, const Contribution& b) {
    return std::tie(a.piece, a.node) < std::tie(b.piece, b.node);
  });
  std::vector<AtomPiece> pieces(cur.parts.size());
  for (std::size_t c = 0; c < contrib.size();) {
    const std::size_t i = contrib[c].piece, node = contrib[c].node;
    double v = 0.0;
    for (; c < contrib.size() && contrib[c].piece == i && contrib[c].node == node; ++c)
      v += contrib[c].value;
    if (v == 0.0) continue;
    pieces[i].h.index.push_back(node);
    pieces[i].h.value.push_back(v);
  }
  const double height = std::ldexp(1.0, k);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    AtomPiece& p = pieces[i];
    if (p.h.empty()) continue;
    p.ball = cur.parts[i].ball.dilate(kClearFactor);
    p.level = k;
    p.index = i + 1;
    p.sup = p.h.max_abs();
    for (std::size_t node : p.h.index)
      if (distance(grid.node(node), p.ball.center) > p.ball.radius * (1 + 1e-12))
        p.inside_ball = false;
    out.supports_ok = out.supports_ok && p.inside_ball;
    p.moment_residual = centred_moment_residual(grid, p.h, p.ball, s);
    const double tol = moment_tolerance(p.h, grid.dim(), p.ball, f_scale);
    out.moment_tolerance_ratio = std::max(out.moment_tolerance_ratio, p.moment_residual / tol);
    out.size_constant = std::max(out.size_constant, p.sup / height);
    out.pieces.push_back(std::move(p));
  }
}

}  // namespace

AtomicDecomposition multilevel_decompose(const GridFunction& f, int s, const TestDictionary& dict,
                                         const MultilevelOptions& options) {
  return multilevel_decompose(f, grand_maximal(f, dict), s, dict, options);
}

AtomicDecomposition multilevel_decompose(const GridFunction& f, const GridFunction& fstar, int s,
                                         const TestDictionary& dict,
                                         const MultilevelOptions& options) {
  require(s >= 0, "degree must be nonnegative");
  require(f.grid() == fstar.grid(), "grid mismatch");
  require(options.floor_ratio > 0.0 && options.floor_ratio < 1.0, "floor ratio must lie in (0, 1)");
  const Grid& grid = f.grid();
  AtomicDecomposition out{{}, GridFunction(grid), 0, 0, {}, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, true};
  if (f.is_zero()) return out;
  if (touches_edge(f)) fail(ErrorKind::Precondition, "support not compactly contained");
  const double fmax = fstar.max_abs();
  if (fmax == 0.0) fail(ErrorKind::Invariant, "maximal function vanishes for a nonzero input");
  double fmin = fmax;
  for (double v : fstar.values())
    if (v > 0.0) fmin = std::min(fmin, v);

  out.k_max = ceil_log2(fmax);
  out.k_min = std::max(below_log2(fmin), static_cast<int>(std::floor(std::log2(options.floor_ratio * fmax))));
  const double f_scale = f.max_abs();

  CzDecomposition cur = cz_decompose(f, fstar, std::ldexp(1.0, out.k_min), s, dict);
  out.base = cur.g;
  std::vector<double> cross_sum(grid.size(), 0.0);
  for (int k = out.k_min; k < out.k_max; ++k) {
    CzDecomposition nxt = cz_decompose(f, fstar, std::ldexp(1.0, k + 1), s, dict);
    LevelReport rep{k, cur.parts.size(), false};
    if (!cur.trivial && !nxt.trivial && cur.cover.omega == nxt.cover.omega) {
      rep.skipped = true;
    } else {
      assemble_level(k, f, cur, nxt, s, f_scale, out, cross_sum);
    }
    out.levels.push_back(rep);
    cur = std::move(nxt);
  }
  for (double v : cross_sum) out.cross_sum_residual = std::max(out.cross_sum_residual, std::abs(v));

  if (!out.base.is_zero()) {
    AtomPiece closing;
    closing.h = sparsify(out.base);
    closing.level = out.k_min;
    closing.closing = true;
    closing.sup = closing.h.max_abs();
    Point lo = grid.node(closing.h.index.front()), hi = lo;
    for (std::size_t i : closing.h.index) {
      const Point x = grid.node(i);
      for (std::size_t a = 0; a < 2; ++a) {
        lo[a] = std::min(lo[a], x[a]);
        hi[a] = std::max(hi[a], x[a]);
      }
    }
    const Point mid{(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2};
    double radius = grid.cell_width() / 2;
    for (std::size_t i : closing.h.index) radius = std::max(radius, distance(grid.node(i), mid));
    closing.ball = Ball{mid, radius};
    closing.moment_residual = centred_moment_residual(grid, closing.h, closing.ball, s);
    out.closing_moment_ratio =
        closing.moment_residual / moment_tolerance(closing.h, grid.dim(), closing.ball, f_scale);
    out.size_constant = std::max(out.size_constant, closing.sup / std::ldexp(1.0, out.k_min));
    out.pieces.insert(out.pieces.begin(), std::move(closing));
  }

  GridFunction rebuilt(grid);
  for (const AtomPiece& p : out.pieces) accumulate(rebuilt, p.h);
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.reconstruction_residual = std::max(out.reconstruction_residual, std::abs(f[i] - rebuilt[i]));

  if (options.growth != nullptr) {
    out.lambda_inf = pieces_lambda(out.pieces, *options.growth, grid);
    out.source_norm = hphi_norm(f, *options.growth, dict, options.m_required);
  }
  return out;
}

double pieces_lambda(const std::vector<AtomPiece>& pieces, const GrowthFunction& gf,
                     const Grid& grid) {
  std::vector<BallTerm> terms;
  terms.reserve(pieces.size());
  for (const AtomPiece& p : pieces) terms.push_back({p.ball, p.sup});
  return lambda_q_terms(terms, gf, grid).norm;
}

LevelSetSum level_set_sum(const GridFunction& fstar, const GrowthFunction& gf, double lambda) {
  require(lambda > 0.0, "lambda must be positive");
  const Grid& grid = fstar.grid();
  const double vol = grid.cell_volume();
  LevelSetSum out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = fstar[i];
    if (!(v > 0.0)) continue;
    const Point x = grid.node(i);
    out.rhs += gf(x, v / lambda) * vol;
    double acc = 0.0;
    for (int k = below_log2(v), steps = 0; steps < 4000; --k, ++steps) {
      const double term = gf(x, std::ldexp(1.0, k) / lambda);
      acc += term;
      if (term <= 1e-17 * acc) break;
    }
    out.lhs += acc * vol;
  }
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

// ---------------------------------------------------------------- certificates

namespace {

bool support_within(const GridFunction& a, const Ball& ball) {
  const Grid& g = a.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (a[i] != 0.0 && distance(g.node(i), ball.center) > ball.radius + g.cell_diameter())
      return false;
  return true;
}

void fill_moments(AtomCertificate& c, const GridFunction& a, int s) {
  const Grid& g = a.grid();
  c.moment_tolerance = 1e-6 * a.max_abs() * ball_volume(g.dim(), c.ball.radius);
  c.moments = true;
  for (const MultiIndex& al : multi_indices(g.dim(), s)) {
    const double m = centered_moment(a, al, c.ball.center, c.ball.radius);
    c.moment_residuals.push_back(m);
    if (std::abs(m) > c.moment_tolerance) c.moments = false;
  }
}

}  // namespace

AtomCertificate certify_atom(const GridFunction& a, const Ball& ball, const GrowthFunction& gf,
                             double q, int s, const std::vector<double>& t_grid) {
  AtomCertificate c;
  c.ball = ball;
  c.q = q;
  c.support = support_within(a, ball);
  c.bound = 1.0 / chi_ball_norm(gf, a.grid(), ball);
  if (c.support) {
    c.measured_norm = lq_phi_ball_norm(a, gf, ball, q, t_grid).norm;
    c.size = c.measured_norm <= c.bound * (1 + kCertifyRelTol);
  } else {
    c.measured_norm = std::numeric_limits<double>::quiet_NaN();
  }
  fill_moments(c, a, s);
  return c;
}

double log_atom_bound(int dim, const Ball& ball) {
  const double vol = ball_volume(dim, ball.radius);
  return (std::log(std::numbers::e + 1.0 / vol) +
          std::log(std::numbers::e + norm(ball.center) + ball.radius)) /
         vol;
}

AtomCertificate certify_log_atom(const GridFunction& a, const Ball& ball) {
  AtomCertificate c;
  c.ball = ball;
  c.support = support_within(a, ball);
  c.bound = log_atom_bound(a.grid().dim(), ball);
  c.measured_norm = a.max_abs();
  c.size = c.measured_norm <= c.bound * (1 + kCertifyRelTol);
  fill_moments(c, a, 0);
  return c;
}

// ---------------------------------------------------------------- finite decomposition

FiniteDecomposition finite_decompose(const GridFunction& f, const Ball& ball,
                                     const GrowthFunction& gf, double q, int s,
                                     const TestDictionary& dict, const FiniteOptions& options) {
  require(q > 1.0, "q must exceed 1");
  require(options.epsilon > 0.0, "epsilon must be positive");
  require(support_within(f, ball), "not supported in ball");
  const Grid& grid = f.grid();
  FiniteDecomposition out{.g = GridFunction(grid), .g_ball = ball};
  if (f.is_zero()) return out;

  out.normalization = hphi_norm(f, gf, dict, options.multilevel.m_required);
  require(out.normalization > 0.0, "maximal function vanishes");
  const GridFunction fn = (1.0 / out.normalization) * f;
  const GridFunction fstar = grand_maximal(fn, dict);
  MultilevelOptions mopt = options.multilevel;
  mopt.growth = nullptr;
  const AtomicDecomposition dec = multilevel_decompose(fn, fstar, s, dict, mopt);

  // cut level: f* outside B(x0, 2r) stays below 2^{k'+1}
  const double chi = chi_ball_norm(gf, grid, ball);
  double outside = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (distance(grid.node(i), ball.center) > 2.0 * ball.radius) outside = std::max(outside, fstar[i]);
  out.c_tilde = outside * chi;
  out.k_prime = outside > 0.0 ? below_log2(outside) : std::numeric_limits<int>::min() / 2;

  std::vector<const AtomPiece*> tail;
  for (const AtomPiece& p : dec.pieces) {
    if (p.closing || p.level <= out.k_prime)
      accumulate(out.g, p.h);
    else
      tail.push_back(&p);
  }
  double reach = 2.0 * ball.radius;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (out.g[i] != 0.0) reach = std::max(reach, distance(grid.node(i), ball.center));
  out.g_ball = Ball{ball.center, reach};
  out.g_multiple = out.g.max_abs() * chi_ball_norm(gf, grid, out.g_ball);
  if (out.g_multiple > 0.0) {
    out.g_certificate =
        certify_atom((1.0 / out.g_multiple) * out.g, out.g_ball, gf, kInfinity, s, options.t_grid);
  }

  const Ball wide = ball.dilate(2.0);
  auto rank = [](const AtomPiece& p) {
    return static_cast<long>(p.index) + std::labs(static_cast<long>(p.level));
  };
  // L^q_phi(2B) norms of the tail pieces with shared denominators phi(2B, t)
  const auto& ts = options.t_grid;
  std::vector<double> denom(ts.size());
  for (std::size_t t = 0; t < ts.size(); ++t) denom[t] = phi_ball_mass(gf, grid, wide, ts[t]);
  std::vector<double> norms;
  for (const AtomPiece* p : tail) {
    if (std::isinf(q)) {
      norms.push_back(p->sup);
      continue;
    }
    double best = 0.0;
    for (std::size_t t = 0; t < ts.size(); ++t) {
      double num = 0.0;
      for (std::size_t k = 0; k < p->h.size(); ++k)
        num += std::pow(std::abs(p->h.value[k]), q) * gf(grid.node(p->h.index[k]), ts[t]);
      best = std::max(best, num * grid.cell_volume() / denom[t]);
    }
    norms.push_back(std::pow(best, 1.0 / q));
  }
  auto bound_at = [&](long K) {
    double sum = 0.0;
    for (std::size_t j = 0; j < tail.size(); ++j)
      if (rank(*tail[j]) > K) sum += norms[j];
    return sum;
  };
  long K = 1;
  for (;;) {
    out.remainder_bound = bound_at(K);
    out.decay.emplace_back(static_cast<int>(K), out.remainder_bound);
    if (out.remainder_bound <= options.epsilon) break;
    if (K >= options.K_max) fail(ErrorKind::Precondition, "truncation did not converge");
    K = std::min<long>(2 * K, options.K_max);
  }
  GridFunction rest(grid);
  for (const AtomPiece* p : tail)
    if (rank(*p) > K) accumulate(rest, p->h);
  if (!rest.is_zero()) out.remainder_norm = lq_phi_ball_norm(rest, gf, wide, q, options.t_grid).norm;
  out.K = static_cast<int>(K);

  std::vector<BallTerm> terms;
  if (out.g_multiple > 0.0) terms.push_back({out.g_ball, out.g.max_abs()});
  GridFunction rebuilt = out.g;
  for (const AtomPiece* p : tail) {
    accumulate(rebuilt, p->h);
    if (rank(*p) > K) continue;
    out.pieces.push_back({densify(grid, p->h), p->ball, q});
    terms.push_back({p->ball, lq_phi_ball_norm(grid, p->h, gf, p->ball, q, options.t_grid).norm});
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.reconstruction_residual = std::max(out.reconstruction_residual, std::abs(fn[i] - rebuilt[i]));
  out.quasi_norm = lambda_q_terms(terms, gf, grid).norm;
  return out;
}

Reconstruction reconstruct_and_bound(const Grid& grid, const std::vector<AtomEntry>& entries,
                                     const GrowthFunction& gf, const TestDictionary& dict,
                                     const std::vector<double>& t_grid) {
  Reconstruction out{GridFunction(grid), 0.0};
  if (entries.empty()) return out;
  for (const AtomEntry& e : entries) {
    require(e.b.grid() == grid, "grid mismatch");
    out.f += e.b;
  }
  const double lam = lambda_q(entries, gf, t_grid).norm;
  if (lam > 0.0) out.ratio = hphi_norm(out.f, gf, dict, 0) / lam;
  return out;
}

}  // namespace mohardy
