#include "mohardy/norms.hpp"

#include <algorithm>
#include <cmath>

#include "mohardy/error.hpp"

namespace mohardy {

namespace {

constexpr double kLevelTol = 1e-9;
constexpr double kRelWidth = 1e-12;
constexpr int kMaxIterations = 600;

double mass_on(const GrowthFunction& gf, const Grid& grid, const std::vector<std::size_t>& nodes,
               double t) {
  double sum = 0.0;
  for (std::size_t i : nodes) sum += gf(grid.node(i), t);
  return sum * grid.cell_volume();
}

void require_finite(const GridFunction& f) {
  for (double v : f.values()) require(std::isfinite(v), "function has non-finite samples");
}

}  // namespace

double phi_ball_mass(const GrowthFunction& gf, const Grid& grid, const Ball& ball, double t) {
  const auto nodes = nodes_in_ball(grid, ball);
  require(!nodes.empty(), "empty region");
  if (t == 0.0) return 0.0;
  return mass_on(gf, grid, nodes, t);
}

double modular(const GridFunction& f, const GrowthFunction& gf, double lambda) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) sum += gf(g.node(i), std::abs(f[i]) / lambda);
  return sum * g.cell_volume();
}

NormResult solve_unit_level(const std::function<double(double)>& F, double guess) {
  require(guess > 0.0 && std::isfinite(guess), "bisection needs a positive finite guess");
  NormResult res;
  double lo = guess, hi = guess;
  double f_lo = F(lo), f_hi = f_lo;
  ++res.iterations;
  if (std::abs(f_lo - 1.0) <= kLevelTol) {
    res.norm = guess;
    res.residual = std::abs(f_lo - 1.0);
    return res;
  }
  // F is nonincreasing: F(lo) >= 1 >= F(hi) brackets the level.
  while (f_hi > 1.0) {
    hi *= 2.0;
    f_hi = F(hi);
    if (++res.iterations > kMaxIterations || !std::isfinite(hi))
      fail(ErrorKind::Invariant, "modular bracket did not close from above");
  }
  while (f_lo < 1.0) {
    lo *= 0.5;
    f_lo = F(lo);
    if (++res.iterations > kMaxIterations || lo == 0.0)
      fail(ErrorKind::Invariant, "modular bracket did not close from below");
  }
  double best_gap = std::min(std::abs(f_hi - 1.0), std::abs(f_lo - 1.0));
  double best = std::abs(f_hi - 1.0) <= std::abs(f_lo - 1.0) ? hi : lo;
  while ((hi - lo) > kRelWidth * hi && best_gap > kLevelTol) {
    const double mid = std::sqrt(lo * hi);
    const double f_mid = F(mid);
    if (++res.iterations > kMaxIterations) break;
    if (std::abs(f_mid - 1.0) < best_gap) {
      best_gap = std::abs(f_mid - 1.0);
      best = mid;
    }
    if (f_mid > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  res.norm = best;
  res.residual = best_gap;
  return res;
}

NormResult luxembourg_norm(const GridFunction& f, const GrowthFunction& gf) {
  require_finite(f);
  if (f.is_zero()) return {};
  return solve_unit_level([&](double lambda) { return modular(f, gf, lambda); }, f.max_abs());
}

double chi_ball_norm(const GrowthFunction& gf, const Grid& grid, const Ball& ball) {
  const auto nodes = nodes_in_ball(grid, ball);
  require(!nodes.empty(), "empty region");
  return solve_unit_level([&](double lambda) { return mass_on(gf, grid, nodes, 1.0 / lambda); },
                          1.0)
      .norm;
}

NormResult lq_phi_ball_norm(const Grid& grid, const SparseField& f, const GrowthFunction& gf,
                            const Ball& ball, double q, const std::vector<double>& t_grid) {
  require(q > 1.0, "L^q_phi(B) needs q > 1");
  const auto nodes = nodes_in_ball(grid, ball);
  require(!nodes.empty(), "empty region");
  const double slack = grid.cell_diameter();
  std::vector<std::size_t> outside;  // support nodes in the one-cell band
  std::vector<double> on_ball(nodes.size(), 0.0);
  {
    std::size_t k = 0;
    for (std::size_t j = 0; j < f.index.size(); ++j) {
      if (f.value[j] == 0.0) continue;
      const std::size_t idx = f.index[j];
      while (k < nodes.size() && nodes[k] < idx) ++k;
      if (k < nodes.size() && nodes[k] == idx) {
        on_ball[k] = f.value[j];
      } else {
        if (distance(grid.node(idx), ball.center) > ball.radius + slack)
          fail(ErrorKind::Precondition, "not supported in ball");
        outside.push_back(j);
      }
    }
  }
  NormResult res;
  if (q == kInfinity) {
    for (double v : f.value) res.norm = std::max(res.norm, std::abs(v));
    return res;
  }
  require(!t_grid.empty(), "L^q_phi(B) needs a nonempty t-grid");
  for (double t : t_grid) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double w = gf(grid.node(nodes[k]), t);
      den += w;
      if (on_ball[k] != 0.0) num += std::pow(std::abs(on_ball[k]), q) * w;
    }
    for (std::size_t j : outside)
      num += std::pow(std::abs(f.value[j]), q) * gf(grid.node(f.index[j]), t);
    const double val = std::pow(num / den, 1.0 / q);
    ++res.iterations;
    if (val > res.norm || res.witness_t == 0.0) {
      res.norm = val;
      res.witness_t = t;
    }
  }
  return res;
}

NormResult lq_phi_ball_norm(const GridFunction& f, const GrowthFunction& gf, const Ball& ball,
                            double q, const std::vector<double>& t_grid) {
  require_finite(f);
  return lq_phi_ball_norm(f.grid(), sparsify(f), gf, ball, q, t_grid);
}

NormResult lambda_q_terms(const std::vector<BallTerm>& terms, const GrowthFunction& gf,
                          const Grid& grid) {
  std::vector<std::vector<std::size_t>> nodes;
  std::vector<double> sizes;
  double guess = 0.0;
  for (const BallTerm& term : terms) {
    require(term.size >= 0.0 && std::isfinite(term.size), "atom sizes must be finite");
    if (term.size == 0.0) continue;
    nodes.push_back(nodes_in_ball(grid, term.ball));
    require(!nodes.back().empty(), "empty region");
    sizes.push_back(term.size);
    guess = std::max(guess, term.size);
  }
  if (sizes.empty()) return {};
  auto F = [&](double lambda) {
    double sum = 0.0;
    for (std::size_t j = 0; j < sizes.size(); ++j)
      sum += mass_on(gf, grid, nodes[j], sizes[j] / lambda);
    return sum;
  };
  return solve_unit_level(F, guess);
}

NormResult lambda_q(const std::vector<AtomEntry>& entries, const GrowthFunction& gf,
                    const std::vector<double>& t_grid) {
  if (entries.empty()) return {};
  std::vector<BallTerm> terms;
  terms.reserve(entries.size());
  for (const AtomEntry& e : entries) {
    require(e.b.grid() == entries.front().b.grid(), "atom entries must share one grid");
    terms.push_back({e.ball, lq_phi_ball_norm(e.b, gf, e.ball, e.q, t_grid).norm});
  }
  return lambda_q_terms(terms, gf, entries.front().b.grid());
}

double ball_sum_ratio(const std::vector<BallTerm>& terms, const GrowthFunction& gf,
                      const Grid& grid) {
  const double lam = lambda_q_terms(terms, gf, grid).norm;
  if (lam == 0.0) return 0.0;
  double sum = 0.0;
  for (const BallTerm& t : terms)
    if (t.size > 0.0) sum += t.size * chi_ball_norm(gf, grid, t.ball);
  return sum / lam;
}

}  // namespace mohardy
