#include "mohardy/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mohardy/error.hpp"

namespace mohardy {

double ball_mean(const GridFunction& f, const Ball& ball) {
  const auto nodes = nodes_in_ball(f.grid(), ball);
  require(!nodes.empty(), "empty region");
  double sum = 0.0;
  for (std::size_t i : nodes) sum += f[i];
  return sum / static_cast<double>(nodes.size());
}

double oscillation(const GridFunction& f, const Ball& ball) {
  const auto nodes = nodes_in_ball(f.grid(), ball);
  require(!nodes.empty(), "empty region");
  // shifted by one node value so a constant gives exactly zero
  const double base = f[nodes.front()];
  double sum = 0.0;
  for (std::size_t i : nodes) sum += f[i] - base;
  const double mean = sum / static_cast<double>(nodes.size());
  double osc = 0.0;
  for (std::size_t i : nodes) osc += std::abs(f[i] - base - mean);
  return osc * f.grid().cell_volume();
}

namespace {

template <typename Weight>
BmoReport scan(const GridFunction& f, const BallFamily& balls, Weight weight) {
  require(!balls.empty(), "ball family is empty");
  BmoReport rep;
  rep.family_hash = family_hash(balls);
  rep.witness = balls.front();
  rep.table.reserve(balls.size());
  for (const Ball& b : balls) {
    BallOscillation row{b, oscillation(f, b), weight(b), 0.0};
    row.value = row.weight * row.oscillation;
    if (row.value > rep.norm) {
      rep.norm = row.value;
      rep.witness = b;
    }
    rep.table.push_back(row);
  }
  return rep;
}

}  // namespace

BmoReport bmo_phi_norm(const GridFunction& f, const GrowthFunction& gf, const BallFamily& balls) {
  return scan(f, balls, [&](const Ball& b) { return 1.0 / chi_ball_norm(gf, f.grid(), b); });
}

double log_weight(LogWeight kind, int dim, const Ball& ball) {
  if (kind == LogWeight::Radius)
    return std::abs(std::log(ball.radius)) + std::log(std::numbers::e + norm(ball.center));
  return std::log(std::numbers::e + 1.0 / ball_volume(dim, ball.radius)) +
         std::log(std::numbers::e + norm(ball.center) + ball.radius);
}

BmoReport bmo_log_norm(const GridFunction& f, const BallFamily& balls, LogWeight kind) {
  const int dim = f.grid().dim();
  return scan(f, balls, [&](const Ball& b) {
    return log_weight(kind, dim, b) / ball_volume(dim, b.radius);
  });
}

double log_weight_equivalence(int dim, const BallFamily& balls) {
  double worst = 1.0;
  for (const Ball& b : balls) {
    const double r = log_weight(LogWeight::Radius, dim, b) / log_weight(LogWeight::Volume, dim, b);
    worst = std::max({worst, r, 1.0 / r});
  }
  return worst;
}

double bmo_phi_pair_norm(const GridFunction& f, const GrowthFunction& gf, const BallFamily& balls) {
  require(!balls.empty(), "ball family is empty");
  const Grid& g = f.grid();
  const double vol = g.cell_volume();
  double best = 0.0;
  std::vector<double> v;
  for (const Ball& b : balls) {
    const auto nodes = nodes_in_ball(g, b);
    require(!nodes.empty(), "empty region");
    v.clear();
    for (std::size_t i : nodes) v.push_back(f[i]);
    std::sort(v.begin(), v.end());
    // sum_{x, y} |f(x) - f(y)| from the sorted values
    double pair = 0.0;
    const double n = static_cast<double>(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
      pair += (2.0 * static_cast<double>(k) - n + 1.0) * (v[k] - v.front());
    pair *= 2.0 * vol * vol;
    const double measure = n * vol;
    best = std::max(best, pair / measure / chi_ball_norm(gf, g, b));
  }
  return best;
}

GridFunction truncate(const GridFunction& b, double N) {
  require(N > 0.0, "truncation level must be positive");
  GridFunction out = b;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], -N, N);
  return out;
}

double pairing(const GridFunction& b, const std::vector<AtomEntry>& entries) {
  double sum = 0.0;
  for (const AtomEntry& e : entries) {
    require(e.b.grid() == b.grid(), "grid mismatch");
    for (std::size_t i = 0; i < b.size(); ++i) sum += e.b[i] * b[i];
  }
  return sum * b.grid().cell_volume();
}

MultiplierReport multiplier_check(const GridFunction& g, const std::vector<GridFunction>& corpus,
                                  const BallFamily& balls) {
  require(!corpus.empty(), "corpus is empty");
  MultiplierReport rep;
  const GrowthFunction classical = power_growth(0.0, 1.0, g.grid().dim());
  rep.sup_norm = g.max_abs();
  rep.log_norm = bmo_log_norm(g, balls).norm;
  rep.M = rep.sup_norm + rep.log_norm;
  for (const GridFunction& f : corpus) {
    const double base = bmo_phi_norm(f, classical, balls).norm;
    if (base == 0.0) {
      ++rep.skipped;
      continue;
    }
    GridFunction fg = f;
    for (std::size_t i = 0; i < fg.size(); ++i) fg[i] *= g[i];
    rep.R = std::max(rep.R, bmo_phi_norm(fg, classical, balls).norm / base);
    ++rep.used;
  }
  if (rep.used == 0) fail(ErrorKind::Precondition, "corpus degenerate");
  return rep;
}

GridFunction balanced_pattern(const Grid& grid, const Ball& ball, double height) {
  GridFunction out(grid);
  const auto nodes = nodes_in_ball(grid, ball);
  // split the ball's nodes into two equal halves so the node sum vanishes
  std::vector<std::size_t> order = nodes;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grid.node(a)[0] < grid.node(b)[0] ||
           (grid.node(a)[0] == grid.node(b)[0] && grid.node(a)[1] < grid.node(b)[1]);
  });
  const std::size_t half = order.size() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    out[order[k]] = height;
    out[order[order.size() - 1 - k]] = -height;
  }
  return out;
}

ConversionScan scan_conversion_constant(const Grid& grid, const BallFamily& balls, double lo,
                                        double hi) {
  require(!balls.empty() && lo > 0.0 && hi > lo, "scan needs balls and 0 < lo < hi");
  const GrowthFunction theta = log_theta();
  // certificate data at C = 1; the size clause of C^{-1} a scales with 1/C
  struct Row {
    double theta_ratio;  // ||a_theta||_inf / log bound
    double log_ratio;    // ||a_log||_{L^inf} / theta bound
    bool structural;     // support and moments of both atoms
  };
  std::vector<Row> rows;
  for (const Ball& b : balls) {
    const double theta_bound = 1.0 / chi_ball_norm(theta, grid, b);
    const double log_bound = log_atom_bound(grid.dim(), b);
    const AtomCertificate as_log = certify_log_atom(balanced_pattern(grid, b, theta_bound), b);
    const AtomCertificate as_theta =
        certify_atom(balanced_pattern(grid, b, log_bound), b, theta, kInfinity, 0);
    rows.push_back({as_log.measured_norm / as_log.bound, as_theta.measured_norm / as_theta.bound,
                    as_log.support && as_log.moments && as_theta.support && as_theta.moments});
  }
  auto passes = [&](double C, bool theta_dir, bool log_dir) {
    for (const Row& r : rows) {
      if (!r.structural) return false;
      if (theta_dir && r.theta_ratio / C > 1.0 + kCertifyRelTol) return false;
      if (log_dir && r.log_ratio / C > 1.0 + kCertifyRelTol) return false;
    }
    return true;
  };
  auto bisect = [&](bool theta_dir, bool log_dir, int& iters) {
    if (!passes(hi, theta_dir, log_dir)) return 0.0;
    if (passes(lo, theta_dir, log_dir)) return lo;
    double a = lo, b = hi;
    while (b - a > 1e-9 * b) {
      const double mid = 0.5 * (a + b);
      (passes(mid, theta_dir, log_dir) ? b : a) = mid;
      ++iters;
    }
    return b;
  };
  ConversionScan out;
  int unused = 0;
  out.C = bisect(true, true, out.iterations);
  out.found = out.C > 0.0;
  out.theta_to_log = bisect(true, false, unused);
  out.log_to_theta = bisect(false, true, unused);
  return out;
}

}  // namespace mohardy
