#include "mohardy/growth.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "mohardy/error.hpp"

namespace mohardy {

GrowthFunction::GrowthFunction(std::string name, Evaluator fn,
                               std::optional<DeclaredIndices> declared)
    : name_(std::move(name)), fn_(std::move(fn)), declared_(declared) {
  require(static_cast<bool>(fn_), "growth function needs an evaluator");
}

double GrowthFunction::operator()(const Point& x, double t) const {
  require(t >= 0.0, "negative argument");
  if (t == 0.0) return 0.0;
  return fn_(x, t);
}

GrowthFunction power_growth(double a, double p, int dim) {
  require(p > 0.0, "power growth needs p > 0");
  require(a > -static_cast<double>(dim), "power growth needs a > -n");
  DeclaredIndices d{p, p, a <= 0.0 ? 1.0 : 1.0 + a / static_cast<double>(dim)};
  auto fn = [a, p](const Point& x, double t) {
    const double tp = p == 1.0 ? t : std::pow(t, p);
    return a == 0.0 ? tp : std::pow(norm(x), a) * tp;
  };
  return GrowthFunction("power", fn, d);
}

GrowthFunction log_theta() {
  auto fn = [](const Point& x, double t) {
    return t / (std::log(std::numbers::e + norm(x)) + std::log(std::numbers::e + t));
  };
  return GrowthFunction("log-theta", fn, DeclaredIndices{1.0, 1.0, 1.0});
}

GrowthFunction p_log(double p) {
  require(p > 0.0, "p-log growth needs p > 0");
  auto fn = [p](const Point& x, double t) {
    const double tp = std::pow(t, p);
    return tp / std::pow(std::log(std::numbers::e + norm(x)) + std::log(std::numbers::e + tp), p);
  };
  return GrowthFunction("p-log", fn, DeclaredIndices{p, p, 1.0});
}

double eval_phi(const GrowthFunction& gf, const Point& x, double t) { return gf(x, t); }

std::vector<double> log_t_grid(std::size_t count, double lo, double hi) {
  require(count >= 2 && lo > 0.0 && hi > lo, "t-grid needs count >= 2 and 0 < lo < hi");
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

std::vector<Point> sample_points(int dim) {
  const double radii[] = {1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3};
  std::vector<Point> xs;
  for (double r : radii) {
    if (dim == 1) {
      xs.push_back({r, 0.0});
      xs.push_back({-r, 0.0});
    } else {
      xs.push_back({r, 0.0});
      xs.push_back({0.0, r});
      xs.push_back({r / std::numbers::sqrt2, r / std::numbers::sqrt2});
    }
  }
  return xs;
}

std::vector<double> log_range(double lo, double hi, std::size_t count) {
  return log_t_grid(count, lo, hi);
}

double checked_phi(const GrowthFunction& gf, const Point& x, double t) {
  const double v = gf(x, t);
  if (v == 0.0) fail(ErrorKind::Precondition, "degenerate growth function");
  return v;
}

}  // namespace

TypeEstimate estimate_types(const GrowthFunction& gf, int dim, std::size_t sample_budget) {
  require(dim == 1 || dim == 2, "dimension must be 1 or 2");
  require(sample_budget >= 1000, "type estimation needs a sample budget of at least 1000");
  const auto xs = sample_points(dim);
  const auto ts = log_range(1e-4, 1e4, 17);
  const auto per_side = std::max<std::size_t>(
      8, (sample_budget + 2 * xs.size() * ts.size() - 1) / (2 * xs.size() * ts.size()));
  const auto s_lo = log_range(1e-150, 0.5, per_side);
  const auto s_hi = log_range(2.0, 1e150, per_side);
  const double log_c = std::log(kTypeConstant);

  TypeEstimate est;
  double p_max = std::numeric_limits<double>::infinity();   // lower-type bound
  double p_min = -std::numeric_limits<double>::infinity();  // upper-type bound
  for (const Point& x : xs) {
    for (double t : ts) {
      const double base = checked_phi(gf, x, t);
      if (!std::isnormal(base)) continue;
      const double log_base = std::log(base);
      auto visit = [&](double s, bool lower) {
        const double v = checked_phi(gf, x, s * t);
        ++est.samples;
        if (!std::isnormal(v)) return;  // outside double range: no information
        const double lr = std::log(v) - log_base;
        const double bound = (lr - log_c) / std::log(s);
        Witness w{x, s, t, std::exp(lr)};
        if (lower && bound < p_max) {
          p_max = bound;
          est.lower = w;
        } else if (!lower && bound > p_min) {
          p_min = bound;
          est.upper = w;
        }
      };
      for (double s : s_lo) visit(s, true);
      for (double s : s_hi) visit(s, false);
    }
  }
  const double step = kTypeLatticeStep;
  double i_hat = std::floor(p_max / step + 1e-9) * step;
  i_hat = std::clamp(i_hat, 0.0, 2.0);
  double I_hat = std::ceil(p_min / step - 1e-9) * step;
  I_hat = std::clamp(I_hat, step, 2.0);
  est.i_hat = i_hat;
  est.I_hat = std::max(I_hat, i_hat);
  return est;
}

AqResult check_Aq(const GrowthFunction& gf, double q, const Grid& grid, const BallFamily& balls,
                  const std::vector<double>& t_grid, double cap) {
  require(q >= 1.0, "A_q needs q >= 1");
  require(!balls.empty(), "A_q needs a nonempty ball family");
  require(!t_grid.empty(), "A_q needs a nonempty t-grid");
  AqResult res;
  res.constant = 0.0;
  std::vector<double> w;
  for (const Ball& b : balls) {
    const auto nodes = nodes_in_ball(grid, b);
    if (nodes.empty()) continue;
    w.resize(nodes.size());
    for (double t : t_grid) {
      double sum = 0.0, mn = std::numeric_limits<double>::infinity(), mx = 0.0;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        w[k] = gf(grid.node(nodes[k]), t);
        sum += w[k];
        mn = std::min(mn, w[k]);
        mx = std::max(mx, w[k]);
      }
      if (sum == 0.0) fail(ErrorKind::Precondition, "weight vanishes on ball");
      const double n = static_cast<double>(nodes.size());
      const double mean = sum / n;
      double ratio;
      if (mx == mn) {
        ratio = 1.0;  // constant weight on the ball
      } else if (q == 1.0) {
        ratio = mn > 0.0 ? mean / mn : std::numeric_limits<double>::infinity();
      } else if (mn == 0.0) {
        ratio = std::numeric_limits<double>::infinity();
      } else {
        // factor out the mean so the negative power stays in range
        const double e = -1.0 / (q - 1.0);
        double inv = 0.0;
        for (double v : w) inv += std::pow(v / mean, e);
        ratio = std::pow(inv / n, q - 1.0);
      }
      if (ratio > res.constant || res.witness_t == 0.0) {
        res.constant = ratio;
        res.witness_ball = b;
        res.witness_t = t;
      }
    }
  }
  res.pass = res.constant <= cap;
  return res;
}

int m_index(int dim, double q_hat, double i_hat) {
  require(i_hat > 0.0, "m(phi) needs i > 0");
  const auto nq = static_cast<long>(std::llround(q_hat / kAqLatticeStep));
  const auto ni = static_cast<long>(std::llround(i_hat / kTypeLatticeStep));
  const long num = static_cast<long>(dim) * (nq - ni);
  // floor division for a positive denominator
  long m = num / ni;
  if (num % ni != 0 && num < 0) --m;
  return static_cast<int>(std::max(0L, m));
}

IndexReport index_report(const GrowthFunction& gf, const Grid& grid, const BallFamily& balls,
                         const IndexBudgets& budgets) {
  IndexReport rep;
  rep.types = estimate_types(gf, grid.dim(), budgets.type_samples);
  rep.i_hat = rep.types.i_hat;
  rep.I_hat = rep.types.I_hat;
  require(rep.i_hat > 0.0, "not of positive lower type");

  // The A_q ratio is nonincreasing in q, so bisect over lattice numerators.
  auto run = [&](long k) {
    return check_Aq(gf, static_cast<double>(k) * kAqLatticeStep, grid, balls, budgets.t_grid,
                    budgets.aq_cap);
  };
  long lo = 32, hi = 128;
  AqResult top = run(hi);
  if (!top.pass) fail(ErrorKind::Precondition, "no lattice q in [1, 4] satisfies A_q");
  AqResult bottom = run(lo);
  if (bottom.pass) {
    hi = lo;
    top = bottom;
  } else {
    while (hi - lo > 1) {
      const long mid = (lo + hi) / 2;
      AqResult r = run(mid);
      if (r.pass) {
        hi = mid;
        top = r;
      } else {
        lo = mid;
      }
    }
  }
  rep.q_hat = static_cast<double>(hi) * kAqLatticeStep;
  rep.aq = top;
  rep.m_hat = m_index(grid.dim(), rep.q_hat, rep.i_hat);
  return rep;
}

GrowthFunction regularize(const GrowthFunction& gf, double i_hat) {
  require(i_hat > 0.0, "not of positive lower type");
  // substitution s = t e^{-u} turns the integrand into a decaying one on [0, inf)
  auto fn = [gf](const Point& x, double t) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto integrand = [&](double u) {
      const double s = t * std::exp(-u);
      return s > 0.0 ? gf(x, s) : 0.0;
    };
    return integrator.integrate(integrand, 1e-12);
  };
  return GrowthFunction(gf.name() + "~", fn);
}

double subadditivity_constant(const GrowthFunction& gf, int dim) {
  const auto xs = sample_points(dim);
  const auto ts = log_range(1e-4, 1e4, 9);
  double c = 0.0;
  for (const Point& x : xs) {
    for (std::size_t a = 0; a < ts.size(); ++a) {
      for (std::size_t b = a; b < ts.size(); ++b) {
        // sequences: {ta, tb}, {ta, tb, tb}, and k copies of ta
        const double two = gf(x, ts[a]) + gf(x, ts[b]);
        c = std::max(c, gf(x, ts[a] + ts[b]) / two);
        c = std::max(c, gf(x, ts[a] + 2 * ts[b]) / (two + gf(x, ts[b])));
      }
      for (int k = 2; k <= 64; k *= 2)
        c = std::max(c, gf(x, k * ts[a]) / (k * gf(x, ts[a])));
    }
  }
  return c;
}

double concavity_constant(const GrowthFunction& gf, int dim) {
  const auto xs = sample_points(dim);
  const auto ts = log_range(1e-4, 1e4, 9);
  double c = 0.0;
  for (const Point& x : xs)
    for (double t : ts)
      for (double s : ts)
        for (int k = 1; k < 10; ++k) {
          const double l = k / 10.0;
          const double lhs = l * gf(x, t) + (1 - l) * gf(x, s);
          c = std::max(c, lhs / gf(x, l * t + (1 - l) * s));
        }
  return c;
}

namespace {

double ball_mass(const GrowthFunction& gf, const Grid& grid, const std::vector<std::size_t>& nodes,
                 double t) {
  double sum = 0.0;
  for (std::size_t i : nodes) sum += gf(grid.node(i), t);
  return sum * grid.cell_volume();
}

}  // namespace

double doubling_constant(const GrowthFunction& gf, double q, const Grid& grid,
                         const BallFamily& balls, const std::vector<double>& t_grid) {
  const double n = grid.dim();
  double c = 0.0;
  for (const Ball& b : balls) {
    const auto inner = nodes_in_ball(grid, b);
    if (inner.empty()) continue;
    for (double l : {2.0, 4.0, 8.0}) {
      const auto outer = nodes_in_ball(grid, b.dilate(l));
      for (double t : t_grid) {
        const double m = ball_mass(gf, grid, inner, t);
        if (m == 0.0) continue;
        c = std::max(c, ball_mass(gf, grid, outer, t) / (std::pow(l, n * q) * m));
      }
    }
  }
  return c;
}

double tail_constant(const GrowthFunction& gf, double q, const Grid& grid,
                     const BallFamily& balls, const std::vector<double>& t_grid) {
  const double nq = grid.dim() * q;
  double c = 0.0;
  for (const Ball& b : balls) {
    const auto inner = nodes_in_ball(grid, b);
    if (inner.empty()) continue;
    for (double t : t_grid) {
      double tail = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point x = grid.node(i);
        const double d = distance(x, b.center);
        if (d <= b.radius) continue;
        tail += gf(x, t) / std::pow(d, nq);
      }
      tail *= grid.cell_volume();
      const double m = ball_mass(gf, grid, inner, t);
      if (m > 0.0) c = std::max(c, tail * std::pow(b.radius, nq) / m);
    }
  }
  return c;
}

double local_integrability_check(const GrowthFunction& gf, const Grid& grid,
                                 const std::vector<double>& t_grid) {
  double worst = 0.0;
  for (double t : t_grid) {
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = gf(grid.node(i), t);
      if (!std::isfinite(v) || v < 0.0)
        fail(ErrorKind::Invariant, "growth function is not locally integrable on the box");
      sum += v;
    }
    worst = std::max(worst, sum * grid.cell_volume() / t);
  }
  return worst;
}

}  // namespace mohardy
