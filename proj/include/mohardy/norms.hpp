#pragma once

// Luxembourg quasi-norm, ball-localized L^q_phi(B) sizes, ball masses
// phi(B, t) and the atomic quasi-norm Lambda_q.

#include <functional>
#include <limits>
#include <vector>

#include "mohardy/grid.hpp"
#include "mohardy/growth.hpp"

namespace mohardy {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NormResult {
  double norm = 0.0;
  double witness_t = 0.0;  // only for L^q_phi(B), q < inf
  int iterations = 0;
  double residual = 0.0;   // |F(norm) - 1| for modular solvers
};

/// phi(B, t) by midpoint quadrature. Throws Precondition "empty region" when
/// the ball holds no node.
double phi_ball_mass(const GrowthFunction& gf, const Grid& grid, const Ball& ball, double t);

/// int phi(x, |f(x)| / lambda) dx
double modular(const GridFunction& f, const GrowthFunction& gf, double lambda);

/// Solves F(lambda) = 1 for a nonincreasing F by log-bisection from a
/// geometric bracket around `guess`. Stops when |F - 1| <= 1e-9 or the
/// relative bracket width is <= 1e-12.
NormResult solve_unit_level(const std::function<double(double)>& F, double guess);

/// inf{lambda > 0 : int phi(x, |f|/lambda) <= 1}; 0 for f == 0.
NormResult luxembourg_norm(const GridFunction& f, const GrowthFunction& gf);

/// ||chi_B||_{L^phi}, evaluated directly on the ball nodes.
double chi_ball_norm(const GrowthFunction& gf, const Grid& grid, const Ball& ball);

/// Max over the t-grid of (int |f|^q phi(.,t) / phi(B,t))^{1/q}, or the node
/// max of |f| for q = inf. Throws Precondition "not supported in ball" when f
/// has a nonzero node farther than one cell diameter outside B.
NormResult lq_phi_ball_norm(const GridFunction& f, const GrowthFunction& gf, const Ball& ball,
                            double q, const std::vector<double>& t_grid = log_t_grid());
NormResult lq_phi_ball_norm(const Grid& grid, const SparseField& f, const GrowthFunction& gf,
                            const Ball& ball, double q,
                            const std::vector<double>& t_grid = log_t_grid());

struct AtomEntry {
  GridFunction b;
  Ball ball;
  double q = kInfinity;
};

/// A ball with the precomputed L^q_phi(B) size of the function it carries.
struct BallTerm {
  Ball ball;
  double size = 0.0;
};

/// inf{lambda > 0 : sum_j phi(B_j, size_j / lambda) <= 1}; 0 for no terms or
/// all-zero sizes.
NormResult lambda_q_terms(const std::vector<BallTerm>& terms, const GrowthFunction& gf,
                          const Grid& grid);
NormResult lambda_q(const std::vector<AtomEntry>& entries, const GrowthFunction& gf,
                    const std::vector<double>& t_grid = log_t_grid());

/// sum_j size_j ||chi_{B_j}|| / Lambda_q: the measured constant of the
/// atomic-to-Luxembourg comparison.
double ball_sum_ratio(const std::vector<BallTerm>& terms, const GrowthFunction& gf,
                      const Grid& grid);

}  // namespace mohardy
