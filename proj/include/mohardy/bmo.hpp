#pragma once

// Mean-oscillation norms over a finite ball family, bounded truncation, the
// atom pairing, and the pointwise-multiplier quantities.

#include <cstdint>
#include <vector>

#include "mohardy/atoms.hpp"
#include "mohardy/norms.hpp"

namespace mohardy {

struct BallOscillation {
  Ball ball;
  double oscillation = 0.0;  // int_B |f - f_B|
  double weight = 0.0;       // factor applied to the oscillation
  double value = 0.0;        // weight * oscillation
};

struct BmoReport {
  double norm = 0.0;
  Ball witness;
  std::vector<BallOscillation> table;
  std::uint64_t family_hash = 0;
};

/// f_B as the node mean over the ball.
double ball_mean(const GridFunction& f, const Ball& ball);
/// int_B |f - f_B|
double oscillation(const GridFunction& f, const Ball& ball);

/// max over the family of int_B |f - f_B| / ||chi_B||_{L^phi}.
BmoReport bmo_phi_norm(const GridFunction& f, const GrowthFunction& gf, const BallFamily& balls);

enum class LogWeight {
  Radius,  // |log r| + log(e + |a|)
  Volume,  // log(e + 1/|B|) + sup_{x in B} log(e + |x|)
};
double log_weight(LogWeight kind, int dim, const Ball& ball);

/// max over the family of weight(B) / |B| * int_B |f - f_B|.
BmoReport bmo_log_norm(const GridFunction& f, const BallFamily& balls,
                       LogWeight kind = LogWeight::Radius);

/// max over the family of the two ratios between the log weights.
double log_weight_equivalence(int dim, const BallFamily& balls);

/// max over the family of (1/||chi_B||)(1/|B|) sum_{x,y in B} |f(x) - f(y)| dx dy.
double bmo_phi_pair_norm(const GridFunction& f, const GrowthFunction& gf, const BallFamily& balls);

/// Clamp to [-N, N].
GridFunction truncate(const GridFunction& b, double N);

/// int (sum_j b_j) b dx.
double pairing(const GridFunction& b, const std::vector<AtomEntry>& entries);

struct MultiplierReport {
  double sup_norm = 0.0;
  double log_norm = 0.0;
  double M = 0.0;  // sup_norm + log_norm
  double R = 0.0;  // max_f ||f g||_BMO / ||f||_BMO with phi = t
  std::size_t used = 0;
  std::size_t skipped = 0;
};

/// Throws Precondition "corpus degenerate" when every corpus member has zero
/// oscillation on the family.
MultiplierReport multiplier_check(const GridFunction& g, const std::vector<GridFunction>& corpus,
                                  const BallFamily& balls);

struct ConversionScan {
  double C = 0.0;           // smallest passing constant found, or 0 if none in range
  bool found = false;
  double theta_to_log = 0.0;  // smallest C for theta-atom -> log-atom alone
  double log_to_theta = 0.0;  // smallest C for log-atom -> theta-atom alone
  int iterations = 0;
};

/// Bisection over [lo, hi] for the smallest C such that, on every family
/// ball, C^{-1} times an extremal balanced theta-atom is a log-atom and C^{-1}
/// times an extremal balanced log-atom is a theta-atom.
ConversionScan scan_conversion_constant(const Grid& grid, const BallFamily& balls, double lo = 1.0,
                                        double hi = 16.0);

/// +h on the half of B below the centre along axis 0, -h on the other half.
GridFunction balanced_pattern(const Grid& grid, const Ball& ball, double height);

}  // namespace mohardy
