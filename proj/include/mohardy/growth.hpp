#pragma once

// Growth functions phi(x, t), their type / Muckenhoupt index estimators and
// measured structural constants.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mohardy/grid.hpp"

namespace mohardy {

struct DeclaredIndices {
  double i = 1.0;  // critical lower type
  double I = 1.0;  // critical upper type
  double q = 1.0;  // Muckenhoupt index
};

class GrowthFunction {
 public:
  using Evaluator = std::function<double(const Point&, double)>;

  GrowthFunction(std::string name, Evaluator fn,
                 std::optional<DeclaredIndices> declared = std::nullopt);

  const std::string& name() const { return name_; }
  /// Oracle values for tests. The estimators below never read them.
  const std::optional<DeclaredIndices>& declared() const { return declared_; }

  /// Throws Precondition "negative argument" for t < 0.
  double operator()(const Point& x, double t) const;

 private:
  std::string name_;
  Evaluator fn_;
  std::optional<DeclaredIndices> declared_;
};

/// |x|^a t^p. Declared indices are for dimension `dim`.
GrowthFunction power_growth(double a, double p, int dim = 1);
/// t / (log(e+|x|) + log(e+t))
GrowthFunction log_theta();
/// t^p / (log(e+|x|) + log(e+t^p))^p
GrowthFunction p_log(double p);

double eval_phi(const GrowthFunction& gf, const Point& x, double t);

/// Log-spaced points in [lo, hi], endpoints included.
std::vector<double> log_t_grid(std::size_t count = 64, double lo = 1e-4, double hi = 1e4);

inline constexpr double kTypeConstant = 8.0;
inline constexpr double kTypeLatticeStep = 1.0 / 32.0;
inline constexpr double kAqLatticeStep = 1.0 / 32.0;
inline constexpr double kDefaultAqCap = 5.0;

struct Witness {
  Point x{0.0, 0.0};
  double s = 0.0;
  double t = 0.0;
  double ratio = 0.0;  // phi(x, st) / phi(x, t)
};

struct TypeEstimate {
  double i_hat = 0.0;
  double I_hat = 0.0;
  Witness lower;  // sample binding the lower-type bound
  Witness upper;
  std::size_t samples = 0;
};

/// Deterministic sample set: points at several radii (both axes and the
/// diagonal in 2-D), t in [1e-4, 1e4], and s spread over [1e-150, 1e150].
/// Throws Precondition if sample_budget < 1000 and "degenerate growth
/// function" if phi(x, t) == 0 for some sampled t > 0.
TypeEstimate estimate_types(const GrowthFunction& gf, int dim, std::size_t sample_budget = 4096);

struct AqResult {
  bool pass = false;
  double constant = 0.0;
  Ball witness_ball;
  double witness_t = 0.0;
};

/// Largest discrete A_q ratio over balls x t_grid. Throws Precondition
/// "weight vanishes on ball" when phi(., t) is zero on every node of a ball.
AqResult check_Aq(const GrowthFunction& gf, double q, const Grid& grid, const BallFamily& balls,
                  const std::vector<double>& t_grid, double cap = kDefaultAqCap);

struct IndexBudgets {
  std::size_t type_samples = 4096;
  double aq_cap = kDefaultAqCap;
  std::vector<double> t_grid = log_t_grid();
};

struct IndexReport {
  double i_hat = 0.0;
  double I_hat = 0.0;
  double q_hat = 1.0;
  int m_hat = 0;
  TypeEstimate types;
  AqResult aq;  // result at q_hat
};

/// q_hat is the smallest lattice q in [1, 4] passing check_Aq. Throws
/// Precondition if no lattice q passes.
IndexReport index_report(const GrowthFunction& gf, const Grid& grid, const BallFamily& balls,
                         const IndexBudgets& budgets = {});

/// floor(n (q / i - 1)) computed exactly on the 1/32 lattice.
int m_index(int dim, double q_hat, double i_hat);

/// phi~(x, t) = int_0^t phi(x, s) / s ds by double-exponential quadrature.
/// Throws Precondition "not of positive lower type" when i_hat <= 0.
GrowthFunction regularize(const GrowthFunction& gf, double i_hat);

// Measured structural constants over deterministic sample sets.

/// Smallest C with phi(x, sum t_j) <= C sum phi(x, t_j).
double subadditivity_constant(const GrowthFunction& gf, int dim);
/// Smallest C with l phi(x,t) + (1-l) phi(x,s) <= C phi(x, l t + (1-l) s).
double concavity_constant(const GrowthFunction& gf, int dim);
/// Smallest C with phi(B(x0, l r), t) <= C l^{nq} phi(B(x0, r), t), l in {2, 4, 8}.
double doubling_constant(const GrowthFunction& gf, double q, const Grid& grid,
                         const BallFamily& balls, const std::vector<double>& t_grid);
/// Smallest C with int_{box \ B} phi(x,t)/|x-x0|^{nq} <= C phi(B,t) / r^{nq}.
double tail_constant(const GrowthFunction& gf, double q, const Grid& grid,
                     const BallFamily& balls, const std::vector<double>& t_grid);
/// Checks that phi(., t) is finite and integrable over every node of the box
/// for each t (built-ins only). Returns the largest phi(box, t) / t seen.
double local_integrability_check(const GrowthFunction& gf, const Grid& grid,
                                 const std::vector<double>& t_grid);

}  // namespace mohardy
