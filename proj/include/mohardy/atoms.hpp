#pragma once

// Multi-level atomic decomposition built from Calderon-Zygmund
// decompositions at heights 2^k, atom and log-atom certificates, and the
// finite decomposition of a function supported in a ball.

#include <vector>

#include "mohardy/czd.hpp"
#include "mohardy/norms.hpp"

namespace mohardy {

struct AtomPiece {
  SparseField h;
  Ball ball;                 // B(x_i^k, 18 r_i^k)
  int level = 0;             // k
  std::size_t index = 0;     // i, 1-based within its level
  double sup = 0.0;          // ||h||_inf
  double moment_residual = 0.0;
  bool inside_ball = true;   // node-exact support check
  bool closing = false;      // the good part left at the lowest level
};

struct LevelReport {
  int k = 0;
  std::size_t balls = 0;
  bool skipped = false;  // Omega^k equal to Omega^{k+1}
};

struct AtomicDecomposition {
  std::vector<AtomPiece> pieces;  // the closing piece, if any, comes first
  GridFunction base;              // good part at the lowest level
  int k_min = 0;
  int k_max = 0;
  std::vector<LevelReport> levels;
  double lambda_inf = 0.0;
  double source_norm = 0.0;       // ||f||_{H^phi}, if a growth function was given
  double reconstruction_residual = 0.0;
  double size_constant = 0.0;     // max ||h_i^k||_inf / 2^k
  double cross_constant = 0.0;    // max |P_ij zeta_j| / 2^{k+1}
  double cross_sum_residual = 0.0;  // max node |sum_i sum_j P_ij zeta_j|
  double moment_tolerance_ratio = 0.0;  // over the h_i^k
  double closing_moment_ratio = 0.0;    // moments of the closing piece are those of f
  bool supports_ok = true;
};

struct MultilevelOptions {
  /// Heights below floor_ratio * max f* are folded into the base piece.
  double floor_ratio = 0x1p-30;
  const GrowthFunction* growth = nullptr;  // for lambda_inf and source_norm
  int m_required = 0;
};

/// f = sum of the pieces: the h_i^k for k_min <= k < k_max plus one closing
/// piece g^{k_min}, supported in the smallest ball about its support's
/// midpoint. Throws Precondition "support not compactly
/// contained" if f reaches the outermost node layer.
AtomicDecomposition multilevel_decompose(const GridFunction& f, int s, const TestDictionary& dict,
                                         const MultilevelOptions& options = {});
AtomicDecomposition multilevel_decompose(const GridFunction& f, const GridFunction& fstar, int s,
                                         const TestDictionary& dict,
                                         const MultilevelOptions& options = {});

/// Lambda_infinity of the pieces.
double pieces_lambda(const std::vector<AtomPiece>& pieces, const GrowthFunction& gf,
                     const Grid& grid);

struct LevelSetSum {
  double lhs = 0.0;  // sum_k phi(Omega^k, 2^k / lambda)
  double rhs = 0.0;  // int phi(x, f*/lambda)
  double ratio = 0.0;
};

/// Sum over all integer k of phi({f* > 2^k}, 2^k / lambda).
LevelSetSum level_set_sum(const GridFunction& fstar, const GrowthFunction& gf, double lambda);

struct AtomCertificate {
  Ball ball;
  double q = kInfinity;
  double measured_norm = 0.0;
  double bound = 0.0;
  std::vector<double> moment_residuals;  // per multi-index, centred and scaled
  double moment_tolerance = 0.0;
  bool support = false;
  bool size = false;
  bool moments = false;
  bool passes() const { return support && size && moments; }
};

inline constexpr double kCertifyRelTol = 1e-6;

/// Never throws on clause failure.
AtomCertificate certify_atom(const GridFunction& a, const Ball& ball, const GrowthFunction& gf,
                             double q, int s, const std::vector<double>& t_grid = log_t_grid());
/// (log(e + 1/|B|) + sup_{x in B} log(e + |x|)) / |B|
double log_atom_bound(int dim, const Ball& ball);
AtomCertificate certify_log_atom(const GridFunction& a, const Ball& ball);

struct FiniteDecomposition {
  double normalization = 0.0;  // ||f||_{H^phi}; pieces describe f / normalization
  GridFunction g;
  Ball g_ball;
  double g_multiple = 0.0;     // ||g||_inf ||chi_{g_ball}||
  AtomCertificate g_certificate{};
  std::vector<AtomEntry> pieces{};  // the finite family l_K
  double c_tilde = 0.0;
  int k_prime = 0;
  int K = 0;
  double remainder_norm = 0.0;   // ||l - l_K||_{L^q_phi(B(x0, 2r))}
  double remainder_bound = 0.0;  // sum of the dropped pieces' norms; compared with epsilon
  std::vector<std::pair<int, double>> decay{};  // (K, remainder bound)
  double quasi_norm = 0.0;     // Lambda over g and l_K
  double reconstruction_residual = 0.0;
};

struct FiniteOptions {
  double epsilon = 1e-3;
  int K_max = 1 << 20;
  MultilevelOptions multilevel;
  std::vector<double> t_grid = log_t_grid();
};

/// Throws Precondition "truncation did not converge" when K_max is reached.
FiniteDecomposition finite_decompose(const GridFunction& f, const Ball& ball,
                                     const GrowthFunction& gf, double q, int s,
                                     const TestDictionary& dict, const FiniteOptions& options = {});

struct Reconstruction {
  GridFunction f;
  double ratio = 0.0;  // hphi_norm(f) / lambda_q(entries)
};

Reconstruction reconstruct_and_bound(const Grid& grid, const std::vector<AtomEntry>& entries,
                                     const GrowthFunction& gf, const TestDictionary& dict,
                                     const std::vector<double>& t_grid = log_t_grid());

}  // namespace mohardy
