#pragma once

// Whitney covers of super-level sets, the associated smooth partition of
// unity, weighted polynomial projections and the Calderon-Zygmund
// decomposition of degree s and height lambda.

#include <cstdint>
#include <vector>

#include "mohardy/grid.hpp"
#include "mohardy/growth.hpp"
#include "mohardy/maximal.hpp"

namespace mohardy {

using NodeMask = std::vector<std::uint8_t>;

/// Dilation constants of the covering properties.
inline constexpr double kInnerFactor = 4.0;   // B(x_j, r_j / 4) disjoint
inline constexpr double kClearFactor = 18.0;  // B(x_j, 18 r_j) inside Omega
inline constexpr double kReachFactor = 54.0;  // B(x_j, 54 r_j) meets Omega^c

struct WhitneyCover {
  std::vector<Ball> balls;  // circumscribed balls of the selected dyadic cubes
  NodeMask omega;
  std::size_t overlap = 0;  // measured L
};

struct WhitneyCheck {
  bool covers = false;    // (i)
  bool disjoint = false;  // (ii)
  bool clear = false;     // (iii), first half
  bool reaches = false;   // (iii), second half
  std::size_t overlap = 0;  // (iv): max number of 18-dilates holding one node
  bool ok() const { return covers && disjoint && clear && reaches; }
};

/// Maximal dyadic cubes whose centre is farther than 18 r from every
/// Omega^c node, r the circumradius. Properties are re-verified by
/// verify_whitney and an Invariant error is raised if any fails. Throws
/// Precondition "level set not compactly contained" if Omega reaches the
/// outermost node layer.
WhitneyCover whitney(const Grid& grid, const NodeMask& omega);
WhitneyCheck verify_whitney(const Grid& grid, const WhitneyCover& cover);

/// theta(y) = 1 on |y| <= 1, 0 on |y| >= 2, smooth in between.
double cutoff(double radius);

struct PartitionOfUnity {
  std::vector<SparseField> zetas;
  double max_sum_error = 0.0;  // max over nodes |sum zeta - chi_Omega|
  double min_inner = 1.0;      // min of zeta_j over B(x_j, r_j) nodes
};

PartitionOfUnity partition_of_unity(const Grid& grid, const WhitneyCover& cover);

/// Polynomial of degree <= s in the centred, scaled monomials
/// ((x - center) / scale)^alpha, coefficients in multi_indices(dim, s) order.
struct Polynomial {
  Point center{0.0, 0.0};
  double scale = 1.0;
  int dim = 1;
  int degree = 0;
  std::vector<double> coef;

  double operator()(const Point& x) const;
};

struct Projection {
  Polynomial poly;
  std::size_t rank = 0;         // retained monomials
  double max_residual = 0.0;    // max_alpha |<f - P, m_alpha>_j|
};

/// Orthogonal projection onto P_s in the inner product
/// <p, q>_j = int p q zeta / int zeta, by weighted modified Gram-Schmidt on
/// the centred monomials. Numerically dependent monomials are dropped.
/// Throws Precondition "degenerate weight" if int zeta = 0.
Projection poly_project(const Grid& grid, const SparseField& f_on_support, const SparseField& zeta,
                        const Ball& ball, int s);
Projection poly_project(const GridFunction& f, const SparseField& zeta, const Ball& ball, int s);

struct CzPart {
  Ball ball;  // B(x_j, r_j)
  Polynomial poly;
  SparseField zeta;
  SparseField b;  // (f - P_j) zeta_j
  double moment_residual = 0.0;  // max over |alpha| <= s, centred and scaled
};

struct CzDiagnostics {
  bool computed = false;
  double c2 = 0.0;  // sup |P_j zeta_j| / lambda
  double c3 = 0.0;  // (b_j)* / f* on B(x_j, 9 r_j)
  double c4 = 0.0;  // (b_j)* / (lambda (r_j/|x-x_j|)^{n+m_s}) outside
  double aggregate = 0.0;   // int phi((sum b)*) / int_Omega phi(f*)
  double good_part = 0.0;   // g* <= C lambda sum_j (r_j/(|x-x_j|+r_j))^{n+m_s} + f* on Omega^c
  int m_s = 0;
};

struct CzDecomposition {
  GridFunction g;
  std::vector<CzPart> parts;
  double lambda = 0.0;
  int s = 0;
  bool trivial = false;
  WhitneyCover cover;
  PartitionOfUnity pou;
  CzDiagnostics diagnostics;
  double reconstruction_residual = 0.0;  // max |f - g - sum b_j|
  double moment_tolerance_ratio = 0.0;   // max residual / tolerance over parts
};

struct CzOptions {
  bool diagnostics = false;
  const GrowthFunction* growth = nullptr;  // needed for the aggregate constant
};

/// Moment tolerance 1e-6 * max(||piece||_inf, 1e-8 * f_scale) * |B| for a
/// piece on ball B; f_scale (usually ||f||_inf) keeps rounding-level pieces
/// from demanding moments below machine precision.
double moment_tolerance(const SparseField& piece, int dim, const Ball& ball, double f_scale = 0.0);
/// max_{|alpha| <= s} |int piece ((x - c)/r)^alpha|
double centred_moment_residual(const Grid& grid, const SparseField& piece, const Ball& ball, int s);

/// Uses the supplied f* (from grand_maximal(f, dict)).
CzDecomposition cz_decompose(const GridFunction& f, const GridFunction& fstar, double lambda, int s,
                             const TestDictionary& dict, const CzOptions& options = {});
CzDecomposition cz_decompose(const GridFunction& f, double lambda, int s,
                             const TestDictionary& dict, const CzOptions& options = {});

}  // namespace mohardy
