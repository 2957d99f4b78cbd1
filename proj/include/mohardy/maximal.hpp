#pragma once

// Finite test dictionaries for the grand maximal function, the nontangential
// grand maximal function itself, and the uncentred Hardy-Littlewood maximal
// function.

#include <string>
#include <vector>

#include "mohardy/grid.hpp"
#include "mohardy/growth.hpp"

namespace mohardy {

/// Dense bivariate polynomial sum c[a][b] y0^a y1^b with a + b <= degree.
class Poly2 {
 public:
  explicit Poly2(int degree = 0);
  static Poly2 constant(double c);
  static Poly2 monomial(int a, int b, double c = 1.0);

  int degree() const { return degree_; }
  double coeff(int a, int b) const;
  void add(int a, int b, double c);
  double operator()(const Point& y) const;

  Poly2 derivative(int axis) const;
  Poly2 operator*(const Poly2& other) const;
  Poly2 operator+(const Poly2& other) const;
  Poly2 operator*(double s) const;

 private:
  int degree_;
  std::vector<double> c_;  // (degree+1)^2, index a * (degree+1) + b
};

/// psi(x) = amplitude * Q((x - center) / rho), Q(y) = P(y) u^{-k} exp(-1/u),
/// u = 1 - |y|^2, Q = 0 for |y| >= 1.
struct DictMember {
  std::string label;
  Poly2 poly;
  int k = 0;
  Point center{0.0, 0.0};
  double rho = 1.0;
  double amplitude = 1.0;
};

double member_value(const DictMember& m, const Point& x);
/// d^alpha psi (x), exact symbolic differentiation.
double member_derivative(const DictMember& m, const MultiIndex& alpha, const Point& x);
/// sup_{x, |alpha| <= m+1} (1+|x|)^{(m+2)(n+1)} |d^alpha psi(x)| by dense
/// sampling with local refinement around the maximiser.
double member_seminorm(const DictMember& member, int m, int dim);

struct TestDictionary {
  int m = 0;
  int dim = 1;
  std::vector<DictMember> members;
  std::vector<double> scales;
};

/// Dyadic scales t_min * 2^j <= t_max.
std::vector<double> dyadic_scales(double t_min, double t_max);
/// From two cell widths up to 1/32 of the smallest box width.
std::vector<double> default_scales(const Grid& grid);

inline constexpr std::size_t kDefaultDictSize = 12;
inline constexpr double kSeminormSafety = 1.01;

/// Deterministic generation order (a larger count extends a smaller one):
/// the bump; its derivatives of order 1..m+1; polynomial multiples y^g bump
/// with 1 <= |g| <= m+1; then shifted half-size bumps and their derivatives
/// at finer and finer shift levels. Every member is rescaled so its
/// seminorm is 1 / kSeminormSafety.
TestDictionary build_dictionary(int m, std::size_t count, std::vector<double> scales, int dim);

/// max over members, scales t and nodes y with |y - x| < t of |f * psi_t (y)|.
GridFunction grand_maximal(const GridFunction& f, const TestDictionary& dict);
/// Same on a sparse input; the result is returned sparsely (nonzero nodes only).
SparseField grand_maximal(const Grid& grid, const SparseField& f, const TestDictionary& dict);

struct HlOptions {
  double r_max = 0.0;           // 0: full box width
  int radii_per_octave = 4;
};

/// Uncentred maximal function: max over balls B(c, r) containing x, with
/// centres at nodes and radii (h/2) 2^{j / radii_per_octave}, of the node
/// average of |f| over B.
GridFunction hl_maximal(const GridFunction& f, const HlOptions& options = {});

/// ||f*||_{L^phi}. Throws Precondition "dictionary smoothness below m(phi)"
/// if dict.m < m_required.
double hphi_norm(const GridFunction& f, const GrowthFunction& gf, const TestDictionary& dict,
                 int m_required);

// Measured constants.

/// max over x with Mf(x) > 0 of f*(x) / Mf(x).
double domination_constant(const GridFunction& fstar, const GridFunction& mf);
/// max over t of int (Mf)^q phi(., t) / int |f|^q phi(., t).
double hl_weighted_constant(const GridFunction& f, const GridFunction& mf,
                            const GrowthFunction& gf, double q, const std::vector<double>& t_grid);
/// max over balls and t of (avg_B |f|)^q phi(B, t) / int_B |f|^q phi(., t).
double average_weighted_constant(const GridFunction& f, const GrowthFunction& gf, double q,
                                 const BallFamily& balls, const std::vector<double>& t_grid);

}  // namespace mohardy
