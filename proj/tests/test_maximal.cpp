#include <doctest.h>

#include <cmath>

#include "mohardy/error.hpp"
#include "mohardy/maximal.hpp"
#include "mohardy/norms.hpp"

using namespace mohardy;

namespace {

Grid line() { return Grid(1, {{-4, 4}}, 4096); }

GridFunction indicator(const Grid& g, double a, double b) {
  return sample(g, [&](const Point& x) { return (x[0] >= a && x[0] <= b) ? 1.0 : 0.0; });
}

// Central difference oracle for one derivative of a member.
double numeric_derivative(const DictMember& m, int axis, const Point& x) {
  const double e = 1e-5;
  Point a = x, b = x;
  a[static_cast<std::size_t>(axis)] -= e;
  b[static_cast<std::size_t>(axis)] += e;
  return (member_value(m, b) - member_value(m, a)) / (2 * e);
}

}  // namespace

TEST_CASE("Poly2 arithmetic") {
  const Poly2 p = Poly2::monomial(2, 1, 3.0) + Poly2::constant(1.0);
  CHECK(p({2.0, 0.5}) == doctest::Approx(7.0));
  CHECK(p.derivative(0)({2.0, 0.5}) == doctest::Approx(6.0));
  CHECK(p.derivative(1)({2.0, 0.5}) == doctest::Approx(12.0));
  CHECK((p * p)({2.0, 0.5}) == doctest::Approx(49.0));
}

TEST_CASE("symbolic derivatives match finite differences") {
  const auto dict = build_dictionary(2, 16, {0.1}, 2);
  for (const auto& mem : dict.members) {
    for (const Point& x : {Point{0.1, 0.2}, Point{-0.3, 0.05}, Point{0.4, -0.4}}) {
      const double exact0 = member_derivative(mem, {1, 0}, x);
      const double exact1 = member_derivative(mem, {0, 1}, x);
      const double scale = 1.0 + std::abs(exact0) + std::abs(exact1);
      CHECK(std::abs(exact0 - numeric_derivative(mem, 0, x)) <= 1e-5 * scale);
      CHECK(std::abs(exact1 - numeric_derivative(mem, 1, x)) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("build_dictionary examples") {
  const auto one = build_dictionary(0, 1, {0.1}, 1);
  REQUIRE(one.members.size() == 1);
  CHECK(member_seminorm(one.members[0], 0, 1) <= 1.0 + 1e-12);

  for (int dim : {1, 2}) {
    const auto d = build_dictionary(2, 12, {0.1, 0.2}, dim);
    CHECK(d.members.size() == 12);
    for (const auto& mem : d.members) CHECK(member_seminorm(mem, 2, dim) <= 1.0 + 1e-12);
    const auto bigger = build_dictionary(2, 20, {0.1, 0.2}, dim);
    for (std::size_t i = 0; i < d.members.size(); ++i) {
      CHECK(bigger.members[i].label == d.members[i].label);
      CHECK(bigger.members[i].amplitude == d.members[i].amplitude);
    }
  }
}

TEST_CASE("grand_maximal examples") {
  const Grid g = line();
  const auto scales = default_scales(g);
  const auto dict = build_dictionary(1, 6, scales, 1);
  CHECK(grand_maximal(GridFunction(g), dict).is_zero());

  const auto f = sample(g, [](const Point& x) { return bump({x[0] / 0.5, 0}); });
  const auto fs = grand_maximal(f, dict);
  // positive wherever the distance to supp f is below the largest scale
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = std::max(0.0, std::abs(g.node(i)[0]) - 0.5);
    if (d < 0.9 * scales.back()) CHECK(fs[i] > 0.0);
    if (d > 2.0 * scales.back() + g.cell_width()) CHECK(fs[i] == 0.0);
  }

  // superset dictionaries and extra scales never decrease f*
  const auto bigger = build_dictionary(1, 12, scales, 1);
  const auto fs2 = grand_maximal(f, bigger);
  auto fewer_scales = scales;
  fewer_scales.pop_back();
  const auto fs3 = grand_maximal(f, build_dictionary(1, 6, fewer_scales, 1));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(fs2[i] >= fs[i]);
    CHECK(fs3[i] <= fs[i]);
  }
}

TEST_CASE("grand_maximal agrees with a brute-force oracle") {
  const Grid g(1, {{-1, 1}}, 256);
  const std::vector<double> scales{0.05, 0.1};
  const auto dict = build_dictionary(0, 3, scales, 1);
  const auto f = sample(g, [](const Point& x) { return x[0] > -0.2 && x[0] < 0.3 ? x[0] + 0.5 : 0.0; });
  const auto fs = grand_maximal(f, dict);
  for (std::size_t ix = 0; ix < g.size(); ix += 7) {
    double best = 0.0;
    for (double t : scales)
      for (const auto& mem : dict.members)
        for (std::size_t iy = 0; iy < g.size(); ++iy) {
          if (std::abs(g.node(iy)[0] - g.node(ix)[0]) >= t) continue;
          double conv = 0.0;
          for (std::size_t k = 0; k < g.size(); ++k)
            conv += f[k] * member_value(mem, {(g.node(iy)[0] - g.node(k)[0]) / t, 0}) / t *
                    g.cell_volume();
          best = std::max(best, std::abs(conv));
        }
    CHECK(fs[ix] == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("2-D grand maximal is finite and local") {
  const Grid g(2, {{-1, 1}, {-1, 1}}, 64);
  const auto dict = build_dictionary(1, 6, default_scales(g), 2);
  const auto f = sample(g, [](const Point& x) { return bump({x[0] / 0.3, x[1] / 0.3}); });
  const auto fs = grand_maximal(f, dict);
  CHECK(fs.max_abs() > 0.0);
  CHECK(fs[0] == 0.0);
}

TEST_CASE("hl_maximal examples") {
  const Grid g = line();
  const auto chi = indicator(g, 0, 1);
  const auto m = hl_maximal(chi);
  const double tol = std::exp2(0.25);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i)[0];
    if (x >= 0 && x <= 1) {
      CHECK(m[i] == doctest::Approx(1.0));
    } else if (x >= 1.05 && x <= 3.0) {
      CHECK(m[i] <= 1.0 / x * (1 + 1e-9));
      CHECK(m[i] >= 1.0 / x / tol);
    }
  }
  CHECK(hl_maximal(GridFunction(g)).is_zero());
  const auto bigger = hl_maximal(indicator(g, -0.5, 1.5));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(bigger[i] >= m[i]);
}

TEST_CASE("hl_maximal in 2-D dominates |f|") {
  const Grid g(2, {{-1, 1}, {-1, 1}}, 32);
  const auto f = sample(g, [](const Point& x) { return x[0] * x[0] + x[1] < 0.2 ? 1.0 : 0.0; });
  const auto m = hl_maximal(f, HlOptions{0.5, 2});
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(m[i] >= f[i]);
}

TEST_CASE("domination and weighted maximal constants are finite") {
  const Grid g = line();
  const auto dict = build_dictionary(1, 12, default_scales(g), 1);
  const auto gf = log_theta();
  const auto ts = log_t_grid(8);
  for (const auto& f :
       {indicator(g, 0, 1), sample(g, [](const Point& x) { return bump({x[0] - 0.2, 0}) * x[0]; })}) {
    const auto fs = grand_maximal(f, dict);
    const auto mf = hl_maximal(f);
    const double c = domination_constant(fs, mf);
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
    CHECK(std::isfinite(hl_weighted_constant(f, mf, gf, 2.0, ts)));
    CHECK(std::isfinite(
        average_weighted_constant(f, gf, 2.0, make_ball_family(g, 256, 0.125, 1.0), ts)));
  }
}

TEST_CASE("hphi_norm examples") {
  const Grid g = line();
  const auto dict = build_dictionary(1, 6, default_scales(g), 1);
  const auto gf = power_growth(0, 0.5);
  CHECK(hphi_norm(GridFunction(g), gf, dict, 1) == 0.0);
  const auto f = sample(g, [](const Point& x) { return bump({x[0], 0}) * x[0]; });
  const double a = hphi_norm(f, log_theta(), dict, 0);
  CHECK(hphi_norm(3.0 * f, log_theta(), dict, 0) == doctest::Approx(3.0 * a).epsilon(1e-6));
  CHECK_THROWS_WITH_AS(hphi_norm(f, gf, dict, 2), "dictionary smoothness below m(phi)", Error);
}
