#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mohardy/error.hpp"
#include "mohardy/grid.hpp"

using namespace mohardy;

namespace {

Grid line(double lo, double hi, std::size_t res) { return Grid(1, {{lo, hi}}, res); }

GridFunction indicator(const Grid& g, double a, double b) {
  return sample(g, [&](const Point& x) { return (x[0] >= a && x[0] <= b) ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("grid construction validates its inputs") {
  CHECK_THROWS_AS(Grid(3, {{0, 1}, {0, 1}, {0, 1}}, 8), Error);
  CHECK_THROWS_AS(Grid(1, {{0, 1}}, 6), Error);
  CHECK_THROWS_AS(Grid(1, {{1, 1}}, 8), Error);
  CHECK_THROWS_AS(Grid(1, {{0, 1}}, 1), Error);
  const Grid g(2, {{0, 1}, {0, 2}}, 16);
  CHECK(g.size() == 256);
  CHECK(g.cell_volume() == doctest::Approx(2.0 / 256.0));
  CHECK(g.flatten(3, 5) == 83);
  CHECK(g.unflatten(83) == std::array<std::size_t, 2>{3, 5});
}

TEST_CASE("integrate examples") {
  const Grid g = line(0, 1, 1024);
  CHECK(integrate(sample(g, [](const Point&) { return 1.0; })) == doctest::Approx(1.0));

  const Grid w = line(-2, 2, 4096);
  const auto one = sample(w, [](const Point&) { return 1.0; });
  CHECK(std::abs(integrate(one, Ball{{0, 0}, 1.0}) - 2.0) <= w.cell_width());
  CHECK(integrate(GridFunction(w)) == 0.0);
  CHECK_THROWS_WITH_AS(integrate(one, Ball{{10, 0}, 1.0}), "empty region", Error);
}

TEST_CASE("integrate is linear and additive over disjoint balls") {
  const Grid g = line(-2, 2, 2048);
  const auto f = sample(g, [](const Point& x) { return std::sin(3 * x[0]); });
  const auto h = sample(g, [](const Point& x) { return x[0] * x[0]; });
  CHECK(integrate(2.5 * f + (-1.5) * h) ==
        doctest::Approx(2.5 * integrate(f) - 1.5 * integrate(h)).epsilon(1e-13));
  const Ball a{{-0.5, 0}, 0.4}, b{{0.5, 0}, 0.4};
  const auto both = sample(g, [&](const Point& x) {
    return (a.contains(x) || b.contains(x)) ? std::sin(3 * x[0]) : 0.0;
  });
  CHECK(std::abs(integrate(f, a) + integrate(f, b) - integrate(both)) <=
        g.cell_width() * f.max_abs());
}

TEST_CASE("moment examples") {
  const Grid g = line(-2, 2, 4096);
  const auto odd = sample(g, [](const Point& x) { return x[0] * std::exp(-x[0] * x[0]); });
  CHECK(std::abs(moment(odd, {0, 0})) < 1e-12);
  CHECK(moment(indicator(g, 0, 1), {1, 0}) == doctest::Approx(0.5).epsilon(1e-3));
  const auto pm = indicator(g, 0, 1) - indicator(g, -1, 0);
  CHECK(std::abs(moment(pm, {0, 0})) < 1e-12);
  CHECK_THROWS_AS(moment(odd, {9, 0}), Error);
  CHECK_THROWS_AS(moment(odd, {0, 1}), Error);
}

TEST_CASE("multi_indices are graded") {
  CHECK(multi_indices(1, 2).size() == 3);
  const auto m = multi_indices(2, 2);
  REQUIRE(m.size() == 6);
  CHECK(m[0] == MultiIndex{0, 0});
  CHECK(m[5] == MultiIndex{0, 2});
}

TEST_CASE("nodes_in_ball counts ties as inside") {
  const Grid g = line(0, 1, 4);  // nodes 0.125, 0.375, 0.625, 0.875
  CHECK(nodes_in_ball(g, Ball{{0.375, 0}, 0.25}).size() == 3);
  const Grid g2(2, {{0, 1}, {0, 1}}, 4);
  CHECK(nodes_in_ball(g2, Ball{{0.375, 0.375}, 0.25}).size() == 5);
}

TEST_CASE("mollify examples") {
  const Grid g = line(-4, 4, 4096);
  const auto big = indicator(g, -3, 3);
  const auto m = mollify(big, 0.25);
  CHECK(m[g.nearest_index(0, 0.0)] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate(m) == doctest::Approx(integrate(big)).epsilon(1e-12));
  CHECK(mollify(GridFunction(g), 0.1).is_zero());
  CHECK_THROWS_WITH_AS(mollify(big, 0.5 * g.cell_width()), "scale below resolution", Error);

  const auto chi = indicator(g, 0, 1);
  double prev = 1e300;
  for (double t = 0.5; t >= 4 * g.cell_width(); t /= 2) {
    double l1 = 0;
    const auto d = chi - mollify(chi, t);
    for (double v : d.values()) l1 += std::abs(v) * g.cell_volume();
    CHECK(l1 < prev);
    prev = l1;
  }
}

TEST_CASE("mollify commutes with whole-cell translation") {
  const Grid g = line(-4, 4, 1024);
  const auto f = sample(g, [](const Point& x) { return bump({x[0] - 0.3, 0}) * (1 + x[0]); });
  GridFunction shifted(g);
  const std::size_t k = 7;
  for (std::size_t i = 0; i + k < g.size(); ++i) shifted[i + k] = f[i];
  const auto a = mollify(f, 0.2);
  const auto b = mollify(shifted, 0.2);
  for (std::size_t i = 0; i + k < g.size(); ++i) CHECK(b[i + k] == a[i]);
}

TEST_CASE("support margin check") {
  const Grid g = line(0, 1, 64);
  CHECK_NOTHROW(check_support_margin(indicator(g, 0.3, 0.7)));
  CHECK_THROWS_AS(check_support_margin(indicator(g, 0.0, 0.5)), Error);
}

TEST_CASE("csv round trip and validation") {
  const Grid g(2, {{-1, 1}, {-1, 1}}, 8);
  const auto f = sample(g, [](const Point& x) { return x[0] - 2 * x[1]; });
  std::stringstream ss;
  write_csv(ss, f);
  const auto back = read_csv(ss, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == f[i]);

  std::stringstream bad_header("x,value\n");
  CHECK_THROWS_AS(read_csv(bad_header, g), Error);
  std::stringstream truncated("x,y,value\n-0.875,-0.875,1\n");
  try {
    read_csv(truncated, g);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
  std::stringstream junk("x,y,value\n-0.875,-0.875,abc\n");
  CHECK_THROWS_AS(read_csv(junk, g), Error);
}

TEST_CASE("ball family is deterministic and hashable") {
  const Grid g = line(-1, 1, 256);
  const auto a = make_ball_family(g, 16, 1.0 / 64, 0.5);
  const auto b = make_ball_family(g, 16, 1.0 / 64, 0.5);
  CHECK(!a.empty());
  CHECK(family_hash(a) == family_hash(b));
  const auto c = make_ball_family(g, 8, 1.0 / 64, 0.5);
  CHECK(family_hash(a) != family_hash(c));
}
