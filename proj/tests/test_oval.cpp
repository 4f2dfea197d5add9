#include <doctest.h>

#include <cmath>

#include "caustica/oval.hpp"

using namespace caustica;

namespace {

Sceneq circle_scene(const Rational& r, const Rational& n) {
  return Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, Circle2q{{1, 0}, r * r}, n);
}

MPoly printed_quartic() {
  return parse_poly("(-72*(x^2+y^2)+144*x+192)^2 - 9216*(x^2+y^2)", MPoly::VarList{"x", "y"});
}

}  // namespace

TEST_CASE("ovals of the r = 1/3, n = 1/2 scene") {
  auto ovals = from_circle_scene(circle_scene(Rational(1, 3), Rational(1, 2)));
  CHECK(ovals[0].b == Point2q{Rational(8, 9), 0});
  CHECK(ovals[0].s_sq == 9);
  CHECK(ovals[0].t_sq == Rational(256, 9));
  CHECK(ovals[0].branch == 1);
  CHECK(ovals[1].branch == -1);
  CHECK(equal_up_to_scalar(quartic_closure(ovals[0]), printed_quartic()));
  CHECK(quartic_closure(ovals[0]) == quartic_closure(ovals[1]));
}

TEST_CASE("the printed quartic does not come from r = 1/2") {
  auto ovals = from_circle_scene(circle_scene(Rational(1, 2), Rational(1, 2)));
  CHECK_FALSE(equal_up_to_scalar(quartic_closure(ovals[0]), printed_quartic()));
}

TEST_CASE("r = 2/3, n = 2/3") {
  auto ovals = from_circle_scene(circle_scene(Rational(2, 3), Rational(2, 3)));
  CHECK(ovals[0].s_sq == Rational(9, 4));
  CHECK(ovals[0].t_sq == Rational(25, 16));
}

TEST_CASE("quartic closure degenerations") {
  SUBCASE("s = 0 is a doubled circle") {
    CartesianOval o{{0, 0}, {1, 0}, 0, 4, 1};
    CHECK(equal_up_to_scalar(quartic_closure(o), parse_poly("(x^2+y^2-4)^2", MPoly::VarList{"x", "y"})));
  }
  SUBCASE("s = 1 drops to degree 2") {
    CartesianOval o{{0, 0}, {2, 0}, 1, 16, 1};
    MPoly p = quartic_closure(o);
    CHECK(p.total_degree() == 2);
    // ellipse with foci (0,0), (2,0) and major axis 4
    CHECK(equal_up_to_scalar(p, parse_poly("3*x^2 + 4*y^2 - 6*x - 9", MPoly::VarList{"x", "y"})));
  }
}

TEST_CASE("line scenes") {
  Line2q l{{1, 0}, {0, 1}};
  auto o = from_line_scene(Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, l, Rational(1, 2)));
  CHECK(o.b == Point2q{2, 0});
  CHECK(o.s_sq == 1);
  CHECK(o.t_sq == 16);
  CHECK(o.branch == 1);
  CHECK(quartic_closure(o).total_degree() == 2);
  auto o2 = from_line_scene(Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, l, Rational(2)));
  CHECK(o2.branch == -1);
  // precisely one of the two ovals has real points
  OvalD plus = to_double(o), minus = plus;
  minus.branch = -1;
  CHECK_FALSE(sample_branch(plus, 64).empty());
  CHECK(sample_branch(minus, 64).empty());
  CHECK_THROWS_AS(from_line_scene(Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, l, Rational(-1))), Error);
}

TEST_CASE("normals and Lemma 1.1") {
  auto ovals = from_circle_scene(circle_scene(Rational(1, 3), Rational(1, 2)));
  OvalD o = to_double(ovals[0]);
  SUBCASE("axis point") {
    auto pts = sample_branch(o, 64);
    REQUIRE(!pts.empty());
    // M = (t/(1+s)...) solve on the axis: the sample with the largest x sits on it
    Point2d m{0, 0};
    for (auto p : pts)
      if (std::abs(p.y) < 1e-12 && p.x > m.x) m = p;
    if (m.x > 0) {
      Line2d nl = normal_line(o, m);
      CHECK(std::abs(nl.dir.y) < 1e-9 * std::abs(nl.dir.x));
    }
  }
  SUBCASE("sine ratio equals s") {
    for (const auto& ov : ovals) {
      OvalD od = to_double(ov);
      auto pts = sample_branch(od, 64);
      for (auto m : pts) {
        Line2d nl = normal_line(od, m);
        CHECK(std::abs(normal_sine_ratio(od, m, nl.dir) - od.s) < 1e-9);
      }
    }
  }
  SUBCASE("ratio is monotone in the line direction") {
    auto pts = sample_branch(o, 16);
    Point2d m = pts[3];
    Line2d nl = normal_line(o, m);
    double base = std::atan2(nl.dir.y, nl.dir.x);
    double prev = normal_sine_ratio(o, m, {std::cos(base - 0.02), std::sin(base - 0.02)});
    int sign = 0;
    for (int k = -1; k <= 2; ++k) {
      double cur = normal_sine_ratio(o, m, {std::cos(base + 0.01 * k), std::sin(base + 0.01 * k)});
      int sgn = cur > prev ? 1 : -1;
      if (sign == 0) sign = sgn;
      CHECK(sgn == sign);
      prev = cur;
    }
  }
  CHECK_THROWS_AS(normal_line(o, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(normal_line(o, {5.0, 5.0}), Error);
}

TEST_CASE("sampling") {
  CartesianOval circle{{0, 0}, {1, 0}, 0, 4, 1};
  for (auto p : sample_branch(to_double(circle), 32)) CHECK(std::hypot(p.x, p.y) == doctest::Approx(2.0));
  auto ovals = from_circle_scene(circle_scene(Rational(1, 3), Rational(1, 2)));
  MPoly q = quartic_closure(ovals[0]);
  for (const auto& ov : ovals)
    for (auto p : sample_branch(to_double(ov), 64)) {
      double v = q.eval(std::array<double, 2>{p.x, p.y});
      double scale = q.coefficient_norm1() * std::pow(std::max(1.0, std::hypot(p.x, p.y)), 4);
      CHECK(std::abs(v) / scale < 1e-8);
    }
}

TEST_CASE("inverse problem") {
  CartesianOval o{{0, 0}, {1, 0}, 4, 9, 1};
  Sceneq s = invert_to_scene(o);
  CHECK(s.circle().center == Point2q{Rational(4, 3), 0});
  CHECK(s.circle().radius_sq == Rational(4, 9));
  CHECK(abs(s.n) == Rational(2, 3));
  // round trip
  auto back = from_circle_scene(s);
  CHECK(back[0].b == o.b);
  CHECK(back[0].s_sq == o.s_sq);
  CHECK(back[0].t_sq == o.t_sq);
  Sceneq fig2 = circle_scene(Rational(1, 3), Rational(1, 2));
  Sceneq again = invert_to_scene(from_circle_scene(fig2)[0]);
  CHECK(again.circle().center == fig2.circle().center);
  CHECK(again.circle().radius_sq == fig2.circle().radius_sq);
  CHECK(abs(again.n) == abs(fig2.n));
  CHECK_THROWS_AS(invert_to_scene(CartesianOval{{0, 0}, {1, 0}, 1, 9, 1}), Error);
}
