#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "caustica/geom.hpp"

using namespace caustica;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Sceneq fig2(const Rational& r = Rational(1, 3), const Rational& n = Rational(1, 2)) {
  return Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, Circle2q{{1, 0}, r * r}, n);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(q("3/6") == Rational(1, 2));
  CHECK(q("-0.25") == Rational(-1, 4));
  CHECK(q("1.5e-2") == Rational(3, 200));
  CHECK(q("7") == 7);
  CHECK_THROWS_AS(q("1/0"), Error);
  CHECK_THROWS_AS(q("abc"), Error);
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(*exact_sqrt(Rational(4, 9)) == Rational(2, 3));
  CHECK_FALSE(exact_sqrt(Rational(2)).has_value());
}

TEST_CASE("iota rotates by a quarter turn") {
  CHECK(iota(Point2q{1, 0}) == Point2q{0, 1});
  CHECK(iota(Point2q{0, 1}) == Point2q{-1, 0});
  CHECK(iota(Point2q{3, 4}) == Point2q{-4, 3});
}

TEST_CASE("refraction conic") {
  Sceneq s = fig2();
  SUBCASE("axis point: root along the axis") {
    Point2q x{Rational(2, 3), 0};
    auto c = refraction_conic(s, x, mirror_normal(s.mirror, x));
    CHECK(c(Point2q{1, 0}) == 0);
    CHECK(c(Point2q{0, 1}) != 0);
  }
  SUBCASE("roots are the +n and -n refracted directions") {
    Scened d = to_double(s);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    int tested = 0;
    for (int k = 0; k < 50; ++k) {
      double th = u(rng);
      Point2d x{1 + std::cos(th) / 3, std::sin(th) / 3};
      auto lp = try_refract(d.with_n(0.5), x);
      auto lm = try_refract(d.with_n(-0.5), x);
      if (!lp || !lm) continue;
      auto c = refraction_conic(d, x, mirror_normal(d.mirror, x));
      double scale = std::abs(c.a) + std::abs(c.b) + std::abs(c.c);
      CHECK(std::abs(c(normalized(lp->dir))) < 1e-12 * scale);
      CHECK(std::abs(c(normalized(lm->dir))) < 1e-12 * scale);
      ++tested;
    }
    CHECK(tested > 5);
  }
}

TEST_CASE("refract") {
  Scened s = to_double(fig2());
  SUBCASE("normal incidence is undeviated") {
    for (double n : {0.5, -0.5, 2.0}) {
      Line2d l = refract(s.with_n(n), {2.0 / 3.0, 0.0});
      CHECK(std::abs(l.dir.y) < 1e-15 * std::abs(l.dir.x));
      CHECK(std::abs(l.base.y) < 1e-15);
    }
  }
  SUBCASE("n = -1 reflects") {
    double th = 2.4;
    Point2d x{1 + std::cos(th) / 3, std::sin(th) / 3};
    Line2d l = refract(s.with_n(-1.0), x);
    Point2d nu = normalized(x - Point2d{1, 0});
    Point2d a = normalized(Point2d{0, 0} - x);
    Point2d d = normalized(l.dir);
    // reflection of a in the normal line
    Point2d refl = 2 * dot(a, nu) * nu - a;
    CHECK(std::abs(cross(refl, d)) < 1e-12);
  }
  SUBCASE("total internal reflection") {
    CHECK_THROWS_AS(refract(s, {1.0, 1.0 / 3.0}), Error);
    try {
      refract(s, {1.0, 1.0 / 3.0});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TotalInternalReflection);
    }
    CHECK_FALSE(try_refract(s, {1.0, 1.0 / 3.0}).has_value());
  }
}

TEST_CASE("inverse point") {
  Circle2q c{{1, 0}, Rational(1, 9)};
  CHECK(inverse_point(Point2q{0, 0}, c) == Point2q{Rational(8, 9), 0});
  CHECK(inverse_point(Point2q{0, 0}, Circle2q{{1, 0}, Rational(1, 4)}) == Point2q{Rational(3, 4), 0});
  Point2q a{Rational(-2, 7), Rational(5, 3)};
  Circle2q c2{{Rational(1, 2), -1}, Rational(3, 5)};
  Point2q b = inverse_point(a, c2);
  CHECK(inverse_point(b, c2) == a);
  CHECK(norm_sq(a - c2.center) * norm_sq(b - c2.center) == c2.radius_sq * c2.radius_sq);
  CHECK_THROWS_AS(inverse_point(c2.center, c2), Error);
}

TEST_CASE("tangent circle through A and R (Lemma 3.1 construction)") {
  Point2q a{0, 0}, o{1, 0}, r{1, Rational(1, 3)};
  Circle2q c = tangent_circle_through(a, r, o);
  Point2q e = c.center;
  CHECK(norm_sq(e - a) == norm_sq(e - r));
  CHECK(dot(e - r, r - o) == 0);
  Point2q b{Rational(8, 9), 0};
  CHECK(norm_sq(b - e) == norm_sq(e - r));
  CHECK(norm_sq(e - o) == norm_sq(e - r) + Rational(1, 9));
  CHECK_THROWS_AS(tangent_circle_through(a, Point2q{Rational(4, 3), 0}, o), Error);
}

TEST_CASE("axis intersection") {
  CHECK_FALSE(axis_intersection(1.0 / 3, 0.5, std::numbers::pi / 2).has_ray);
  auto hit = axis_intersection(1.0 / 3, 2.0, std::numbers::pi / 2);
  REQUIRE(hit.has_ray);
  CHECK(hit.x == doctest::Approx(1 - 1 / std::sqrt(31.0)).epsilon(1e-13));
  // oracle: the refracted line from refract() meets the axis at the same x
  Scened s = to_double(fig2(Rational(1, 3), Rational(2)));
  for (double th : {0.3, 1.1, 2.0, 4.0, 5.5}) {
    auto ai = axis_intersection(1.0 / 3, 2.0, th);
    auto l = try_refract(s, {1 + std::cos(th) / 3, std::sin(th) / 3});
    REQUIRE(ai.has_ray == l.has_value());
    if (!l) continue;
    double x = l->base.x - l->base.y * l->dir.x / l->dir.y;
    CHECK(ai.x == doctest::Approx(x).epsilon(1e-9));
  }
  CHECK(in_unit_interval(0.5));
  CHECK_FALSE(in_unit_interval(1.5));
  CHECK(in_focal_segment(0.5, 1.0 / 3));
  CHECK_FALSE(in_focal_segment(0.95, 1.0 / 3));
}

TEST_CASE("normalization") {
  auto id = normalize_scene(fig2());
  CHECK(id.transform.is_identity());
  Sceneq s = Sceneq::make(FiniteRadiant<Rational>{{1, 1}}, Circle2q{{1, 3}, 1}, Rational(1, 2));
  auto ns = normalize_scene(s);
  CHECK(ns.scene.radiant_point() == Point2q{0, 0});
  CHECK(ns.scene.circle().center == Point2q{1, 0});
  CHECK(ns.scene.circle().radius_sq == Rational(1, 4));
  Sceneq back = invert_transform_scene(ns.scene, ns.transform);
  CHECK(back.radiant_point() == s.radiant_point());
  CHECK(back.circle().center == s.circle().center);
  CHECK(back.circle().radius_sq == s.circle().radius_sq);
}

TEST_CASE("scene validation") {
  CHECK_THROWS_AS(Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, Circle2q{{1, 0}, 1}, Rational(1, 2)), Error);
  CHECK_THROWS_AS(Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, Circle2q{{1, 0}, Rational(1, 9)}, Rational(0)), Error);
  CHECK_THROWS_AS(Sceneq::make(FiniteRadiant<Rational>{{1, 5}}, Line2q{{1, 0}, {0, 1}}, Rational(1, 2)), Error);
}

TEST_CASE("line limit of circles") {
  // A = (0,0), circles O_k = (x_k, 0), r_k = x_k - 1 tend to the line x = 1.
  for (int xk : {10, 100, 1000}) {
    Rational x(xk);
    Point2q b = inverse_point(Point2q{0, 0}, Circle2q{{x, 0}, (x - 1) * (x - 1)});
    CHECK(b == Point2q{2 - 1 / x, 0});
    CHECK(norm_sq(b - Point2q{2, 0}) == 1 / (x * x));
  }
}
