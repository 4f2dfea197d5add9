#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "caustica/caustic.hpp"

using namespace caustica;

namespace {

const MPoly::VarList kXY{"x", "y"};

Sceneq circle_scene(const Rational& r, const Rational& n) {
  return Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, Circle2q{{1, 0}, r * r}, n);
}

MPoly lame() {
  return parse_poly("64*x^6+48*x^4*y^2+12*x^2*y^4+y^6-432*x^4+756*x^2*y^2-27*y^4+972*x^2+243*y^2-729", kXY);
}

}  // namespace

TEST_CASE("refraction family F") {
  Rational r(1, 3), n(1, 2);
  MPoly f = build_family(r, n);
  CHECK(f.degree_in("t") == 6);
  Scened s = to_double(circle_scene(r, n));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-40, 40);
  int tested = 0;
  for (int k = 0; k < 60 && tested < 20; ++k) {
    Rational t0(d(rng), 1 + std::abs(d(rng)));
    t0.canonicalize();
    double t = to_double(t0);
    Point2d x{1 + (1.0 / 3) * 2 * t / (1 + t * t), (1.0 / 3) * (t * t - 1) / (1 + t * t)};
    std::map<std::string, Rational, std::less<>> at{{"t", t0}};
    MPoly ft = evaluate(f, at);
    for (double sn : {0.5, -0.5}) {
      auto ray = try_refract(s.with_n(sn), x);
      if (!ray) continue;
      for (double lambda : {-2.0, 0.5, 3.0}) {
        Point2d p = ray->base + lambda * ray->dir;
        std::vector<double> vals;
        for (const auto& v : ft.vars()) vals.push_back(v == "x" ? p.x : v == "y" ? p.y : t);
        double v = ft.eval(vals);
        CHECK(std::abs(v) < 1e-9 * ft.coefficient_norm1() * std::pow(std::max(1.0, std::hypot(p.x, p.y)), 4));
      }
      ++tested;
    }
  }
  CHECK(tested >= 20);
  // y -> -y, t -> 1/t mirrors R(t) about the axis: F is symmetric up to a power of t.
  MPoly mirrored = substitute(f, "y", -MPoly::variable("y"));
  std::map<std::string, Rational, std::less<>> t2{{"t", Rational(2)}}, th{{"t", Rational(1, 2)}};
  CHECK(equal_up_to_scalar(evaluate(mirrored, t2), evaluate(f, th)));
  // t = 0 gives R = (1, -r): F(1, -r, 0) = 0
  std::map<std::string, Rational, std::less<>> bottom{{"x", 1}, {"y", -r}, {"t", 0}};
  CHECK(evaluate(f, bottom).is_zero());
  // n enters through n^2 only
  CHECK(build_family(r, -n) == f);
}

TEST_CASE("parabola envelope") {
  MPoly f = parse_poly("-2*t*x - y + 2*t^3 + t", MPoly::VarList{"x", "y", "t"});
  CausticResult raw = envelope_resultant(f);
  CHECK(exact_div(raw.raw, parse_poly("2*(2*x-1)^3 - 27*y^2", raw.raw.vars())).has_value());
  CHECK_THROWS_AS(envelope_resultant(parse_poly("x + y", MPoly::VarList{"x", "y", "t"})), Error);
}

TEST_CASE("spurious factors at (1/3, 1/2)") {
  std::pair<Rational, Rational> rn{Rational(1, 3), Rational(1, 2)};
  CausticResult res = strip_spurious(envelope_resultant(build_family(rn.first, rn.second)), rn);
  CHECK(reconstructs(res));
  CHECK(res.caustic_poly.total_degree() == 12);
  CHECK(res.caustic_poly.size() == 49);
  bool saw_y = false, saw_circle = false;
  for (const auto& f : res.stripped) {
    if (f.factor.is_constant()) CHECK(f.multiplicity == 0);
    if (f.name == "y") {
      saw_y = true;
      CHECK(f.multiplicity >= 2);
    }
    if (f.name == "(x-1)^2+y^2-r^2") {
      saw_circle = true;
      CHECK(f.multiplicity >= 2);
    }
    if (f.extension) CHECK(f.multiplicity == 0);
  }
  CHECK(saw_y);
  CHECK(saw_circle);
}

TEST_CASE("evolutes") {
  SUBCASE("ellipse: Lame sextic") {
    MPoly e = evolute_eliminate(parse_poly("x^2+4*y^2-4", kXY));
    CHECK(equal_up_to_scalar(e, lame()));
  }
  SUBCASE("parabola") {
    MPoly g = parse_poly("y^2 - x", kXY);
    MPoly want = parse_poly("2*(2*x-1)^3 - 27*y^2", kXY);
    CHECK(equal_up_to_scalar(evolute_eliminate(g), want));
    // parametric oracle for y^2 = x: centers (3 t^2 + 1/2, -4 t^3) at M = (t^2, t)
    MPoly e = evolute_eliminate(g);
    for (int k = -25; k < 25; ++k) {
      Rational t(k, 7);
      std::array<Rational, 2> c{3 * t * t + Rational(1, 2), -4 * t * t * t};
      CHECK(e.eval(std::span<const Rational>(c)) == 0);
    }
  }
  SUBCASE("iterated resultants contain the sextic") {
    EvoluteOptions opt;
    opt.engine = EvoluteEngine::IteratedResultants;
    MPoly e = evolute_eliminate(parse_poly("x^2+4*y^2-4", kXY), opt);
    CHECK(exact_div(e, lame().with_vars(e.vars())).has_value());
  }
  SUBCASE("circle: the evolute is a point") {
    CHECK_THROWS_AS(evolute_eliminate(parse_poly("x^2+y^2-1", kXY)), Error);
  }
}

TEST_CASE("curvature centers") {
  MPoly g = parse_poly("x^2+4*y^2-4", kXY);
  auto c = curvature_center(g, {2.0, 0.0});
  REQUIRE(c.has_value());
  CHECK(c->x == doctest::Approx(1.5));
  CHECK(std::abs(c->y) < 1e-15);
  for (double u = 0.1; u < 6; u += 0.37) {
    auto cc = curvature_center(g, {2 * std::cos(u), std::sin(u)});
    REQUIRE(cc.has_value());
    CHECK(scaled_residual(lame(), *cc) < 1e-6);
  }
  OvalD circle{{0.5, 0.25}, {1, 0}, 0.0, 2.0, 1};
  for (auto p : curvature_centers(circle, 16)) {
    CHECK(p.x == doctest::Approx(0.5));
    CHECK(p.y == doctest::Approx(0.25));
  }
}

TEST_CASE("numeric envelope") {
  Scened s = to_double(circle_scene(Rational(1, 3), Rational(1, 2)));
  RayFamily fam(s);
  CHECK_FALSE(fam.validity().empty());
  auto serial = numeric_envelope_serial(fam, {512, 1e8});
  auto parallel = numeric_envelope(fam, {512, 1e8});
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].x == parallel[i].x);
    CHECK(serial[i].y == parallel[i].y);
  }
  CHECK(numeric_envelope(fam, {1, 1e8}).empty());
}

TEST_CASE("cross verification") {
  SUBCASE("(1/3, 1/2)") {
    auto rep = cross_verify(circle_scene(Rational(1, 3), Rational(1, 2)));
    CHECK(rep.pass());
    CHECK(rep.degree == 12);
    CHECK(rep.terms == 49);
  }
  SUBCASE("(1/2, 1/2)") {
    auto rep = cross_verify(circle_scene(Rational(1, 2), Rational(1, 2)));
    CHECK(rep.pass());
    CHECK(rep.degree == 12);
  }
  SUBCASE("reflection n = -1") {
    auto rep = cross_verify(circle_scene(Rational(1, 3), Rational(-1)));
    CHECK(rep.pass());
    CHECK(rep.degree == 6);
    CHECK(rep.pencils_skipped == 1);
  }
  SUBCASE("unnormalized scene") {
    Sceneq s = Sceneq::make(FiniteRadiant<Rational>{{1, 1}}, Circle2q{{1, 3}, Rational(4, 9)}, Rational(1, 2));
    auto rep = cross_verify(s);
    CHECK(rep.r == Rational(1, 3));
    CHECK(rep.pass());
  }
}
