#include <doctest.h>

#include <random>

#include "caustica/error.hpp"
#include "caustica/poly.hpp"

using namespace caustica;

namespace {
MPoly P(const char* s) { return parse_poly(s); }
}  // namespace

TEST_CASE("small resultants") {
  CHECK(equal_up_to_scalar(sylvester_resultant(P("t^2 - x"), P("t - y"), "t"), P("y^2 - x")));
  MPoly f = parse_poly("-2*t*x - y + 2*t^3 + t", MPoly::VarList{"x", "y", "t"});
  MPoly res = sylvester_resultant(f, derivative(f, "t"), "t");
  CHECK(equal_up_to_scalar(res, parse_poly("2*(2*x-1)^3 - 27*y^2", MPoly::VarList{"x", "y"})));
  CHECK_THROWS_AS(sylvester_resultant(P("x + 1"), P("y"), "t"), Error);
}

TEST_CASE("specialization commutes with the resultant") {
  MPoly f = P("x*t^3 + (y-1)*t + 2*x*y + 1");
  MPoly g = P("(x+2)*t^2 - y*t + 3");
  MPoly r = sylvester_resultant(f, g, "t");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int k = 0; k < 5; ++k) {
    Rational a(d(rng), 1 + std::abs(d(rng)));
    a.canonicalize();
    if (a == 0 || a == -2) continue;
    std::map<std::string, Rational, std::less<>> at{{"x", a}};
    MPoly lhs = evaluate(r, at);
    MPoly rhs = sylvester_resultant(evaluate(f, at), evaluate(g, at), "t");
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Bareiss: serial and OpenMP agree") {
  MPoly f = P("(x+y)*t^4 - 3*x*t^2 + y^2*t - 1");
  MPoly g = P("t^3 + x*y*t + 2*y - x^2");
  CHECK(sylvester_resultant(f, g, "t") == sylvester_resultant_serial(f, g, "t"));
  auto m = sylvester_matrix(f, g, "t");
  CHECK(bareiss_determinant(m) == bareiss_determinant_serial(m));
}

TEST_CASE("determinant of a small matrix") {
  PolyMatrix m{{P("x"), P("1")}, {P("2"), P("y")}};
  CHECK(bareiss_determinant(m) == P("x*y - 2"));
  PolyMatrix z{{P("0"), P("1")}, {P("1"), P("0")}};
  CHECK(bareiss_determinant(z) == P("-1"));
}

TEST_CASE("eliminate_two") {
  // degenerate dependence: the system has no isolated solutions
  MPoly f = P("u - x"), g = P("v - y"), h = P("u + v - x - y");
  CHECK_THROWS_AS(eliminate_two(f, g, h, "u", "v"), Error);
  // the unit circle as the image of a rational parametrization
  MPoly a = P("(1+u^2)*x - (1-u^2)");
  MPoly b = P("(1+u^2)*y - 2*u");
  MPoly c = P("v - u");
  MPoly e = eliminate_two(a, b, c, "u", "v");
  CHECK(exact_div(e, parse_poly("x^2+y^2-1", e.vars())).has_value());
}
