#include <doctest.h>

#include <random>

#include "caustica/error.hpp"
#include "caustica/poly.hpp"

using namespace caustica;

namespace {
MPoly P(const char* s) { return parse_poly(s); }
MPoly Pxy(const char* s) { return parse_poly(s, MPoly::VarList{"x", "y"}); }
Rational frac(int p, int q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}
}  // namespace

TEST_CASE("ring arithmetic") {
  CHECK(Pxy("(x+y)*(x-y)") == Pxy("x^2-y^2"));
  MPoly p = Pxy("3*x^2*y - 1/2*y + 7");
  CHECK((p + (-p)).is_zero());
  CHECK(pow(P("x+1"), 3) == P("x^3+3*x^2+3*x+1"));
  MPoly a = P("x*y + 2/3*z - 1"), b = P("y^2 - x + 5"), c = P("z*x - 1/7");
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * (b + c) == a * b + a * c);
  CHECK(a + b == b + a);
}

TEST_CASE("derivative") {
  MPoly f = parse_poly("2*t^3 + t - y - 2*t*x", MPoly::VarList{"x", "y", "t"});
  CHECK(derivative(f, "t") == parse_poly("6*t^2 + 1 - 2*x", MPoly::VarList{"x", "y", "t"}));
  CHECK(derivative(P("y^2"), "x").is_zero());
}

TEST_CASE("evaluation") {
  MPoly p = Pxy("x^2+y^2");
  CHECK(p.eval(std::array<Rational, 2>{3, 4}) == 25);
  MPoly f = P("x*y*t*r*n + r^2 + n");
  MPoly g = evaluate(f, {{"r", Rational(1, 3)}});
  CHECK_FALSE(g.involves("r"));
  CHECK(g.involves("n"));
  MPoly q = P("x - 2*y^3 + 1/5");
  std::map<std::string, Rational, std::less<>> at{{"x", Rational(2, 7)}, {"y", Rational(-3, 4)}};
  CHECK(evaluate(p * q, at).constant_value() == evaluate(p, at).constant_value() * evaluate(q, at).constant_value());
}

TEST_CASE("exact division") {
  auto d = exact_div(Pxy("(x+y)^2"), Pxy("x+y"));
  REQUIRE(d.has_value());
  CHECK(*d == Pxy("x+y"));
  CHECK_FALSE(exact_div(P("x^2+1"), P("x+1")).has_value());
  MPoly a = P("3*x^2*y - y*z + 2"), b = P("x - 5/3*z^2 + y");
  CHECK(*exact_div(a * b, b) == a);
}

TEST_CASE("content and primitive part") {
  auto cp = content_and_primitive(Pxy("6*x+9*y"));
  CHECK(cp.content == 3);
  CHECK(cp.primitive == Pxy("2*x+3*y"));
  auto neg = content_and_primitive(P("-x^2"));
  CHECK(neg.content == -1);
  CHECK(neg.primitive == P("x^2"));
  MPoly p = P("1/2*x^3 - 4/3*x*y + 2");
  CHECK(primitive(Rational(-7, 5) * p) == primitive(p));
  CHECK_THROWS_AS(content_and_primitive(MPoly()), Error);
}

TEST_CASE("text and JSON formats round trip") {
  MPoly p = P("-3/4*x^3*y + x*y^2 - y + 12");
  CHECK(to_text(p) == "-3/4*x^3*y + x*y^2 - y + 12");
  CHECK(parse_poly(to_text(p)) == p);
  CHECK(from_json_string(to_json_string(p)) == p);
  CHECK(to_text(MPoly()) == "0");
  try {
    parse_poly("x + * y");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_poly("x/0"), Error);
}

TEST_CASE("randomized parse/print and division round trip") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(0, 3), c(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<std::vector<int>, Rational>> ta, tb;
    for (int k = 0; k < 5; ++k) {
      ta.push_back({{e(rng), e(rng), e(rng)}, frac(c(rng), 1 + e(rng))});
      tb.push_back({{e(rng), e(rng), e(rng)}, frac(c(rng), 1 + e(rng))});
    }
    MPoly a = MPoly::from_terms({"x", "y", "z"}, ta), b = MPoly::from_terms({"x", "y", "z"}, tb);
    CHECK(parse_poly(to_text(a), a.vars()) == a);
    if (!b.is_zero()) CHECK(*exact_div(a * b, b) == a);
  }
}

TEST_CASE("coefficients and substitution") {
  MPoly f = P("x^2*t^2 + 3*t - y");
  auto cs = coefficients_in(f, "t");
  REQUIRE(cs.size() == 3);
  CHECK(cs[2] == P("x^2").with_vars(cs[2].vars()));
  MPoly g = substitute(P("t^2 + x"), "t", P("x + 1"));
  CHECK(equal_up_to_scalar(g, P("x^2 + 3*x + 1")));
}
