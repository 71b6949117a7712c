#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rbsuper/errors.hpp"
#include "rbsuper/exactmath/numeric.hpp"
#include "rbsuper/exactmath/parse.hpp"

using namespace rbsuper;

namespace {

const Symbols* abc() { return Symbols::make({"a1", "a2", "a3"}); }

RatExpr P(const std::string& s, const Field* f = Field::gaussian()) { return parse_expr(s, abc(), f); }

}  // namespace

TEST_CASE("generator arithmetic in Q[t]/(t^2+1)") {
  RatExpr e = P("t^2");
  CHECK(e.is_constant());
  CHECK(e.constant_value() == Scalar(-1));
  CHECK(P("i*i") == RatExpr(-1));
  CHECK(P("(1+t)*(1-t)") == RatExpr(2));
}

TEST_CASE("generator arithmetic in Q[t]/(t^2-t+1)") {
  const Field* f = parse_field("t^2-t+1");
  Scalar t = Scalar::generator(f);
  CHECK(t * t == t - Scalar(1));
  // t is a primitive sixth root of unity: t^3 = -1.
  CHECK(t * t * t == Scalar(-1, f));
  CHECK_THROWS_AS(parse_expr("i", abc(), f), UnknownSymbol);
}

TEST_CASE("scalar inverse and division by zero") {
  const Field* f = Field::gaussian();
  Scalar z = Scalar::from_coords(f, {Rational(3), Rational(-2)});
  CHECK(z * z.inverse() == Scalar(1, f));
  CHECK_THROWS_AS(Scalar(0, f).inverse(), DivideByZero);
  CHECK_THROWS_AS(P("a1/(a2-a2)"), DivideByZero);
}

TEST_CASE("zero divisors in a reducible quotient are rejected") {
  const Field* f = parse_field("t^2-1");
  Scalar u = Scalar::generator(f) - Scalar(1, f);
  CHECK_THROWS_AS(u.inverse(), DivideByZero);
}

TEST_CASE("parse a fraction with a constant denominator") {
  RatExpr e = P("-(a1^2+a1*a3)/2");
  RatExpr expect = P("-1/2*a1^2") - P("1/2 a1 a3");
  CHECK(e == expect);
  CHECK(e.is_polynomial());
}

TEST_CASE("syntax errors carry the byte offset") {
  try {
    P("a1 + * a2");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(P("a1^-2"), SyntaxError);
  CHECK_THROWS_AS(P("(a1"), SyntaxError);
  CHECK_THROWS_AS(P("b7"), UnknownSymbol);
}

TEST_CASE("implicit multiplication and precedence") {
  CHECK(P("2a1") == P("2*a1"));
  CHECK(P("-a1^2") == RatExpr(-1) * P("a1*a1"));
  CHECK(P("1/2 a1") == P("a1/2"));
  CHECK(P("a1^2/a2 a3") == P("(a1^2*a3)/a2"));
}

TEST_CASE("fraction arithmetic and is_zero") {
  RatExpr x = P("a1/(2*a3+a2)^2");
  RatExpr y = P("a2/(2*a3+a2)");
  RatExpr s = x + y;
  CHECK(s == P("(a1 + a2*(2*a3+a2))/(2*a3+a2)^2"));
  CHECK((s - x - y).is_zero());
  CHECK((x / x) == RatExpr(1));
  CHECK(P("a1/a1 - 1").is_zero());
  CHECK(P("(a1^2 - a2^2)/(a1 - a2)") == P("a1 + a2"));
}

TEST_CASE("linear combinations over a basis") {
  std::vector<std::string> basis = {"e1", "e2"};
  auto v = parse_linear("-(a1^2+a1*a3)/2 e2 + 3 e1 - e2", abc(), Field::gaussian(), basis);
  CHECK(v[0] == RatExpr(3));
  CHECK(v[1] == P("-(a1^2+a1*a3)/2 - 1"));
  CHECK(parse_linear("0", abc(), Field::gaussian(), basis)[1].is_zero());
  CHECK_THROWS_AS(parse_linear("e1*e2", abc(), Field::gaussian(), basis), SyntaxError);
  CHECK_THROWS_AS(parse_linear("a1", abc(), Field::gaussian(), basis), SyntaxError);
  // Rendering parses back to the same vector.
  auto back = parse_linear(linear_str(v, basis), abc(), Field::gaussian(), basis);
  CHECK(back[0] == v[0]);
  CHECK(back[1] == v[1]);
}

TEST_CASE("degrevlex leading term") {
  RatExpr e = P("a3^2 + a1*a2 + a1^2 + a2^3");
  CHECK(e.num().str() == "a2^3 + a1^2 + a1*a2 + a3^2");
}

TEST_CASE("substitution") {
  RatExpr e = P("a1^2/a2 + a3");
  std::map<std::string, RatExpr> sub{{"a1", P("2*a3")}, {"a2", RatExpr(4)}};
  CHECK(e.substitute(sub) == P("a3^2 + a3"));
}

TEST_CASE("numeric root choice") {
  Complex r = field_root(Field::gaussian());
  CHECK(std::abs(r - Complex(0, 1)) < 1e-14);
  Complex w = field_root(parse_field("t^2-t+1"));
  CHECK(std::abs(w - Complex(0.5, std::sqrt(3.0) / 2)) < 1e-14);
  CHECK(std::abs(field_root(Field::rational())) < 1e-15);
}

TEST_CASE("numeric evaluation and near-zero denominators") {
  RatExpr e = P("(a1 + t*a2)/a3");
  Complex root = field_root(Field::gaussian());
  std::map<std::string, Complex> pt{{"a1", 1.0}, {"a2", 2.0}, {"a3", 4.0}};
  CHECK(std::abs(eval_numeric(e, pt, root) - Complex(0.25, 0.5)) < 1e-15);
  pt["a3"] = 1e-12;
  CHECK_THROWS_AS(eval_numeric(e, pt, root), NearZeroDenominator);
}

TEST_CASE("exact scalar products agree with complex evaluation") {
  // Oracle: multiplication via the complex embedding at the chosen root.
  const Field* f = parse_field("t^3-2");
  Complex root = field_root(f);
  // Largest imaginary part: the complex cube root of 2 in the upper half plane.
  CHECK(std::abs(root * root * root - 2.0) < 1e-12);
  CHECK(root.imag() > 1.0);
  RationalSampler rs(7);
  for (int n = 0; n < 50; ++n) {
    Scalar a = Scalar::from_coords(f, {rs.next(), rs.next(), rs.next()});
    Scalar b = Scalar::from_coords(f, {rs.next(), rs.next(), rs.next()});
    Complex ea = eval_numeric(a, root), eb = eval_numeric(b, root);
    CHECK(std::abs(eval_numeric(a * b, root) - ea * eb) < 1e-8 * (1 + std::abs(ea * eb)));
    if (!b.is_zero()) CHECK(std::abs(eval_numeric(a / b, root) - ea / eb) < 1e-8 * (1 + std::abs(ea / eb)));
  }
}
