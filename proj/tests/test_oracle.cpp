#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rbsuper/operators/oracle.hpp"

using namespace rbsuper;

namespace {

OperatorFamily load_op(const std::string& alg_text, const std::string& op_text) {
  AlgebraFile f = parse_algebra_text(alg_text + op_text);
  REQUIRE(f.operators.size() == 1);
  return parse_operator(f.operators[0], f.algebra);
}

const char* kB21R2 = R"(
[operator]
name = R2
R(e1) = a1 e1
R(e2) = 2 a1 e2
)";

}  // namespace

TEST_CASE("a Rota-Baxter family has vanishing numeric residual") {
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  OracleReport r = oracle_check(a, load_op(fixtures::kB21, kB21R2));
  CHECK(r.exact_passed);
  CHECK(r.agree);
  CHECK(r.points.size() == 5);
  CHECK(r.max_residual() < 1e-8);
}

TEST_CASE("a broken family has a visible residual") {
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  OperatorFamily bad = load_op(fixtures::kB21, "[operator]\nname = R\nR(e1) = a1 e1\nR(e2) = 3 a1 e2\n");
  OracleReport r = oracle_check(a, bad);
  CHECK_FALSE(r.exact_passed);
  CHECK(r.agree);
  CHECK(r.max_residual() > 1e-6);
}

TEST_CASE("residual at a known point") {
  // R = diag(a, 3a) on e2 e2 = 1/2 e1: R(e2)R(e2) - R(R(e2)e2 + e2R(e2))
  // = 9a^2/2 e1 - 3a^2 e1 = 3a^2/2 e1, so 3/2 at a = 1 and 6 at a = 2.
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  OperatorFamily bad = load_op(fixtures::kB21, "[operator]\nname = R\nR(e1) = a1 e1\nR(e2) = 3 a1 e2\n");
  CHECK(numeric_rb_residual(a, bad, {{"a1", Rational(1)}}) == doctest::Approx(1.5));
  CHECK(numeric_rb_residual(a, bad, {{"a1", Rational(2)}}) == doctest::Approx(6.0));
}

TEST_CASE("perturbation is caught by both checks") {
  SuperAlgebra a = fixtures::load(fixtures::kB22);
  OperatorFamily zero = load_op(fixtures::kB22, "[operator]\nname = R0\nR(e1) = 0\nR(e2) = 0\n");
  REQUIRE(check_rb(a, zero).passed);
  auto bad = perturb_family(a, zero, 7);
  REQUIRE(bad.has_value());
  CHECK(bad->name.rfind("R0+E", 0) == 0);
  CHECK_FALSE(check_rb(a, *bad).passed);
  OracleReport r = oracle_check(a, *bad, {.seed = 7});
  CHECK(r.agree);
  CHECK_FALSE(r.exact_passed);
}

TEST_CASE("same seed, same points") {
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  OperatorFamily op = load_op(fixtures::kB21, kB21R2);
  OracleReport r1 = oracle_check(a, op, {.seed = 3});
  OracleReport r2 = oracle_check(a, op, {.seed = 3});
  REQUIRE(r1.points.size() == r2.points.size());
  for (size_t k = 0; k < r1.points.size(); ++k) CHECK(r1.points[k].values == r2.points[k].values);
}

TEST_CASE("no perturbation for a product-free algebra") {
  const char* abelian = "[algebra]\nname = Z\nkind = pre-lie\nbasis = e1:even, e2:odd\n";
  SuperAlgebra a = fixtures::load(abelian);
  OperatorFamily op = load_op(abelian, "[operator]\nname = R\nR(e1) = a1 e1\nR(e2) = 0\n");
  CHECK_FALSE(perturb_family(a, op).has_value());
}
