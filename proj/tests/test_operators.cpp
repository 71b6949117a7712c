#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rbsuper/errors.hpp"
#include "rbsuper/operators/operators.hpp"

using namespace rbsuper;

namespace {

OperatorFamily load_op(const std::string& alg_text, const std::string& op_text) {
  AlgebraFile f = parse_algebra_text(alg_text + op_text);
  REQUIRE(f.operators.size() == 1);
  return parse_operator(f.operators[0], f.algebra, f.module ? &*f.module : nullptr);
}

EvenMap map_of(const SuperAlgebra& a, const std::vector<std::vector<RatExpr>>& cols) {
  EvenMap m(a.basis.parity, a.basis.parity);
  for (size_t i = 0; i < cols.size(); ++i)
    for (size_t k = 0; k < cols[i].size(); ++k) m.at(k, i) = cols[i][k];
  return m;
}

}  // namespace

TEST_CASE("a non Rota-Baxter map on B_2_2 fails at (e1, e1)") {
  SuperAlgebra a = fixtures::load(fixtures::kB22);
  EvenMap r = map_of(a, {{1, 0}, {0, 0}});
  CheckReport rep = check_rb(a, r, Scalar(0));
  REQUIRE_FALSE(rep.passed);
  // R(e1)R(e1) - R(R(e1)e1 + e1R(e1)) = e1 - 2 e1.
  CHECK(rep.witnesses[0].indices == std::vector<int>{1, 1});
  CHECK(rep.witnesses[0].vector == "-e1");
}

TEST_CASE("the two-parameter family on B_2_1 is Rota-Baxter identically") {
  OperatorFamily op = load_op(fixtures::kB21, R"(
[operator]
name = R2
R(e1) = a1 e1
R(e2) = 2 a1 e2
)");
  CHECK(op.params->names() == std::vector<std::string>{"a1"});
  REQUIRE(op.pivots.size() == 1);
  CHECK(op.pivots[0].row == 0);
  CHECK(op.pivots[0].col == 0);
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  CHECK(check_rb(a, op).passed);
  // Scaling only the odd image breaks it.
  OperatorFamily bad = load_op(fixtures::kB21, "[operator]\nR(e1) = a1 e1\nR(e2) = 3 a1 e2\n");
  CHECK_FALSE(check_rb(a, bad).passed);
}

TEST_CASE("operators with rational entries") {
  // The osp(1,2) family with rational coefficients in three parameters.
  OperatorFamily op = load_op(fixtures::kOsp, R"(
[operator]
name = R1
constraints = a1, 2*a3+a2
R(e1) = a1 e1 + a2 e2 - (8*a1^2*a3)/(2*a3+a2)^2 e3
R(e2) = -(2*a2*a1^2)/(2*a3+a2)^2 e1 + ((2*a3-3*a2)*a1)/(2*(2*a3+a2)) e2 + (2*a1^3)/(2*a3+a2)^2 e3
R(e3) = a3 e1 + (2*a3+a2)^2/(8*a1) e2 + (a1*(a2-6*a3))/(2*(2*a3+a2)) e3
)");
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  CheckReport rep = check_rb(g, op);
  CHECK(rep.passed);
  CHECK(rep.checked == 25);
  CHECK(op.unpivoted.empty());
}

TEST_CASE("weights and the iden-rota convention") {
  SuperAlgebra a = fixtures::load(fixtures::kB32);
  // -id is Rota-Baxter of weight 1 in the canonical form on any associative algebra.
  EvenMap minus_id = identity_map(a.basis).scaled(RatExpr(-1));
  CHECK(check_rb(a, minus_id, Scalar(1)).passed);
  CHECK_FALSE(check_rb(a, minus_id, Scalar(-1)).passed);
  OperatorFamily op = load_op(fixtures::kB32, "[operator]\nweight = -1\nconvention = iden-rota\nR(e1) = -e1\nR(e2) = -e2\n");
  CHECK(op.weight == Scalar(1));
  CHECK(op.written_weight() == Scalar(-1));
  CHECK(check_rb(a, op).passed);
}

TEST_CASE("odd maps are rejected as operators") {
  CHECK_THROWS_AS(load_op(fixtures::kB21, "[operator]\nR(e1) = e2\n"), InputError);
}

TEST_CASE("multiplication operators") {
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  EvenMap ad = mult_operator(g, MultSide::adjoint, unit_vec(5, 0));
  // ad(e1) is diagonal with eigenvalues 0, 2, -2, -1, 1.
  const int diag[5] = {0, 2, -2, -1, 1};
  for (size_t i = 0; i < 5; ++i) CHECK(ad.at(i, i) == RatExpr(diag[i]));
  EvenMap odd = mult_operator(g, MultSide::adjoint, unit_vec(5, 3));
  CHECK(odd.parity() == 1);
  CHECK(odd.respects_grading());
  SuperAlgebra b = fixtures::load(fixtures::kB22);
  // Right multiplication by the odd e2 picks up the sign on odd arguments.
  EvenMap r = mult_operator(b, MultSide::right, unit_vec(2, 1));
  CHECK(r.at(1, 0) == RatExpr(1));
  CHECK(r.at(0, 1) == RatExpr(Rational(-1, 2)));
}

TEST_CASE("O-operators on the regular module") {
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  ModuleData m = regular_module(a);
  EvenMap t = map_of(a, {{1, 0}, {0, 2}});
  CHECK(check_o_operator(a, m, t, Scalar(0)).passed);
  CHECK_THROWS_AS(check_o_operator(a, m, t, Scalar(1)), MissingInternalProduct);
  EvenMap bad = map_of(a, {{1, 0}, {0, 3}});
  CHECK_FALSE(check_o_operator(a, m, bad, Scalar(0)).passed);
  // With the algebra's own product on V, an O-operator of weight w is an RB operator of weight w.
  ModuleData mi = regular_module(a, true);
  SuperAlgebra b = fixtures::load(fixtures::kB32);
  EvenMap minus_id = identity_map(b.basis).scaled(RatExpr(-1));
  CHECK(check_o_operator(b, regular_module(b, true), minus_id, Scalar(1)).passed);
  CHECK(check_o_operator(a, mi, t, Scalar(0)).passed);
}

TEST_CASE("extended O-operator with T = 0 and T' = id fails at (e1, e1)") {
  SuperAlgebra a = fixtures::load(fixtures::kB32);
  ModuleData m = regular_module(a);
  EvenMap t = zero_map(a.basis, a.basis), tp = identity_map(a.basis);
  CheckReport rep = check_extended_o_operator(a, m, t, tp, Scalar(1));
  REQUIRE_FALSE(rep.passed);
  CHECK(rep.witnesses[0].indices == std::vector<int>{1, 1});
  CHECK(rep.witnesses[0].axiom == "extended-o-operator");
  // Weight zero reduces to the O-operator identity, which T = 0 satisfies.
  CHECK(check_extended_o_operator(a, m, t, tp, Scalar(0)).passed);
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  CHECK_THROWS_AS(check_extended_o_operator(g, regular_module(g), zero_map(g.basis, g.basis),
                                            zero_map(g.basis, g.basis), Scalar(1)),
                  KindMismatch);
}

TEST_CASE("Rota-Baxter operators on a module") {
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  EvenMap r = map_of(a, {{1, 0}, {0, 2}});
  // R on the regular module, acting on V by R itself.
  CHECK(check_rb_on_module(a, regular_module(a), r, r, Scalar(0)).passed);
  EvenMap rv = map_of(a, {{1, 0}, {0, 0}});
  CHECK_FALSE(check_rb_on_module(a, regular_module(a), r, rv, Scalar(0)).passed);
}

TEST_CASE("morphisms of Rota-Baxter superalgebras") {
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  EvenMap zero = zero_map(g.basis, g.basis);
  EvenMap id = identity_map(g.basis);
  CHECK(check_rb_morphism(g, zero, g, zero, id).passed);
  // e2 -> 2 e2 alone is not a homomorphism: [e2,e3] = e1 would need to double.
  EvenMap f = identity_map(g.basis);
  f.at(1, 1) = RatExpr(2);
  CHECK_FALSE(check_rb_morphism(g, zero, g, zero, f).passed);
  // Compatible scaling: the grading automorphism e_odd -> -e_odd.
  EvenMap s = identity_map(g.basis);
  s.at(3, 3) = RatExpr(-1);
  s.at(4, 4) = RatExpr(-1);
  CHECK(check_rb_morphism(g, zero, g, zero, s).passed);
}

TEST_CASE("operator text round trip") {
  SuperAlgebra a = fixtures::load(fixtures::kB21);
  OperatorFamily op = load_op(fixtures::kB21, "[operator]\nname = R2\nR(e1) = a1 e1\nR(e2) = 2 a1 e2\n");
  std::string text = render_operator(op, a);
  OperatorFamily back = load_op(fixtures::kB21, text);
  CHECK(back.map == op.map);
  CHECK(back.name == "R2");
  CHECK(back.pivots.size() == 1);
}

TEST_CASE("substituting a parameter") {
  OperatorFamily op = load_op(fixtures::kB21, "[operator]\nR(e1) = a1 e1\nR(e2) = 2 a1 e2\n");
  OperatorFamily s = op.substitute({{"a1", RatExpr(3)}});
  CHECK(s.map.at(1, 1) == RatExpr(6));
  CHECK(s.params->names().empty());
  CHECK(s.pivots.empty());
}
