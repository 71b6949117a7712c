#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "fixtures.hpp"
#include "rbsuper/errors.hpp"
#include "rbsuper/structures/checks.hpp"

using namespace rbsuper;

namespace {

// 3x3 rational matrices with a parity, for the matrix realization of osp(1,2).
using Mat = std::array<std::array<int, 3>, 3>;

Mat mul(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat supercommutator(const Mat& a, int pa, const Mat& b, int pb) {
  Mat ab = mul(a, b), ba = mul(b, a), c{};
  int s = (pa && pb) ? -1 : 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = ab[i][j] - s * ba[i][j];
  return c;
}

}  // namespace

TEST_CASE("two-dimensional associative pre-Lie superalgebras satisfy their axioms") {
  for (const char* text : {fixtures::kB21, fixtures::kB22, fixtures::kB32}) {
    SuperAlgebra a = fixtures::load(text);
    CHECK(validate(a).passed);
    CheckReport r = check_axioms(a);
    CHECK(r.passed);
    CHECK(r.checked > 0);
  }
}

TEST_CASE("missing Lie brackets are completed by super skew-symmetry") {
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  CHECK(g.table().product(1, 0) == Vec{RatExpr(0), RatExpr(-2), 0, 0, 0});
  // [e4,e5] = [e5,e4] for two odd elements.
  CHECK(g.table().product(3, 4) == g.table().product(4, 3));
  CHECK(validate(g).passed);
  CHECK(check_axioms(g).passed);
}

TEST_CASE("osp(1,2) brackets match the matrix realization") {
  const Mat e[5] = {
      Mat{{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}}, Mat{{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}},
      Mat{{{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}},  Mat{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}},
      Mat{{{0, 1, 0}, {0, 0, -1}, {0, 0, 0}}},
  };
  const int par[5] = {0, 0, 0, 1, 1};
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Mat c = supercommutator(e[i], par[i], e[j], par[j]);
      // Coordinates read off the entries that single out each basis matrix.
      int coord[5] = {c[0][0], c[0][2], c[2][0], c[1][0], c[0][1]};
      Mat back{};
      for (int k = 0; k < 5; ++k)
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s) back[r][s] += coord[k] * e[k][r][s];
      REQUIRE(back == c);
      Vec p = g.table().product(i, j);
      for (int k = 0; k < 5; ++k) CHECK_MESSAGE(p[k] == RatExpr(coord[k]), "[e" << i + 1 << ",e" << j + 1 << "]");
    }
}

TEST_CASE("a non pre-Lie product is caught at its first failing triple") {
  SuperAlgebra a = fixtures::load(R"(
[algebra]
name = bad
kind = pre-lie
basis = e1:even, e2:even
[products]
e1 * e2 = e1
)");
  CheckReport r = check_axioms(a);
  REQUIRE_FALSE(r.passed);
  // By hand: (e1 e2) e2 - e1 (e2 e2) = e1 while the swapped associator vanishes.
  CHECK(r.witnesses[0].indices == std::vector<int>{1, 2, 2});
  CHECK(r.witnesses[0].component == 1);
  CHECK((r.witnesses[0].residual == "1" || r.witnesses[0].residual == "-1"));
}

TEST_CASE("grading and skew-symmetry violations") {
  SuperAlgebra a = fixtures::load(R"(
[algebra]
name = odd_into_even
kind = pre-lie
basis = e1:even, e2:odd
[products]
e1 * e2 = e1
)");
  CHECK_FALSE(validate(a).passed);
  SuperAlgebra g = fixtures::load(R"(
[algebra]
name = not_skew
kind = lie
basis = e1:even, e2:even
[products]
e1 * e2 = e2
e2 * e1 = e2
)");
  CHECK_FALSE(validate(g).passed);
}

TEST_CASE("duplicate product keys are rejected") {
  CHECK_THROWS_AS(fixtures::load(R"(
[algebra]
name = dup
basis = e1:even
[products]
e1 * e1 = e1
e1 * e1 = 2 e1
)"),
                  InputError);
}

TEST_CASE("regular modules") {
  SuperAlgebra b = fixtures::load(fixtures::kB21);
  CHECK(check_module(b, regular_module(b)).passed);
  CHECK(check_module(b, regular_module(b, true)).passed);
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  CHECK(check_module(g, regular_module(g)).passed);
}

TEST_CASE("a broken action fails the module check") {
  SuperAlgebra b = fixtures::load(fixtures::kB22);
  ModuleData m = regular_module(b);
  // Left action of e1 made to vanish on e2: l(e1 e1) = l(e1)l(e1) then fails.
  m.actions[0].at(0, 1, 1) = RatExpr(0);
  CHECK_FALSE(check_module(b, m).passed);
}

TEST_CASE("render and parse round trip") {
  for (const char* text : {fixtures::kB22, fixtures::kOsp}) {
    SuperAlgebra a = fixtures::load(text);
    SuperAlgebra back = parse_algebra_text(render_algebra(a)).algebra;
    CHECK(back.name == a.name);
    CHECK(back.kind == a.kind);
    CHECK(back.basis.names == a.basis.names);
    CHECK(back.table() == a.table());
  }
}

TEST_CASE("odd basis elements declared first are moved after the even ones") {
  SuperAlgebra a = fixtures::load(R"(
[algebra]
name = reorder
basis = f:odd, e:even
[products]
e * f = f
)");
  CHECK(a.basis.names == std::vector<std::string>{"e", "f"});
  CHECK(a.table().product(0, 1) == Vec{RatExpr(0), RatExpr(1)});
}

TEST_CASE("semidirect sum splits back into algebra and module") {
  SuperAlgebra g = fixtures::load(fixtures::kOsp);
  ModuleData m = regular_module(g);
  SuperAlgebra s = semidirect(g, m);
  CHECK(s.dim() == 10);
  ModuleData back = split_module(s, g.dim(), m.basis, false);
  CHECK(back.actions[0].raw() == m.actions[0].raw());
  CHECK(split_algebra(s, g.dim()).table() == g.table());
}
