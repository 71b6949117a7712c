#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbsuper/exactmath/numeric.hpp"
#include "rbsuper/operators/operators.hpp"

namespace rbsuper {

// The weight-zero RB identity expanded coefficientwise in the entries of an
// unknown even map. Unknowns r1..rq cover the even block row-major, then the
// odd block row-major.
struct PolySystem {
  std::vector<std::string> unknowns;
  const Symbols* syms = Symbols::empty();
  const Field* field = Field::gaussian();
  std::vector<PolyExpr> equations;
  std::vector<int> parity;                          // basis parities of the algebra
  std::vector<std::pair<size_t, size_t>> cells;     // (row, col) of each unknown
};

PolySystem assemble_rb_system(const SuperAlgebra& a, const Scalar& weight = Scalar(0));

// The even map whose unknown cells hold the given values.
EvenMap unknown_map(const PolySystem& sys);
EvenMap map_at(const PolySystem& sys, const std::vector<RatExpr>& values);

enum class MonomialOrder { degrevlex, lex };

struct GroebnerCaps {
  size_t max_basis = 500;
  unsigned max_degree = 12;
};

// Reduced Groebner basis (monic, sorted by increasing leading monomial).
// Throws CapExceeded; `partial` then holds the basis reached so far.
std::vector<PolyExpr> buchberger(const std::vector<PolyExpr>& gens, const Symbols* syms,
                                 MonomialOrder order = MonomialOrder::degrevlex, const GroebnerCaps& caps = {},
                                 std::vector<PolyExpr>* partial = nullptr);

// Normal form of p modulo a Groebner basis g in the same order.
PolyExpr reduce(const PolyExpr& p, const std::vector<PolyExpr>& g, MonomialOrder order = MonomialOrder::degrevlex);
bool ideal_contains(const std::vector<PolyExpr>& g, const PolyExpr& p, MonomialOrder order = MonomialOrder::degrevlex);

// Krull dimension of the ideal from the leading monomials of a degrevlex basis.
int variety_dimension(const std::vector<PolyExpr>& g, size_t nvars);

using NumericPoint = std::vector<Complex>;

// A piece of the solution variety obtained by splitting off monomial factors.
struct Component {
  std::vector<PolyExpr> basis;  // reduced degrevlex Groebner basis
  int dimension = 0;
  // Linear components: the general point, with the free unknowns as parameters.
  std::optional<EvenMap> general;
  std::vector<std::string> free_unknowns;
  std::vector<NumericPoint> samples;
};

enum class SolutionKind { finite, positive_dimensional, numeric };

struct SolutionSet {
  SolutionKind kind = SolutionKind::numeric;
  std::vector<PolyExpr> groebner;                   // whole ideal, degrevlex
  int dimension = -1;                               // -1: empty variety
  std::vector<std::vector<Scalar>> exact_points;    // finite kind
  std::vector<Component> components;                // positive-dimensional kind
  std::vector<NumericPoint> numeric_points;
  std::vector<double> residuals;                    // per numeric point
  bool unconstrained = false;                       // empty system: points are free samples
};

struct SolveOptions {
  GroebnerCaps caps;
  uint64_t seed = 0;
  size_t samples_per_component = 3;
};

SolutionSet solve_system(const PolySystem& sys, const SolveOptions& opt = {});

struct NumericOptions {
  size_t restarts = 200;
  double tol = 1e-10;
  double radius = 10;
  double dedup = 1e-6;
  size_t max_iterations = 100;
  uint64_t seed = 0;
};

// Damped Newton (least-squares step) from random complex starts.
SolutionSet numeric_solve(const PolySystem& sys, const NumericOptions& opt = {});

// Residual norm of the system at a point.
double residual_norm(const PolySystem& sys, const NumericPoint& p);

struct FamilyMatch {
  bool matched = false;
  std::map<std::string, Complex> params;
  double deviation = 0;  // max entry deviation from the family matrix
  std::string reason;    // why it did not match
};

// Reads the family's parameters off its pivot cells (fitting any unpivoted
// ones), evaluates the family there and compares with the point. Algebra
// parameters are taken from `pins`. Throws ConstraintViolated when the fit
// lands on a vanishing constraint.
FamilyMatch match_family(const PolySystem& sys, const NumericPoint& point, const OperatorFamily& fam,
                         const std::map<std::string, RatExpr>& pins = {}, double tol = 1e-6);

}  // namespace rbsuper
