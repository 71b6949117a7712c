#pragma once

#include <string>
#include <vector>

#include "rbsuper/operators/operators.hpp"

namespace rbsuper {

enum class ConstructionId {
  commutator_lie,
  assoc_rb_to_prelie_0,
  assoc_rb_to_prelie_m1,
  assoc_rb_to_lie_m1,
  lieadm_rb_to_prelie,
  prelie_rb_to_prelie,
  lie_oop_to_prelie_on_module,
  assoc_oop_to_ldend_on_module,
  prelie_oop_to_ldend_on_module,
  rb_to_ldend,
  ldend_to_prelie_vertical,
  ldend_to_prelie_horizontal,
  ldend_to_lie,
  transfer_oop_prelie_to_lie,
  transfer_oop_ldend_to_assoc,
  transfer_oop_ldend_to_prelie,
  induced_module_lie_to_prelie,
  induced_module_assoc_to_ldend,
  induced_module_prelie_to_ldend,
};

std::string construction_name(ConstructionId id);
ConstructionId parse_construction(const std::string& s);
std::vector<ConstructionId> all_constructions();

// Canonical weight of the operators the associative weight -1 statements
// need: R(x)R(y) = R(R(x)y + xR(y) - xy).
Scalar weight_minus_one();

// Every function below checks its preconditions (InputError and friends),
// builds the output, and re-checks the output's axioms; a failing re-check
// throws ConstructionFailed.

// [x,y] = xy - (-1)^{|x||y|} yx on an associative, pre-Lie or Lie-admissible input.
SuperAlgebra commutator_lie(const SuperAlgebra& a);

enum class AssocMode { weight0, weight_m1 };
// x o y = R(x)y - (-1)^{|x||y|} yR(x)      (weight0)
// x o y = R(x)y - (-1)^{|x||y|} yR(x) - xy (weight_m1)
SuperAlgebra assoc_rb_to_prelie(const SuperAlgebra& a, const EvenMap& r, AssocMode mode);

// Supercommutator of the weight_m1 product (the six-term bracket). R is
// re-checked as a weight -1 operator on the output.
SuperAlgebra assoc_rb_to_lie_m1(const SuperAlgebra& a, const EvenMap& r);

// x * y = [R(x), y] with the supercommutator bracket (or the bracket itself
// for Lie inputs).
SuperAlgebra lieadm_rb_to_prelie(const SuperAlgebra& a, const EvenMap& r);

// x * y = R(x) o y - (-1)^{|x||y|} y o R(x); R is re-checked on the output.
SuperAlgebra prelie_rb_to_prelie(const SuperAlgebra& a, const EvenMap& r);

// u o v = rho(T(u))v on the module.
SuperAlgebra lie_oop_to_prelie_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t);

// u > v = l(T(u))v, u < v = (-1)^{|u||v|} r(T(v))u.
SuperAlgebra assoc_oop_to_ldend_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t);

struct PrelieOopResult {
  SuperAlgebra ldend;        // u > v = l(T(u))v, u < v = -r(T(u))v
  SuperAlgebra vertical;     // its vertical pre-Lie product
  CheckReport homomorphism;  // T(u o v) = T(u) o T(v)
};
PrelieOopResult prelie_oop_to_ldend_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t);

// The L-dendriform structure of a weight-zero RB operator, through the
// regular bimodule: x > y = R(x)y, x < y = xR(y) (associative kind) or
// x > y = R(x) o y, x < y = -(-1)^{|x||y|} y o R(x) (pre-Lie kind).
SuperAlgebra rb_to_ldend(const SuperAlgebra& a, const EvenMap& r);

enum class PrelieSplit { vertical, horizontal };
// vertical: x > y - (-1)^{|x||y|} y < x; horizontal: x > y + x < y.
SuperAlgebra ldend_to_prelie(const SuperAlgebra& a, PrelieSplit which);
// Supercommutator of the horizontal product.
SuperAlgebra ldend_to_lie(const SuperAlgebra& a);

enum class TransferKind { prelie_to_lie, ldend_to_assoc, ldend_to_prelie };
struct TransferResult {
  SuperAlgebra target;
  ModuleData module;  // transferred actions
  CheckReport report; // module axioms and the O-operator identity on the target
};
// prelie_to_lie:   rho = l - r over the sub-adjacent Lie superalgebra
// ldend_to_assoc:  (l> + l<, r> + r<) over the horizontal product
// ldend_to_prelie: (l> - r<, r> - l<) over the vertical product
TransferResult transfer_oop(TransferKind kind, const SuperAlgebra& a, const ModuleData& m, const EvenMap& t);

enum class InducedKind { lie_to_prelie, assoc_to_ldend, prelie_to_ldend };
struct InducedResult {
  SuperAlgebra algebra;  // derived structure on A
  ModuleData module;     // induced actions on V
  CheckReport report;    // module axioms over the derived structure
};
// The derived structure of R (+) R_V on the semidirect sum, restricted to V.
InducedResult induced_module(InducedKind kind, const SuperAlgebra& a, const EvenMap& r, const ModuleData& m,
                             const EvenMap& rv);

// R2 as an RB operator of the L-dendriform structure of R1 (pre-Lie input,
// commuting weight-zero operators).
CheckReport check_commuting_rb(const SuperAlgebra& a, const EvenMap& r1, const EvenMap& r2);

// Symbols of the algebra's parameters together with those of the maps.
const Symbols* symbols_with(const SuperAlgebra& a, const std::vector<const EvenMap*>& maps);

}  // namespace rbsuper
