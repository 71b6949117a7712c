#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rbsuper/structures/algebra.hpp"

namespace rbsuper {

struct Witness {
  std::string axiom;
  std::vector<int> indices;        // 1-based basis indices of the failing tuple
  std::vector<std::string> names;  // the same tuple by basis name
  int component = 0;               // 1-based first nonzero coordinate of the residual
  std::string residual;            // that coordinate, LHS - RHS
  std::string vector;              // whole residual as a linear combination
};

struct CheckReport {
  static constexpr size_t kMaxWitnesses = 100;

  std::string subject;
  bool passed = true;
  std::vector<Witness> witnesses;  // lexicographic, capped at kMaxWitnesses
  size_t failures = 0;             // failing tuples, counted past the cap
  size_t checked = 0;              // tuples evaluated
  double seconds = 0;

  std::string status() const { return passed ? "pass" : "fail"; }
  void merge(const CheckReport& o);
};

struct CheckOptions {
  // Stop after this many failing tuples (the report is still a failure).
  size_t max_failures = CheckReport::kMaxWitnesses;
};

// Predicate on basis index tuples; tuples it rejects are skipped.
using TupleFilter = std::function<bool(const std::vector<size_t>&)>;

// Grading (products respect parity) and, for Lie kind, super skew-symmetry.
CheckReport validate(const SuperAlgebra& a);

// The defining identities of the algebra's kind, identically in all
// parameters; associativity too when also_associative is set.
CheckReport check_axioms(const SuperAlgebra& a, const CheckOptions& opt = {},
                         const TupleFilter& filter = nullptr);
CheckReport check_associativity(const SuperAlgebra& a, const CheckOptions& opt = {});

// Module axioms, checked as the identities of the semidirect sum A (+) V on
// tuples with one module element (two as well when V has an internal product).
CheckReport check_module(const SuperAlgebra& a, const ModuleData& m, const CheckOptions& opt = {});

// Records a residual vector at a tuple. `scale` divides the residual (used
// when the caller cleared denominators beforehand).
void record_residual(CheckReport& rep, const std::string& axiom, const std::vector<size_t>& tuple,
                     const Vec& residual, const GradedBasis& tuple_basis,
                     const std::vector<std::string>& out_names, const PolyExpr* scale = nullptr);

// Tables multiplied by a common denominator; returns it (1 if none needed).
PolyExpr clear_denominators(std::vector<Vec*> blocks);

}  // namespace rbsuper
