#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbsuper/exactmath/numeric.hpp"
#include "rbsuper/operators/operators.hpp"

namespace rbsuper {

// Numeric cross-check of the exact RB verdict: the residual of the family's
// identity is evaluated in 256-bit complex arithmetic at random rational
// parameter points (re-sampled when a denominator or constraint is near zero).
struct OracleOptions {
  uint64_t seed = 0;
  size_t points = 5;
  double zero_tol = 1e-8;     // every point below this for an exact pass
  double nonzero_tol = 1e-6;  // some point above this for an exact failure
  size_t max_resamples = 200;
};

struct OraclePoint {
  std::map<std::string, Rational> values;
  double residual = 0;  // max modulus over all coordinates and basis pairs
};

struct OracleReport {
  std::string subject;
  bool exact_passed = false;
  std::vector<OraclePoint> points;
  bool agree = false;
  uint64_t seed = 0;
  double max_residual() const;
};

// Structure parameters are taken after pinning the algebra.
OracleReport oracle_check(const SuperAlgebra& a, const OperatorFamily& fam, const OracleOptions& opt = {});

// Max residual modulus of the family at one point (all free symbols assigned).
double numeric_rb_residual(const SuperAlgebra& pinned, const OperatorFamily& fam,
                           const std::map<std::string, Rational>& values);

// The family with one even cell shifted by 1 so that the exact RB check fails.
// Cells are tried in a seeded order; nullopt when no single shift breaks the
// identity (e.g. when every product vanishes).
std::optional<OperatorFamily> perturb_family(const SuperAlgebra& a, const OperatorFamily& fam, uint64_t seed = 0);

}  // namespace rbsuper
