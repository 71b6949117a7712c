#pragma once

#include <map>
#include <string>
#include <vector>

#include "rbsuper/exactmath/poly.hpp"

namespace rbsuper {

// num/den with den != 0. Fractions are not reduced by a polynomial gcd; only
// the scalar and monomial content shared by num and den is removed.
class RatExpr {
 public:
  RatExpr() : den_(Scalar(1)) {}
  RatExpr(const Scalar& c) : num_(c), den_(Scalar(1)) {}  // NOLINT
  RatExpr(long c) : RatExpr(Scalar(c)) {}                 // NOLINT
  RatExpr(int c) : RatExpr(Scalar(c)) {}                  // NOLINT
  RatExpr(const Rational& q) : RatExpr(Scalar(q)) {}      // NOLINT
  RatExpr(PolyExpr num) : num_(std::move(num)), den_(Scalar(1)) {}  // NOLINT
  RatExpr(PolyExpr num, PolyExpr den);
  static RatExpr variable(const std::string& name, const Symbols* syms) {
    return RatExpr(PolyExpr::variable(name, syms));
  }

  const PolyExpr& num() const { return num_; }
  const PolyExpr& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Only valid when is_constant().
  Scalar constant_value() const;
  const Symbols* symbols() const;
  const Field* field() const;
  std::vector<std::string> used_symbols() const;

  RatExpr rebase(const Symbols* syms) const;

  RatExpr operator-() const { return RatExpr(-num_, den_, true); }
  RatExpr& operator+=(const RatExpr& o);
  RatExpr& operator-=(const RatExpr& o);
  RatExpr& operator*=(const RatExpr& o);
  RatExpr& operator/=(const RatExpr& o);
  friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }
  friend RatExpr operator-(RatExpr a, const RatExpr& b) { return a -= b; }
  friend RatExpr operator*(RatExpr a, const RatExpr& b) { return a *= b; }
  friend RatExpr operator/(RatExpr a, const RatExpr& b) { return a /= b; }
  RatExpr pow(unsigned k) const;

  // Replaces the named symbols by the given expressions.
  RatExpr substitute(const std::map<std::string, RatExpr>& values) const;

  // Semantic equality: a.num*b.den == b.num*a.den.
  friend bool operator==(const RatExpr& a, const RatExpr& b);
  friend bool operator!=(const RatExpr& a, const RatExpr& b) { return !(a == b); }

  std::string str() const;

 private:
  RatExpr(PolyExpr num, PolyExpr den, bool /*raw*/) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();
  PolyExpr num_, den_;
};

bool is_zero(const RatExpr& e);

// Substitutes into a polynomial, giving a fraction.
RatExpr substitute(const PolyExpr& p, const std::map<std::string, RatExpr>& values);

// Common multiple of the denominators (product of the pieces not already
// divisible), used to clear fractions before a long computation.
PolyExpr common_denominator(const std::vector<const RatExpr*>& entries);

}  // namespace rbsuper
