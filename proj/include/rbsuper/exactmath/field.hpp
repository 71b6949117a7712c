#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace rbsuper {

using Rational = mpq_class;

// Q[t]/(m(t)) for a monic m of degree >= 1. Fields are interned, so two Field
// pointers describe the same field iff they are equal.
class Field {
 public:
  // m(t) = t, i.e. plain rationals.
  static const Field* rational();
  // m(t) = t^2 + 1, the default.
  static const Field* gaussian();
  // Coefficients low to high; the last one is normalized to 1.
  static const Field* make(std::vector<Rational> minpoly);

  int degree() const { return static_cast<int>(m_.size()) - 1; }
  const std::vector<Rational>& minpoly() const { return m_; }
  bool is_rational() const { return degree() == 1 && m_[0] == 0; }
  // `i` is accepted as an alias of t when m = t^2+1.
  bool has_i_alias() const;
  std::string minpoly_text() const;

 private:
  explicit Field(std::vector<Rational> m) : m_(std::move(m)) {}
  std::vector<Rational> m_;
};

// Element of a Field, stored as `degree` coordinates in the power basis 1, t, ...
class Scalar {
 public:
  Scalar() : Scalar(Field::rational()) {}
  explicit Scalar(const Field* f);
  Scalar(const Rational& q, const Field* f = Field::rational());
  Scalar(long v) : Scalar(Rational(v)) {}  // NOLINT: implicit on purpose
  Scalar(int v) : Scalar(Rational(v)) {}   // NOLINT
  static Scalar generator(const Field* f);
  static Scalar from_coords(const Field* f, std::vector<Rational> c);

  const Field* field() const { return f_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // only the constant coordinate is nonzero
  const Rational& rational_part() const { return c_[0]; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Re-expressed in `f`; only legal from the rational field or f itself.
  Scalar in_field(const Field* f) const;
  std::string str() const;

 private:
  void unify(Scalar& o);
  const Field* f_;
  std::vector<Rational> c_;
};

// Common field of two scalars, FieldMismatch if they cannot be combined.
const Field* join_fields(const Field* a, const Field* b);

std::string rational_str(const Rational& q);

}  // namespace rbsuper
