#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "rbsuper/exactmath/ratexpr.hpp"

namespace rbsuper {

using Complex = std::complex<double>;

// Denominators with modulus at or below this are rejected.
inline constexpr double kNearZero = 1e-9;

// Root of m(t) used to embed the field into C: largest imaginary part, ties
// broken by largest real part. Refined to about 1e-15.
Complex field_root(const Field* f);

Complex eval_numeric(const Scalar& s, Complex root);
Complex eval_numeric(const RatExpr& e, const std::map<std::string, Complex>& point, Complex root);

// Complex numbers over GMP floats (256-bit mantissa). Used where cancellation
// between huge terms would swamp double precision.
struct HpComplex {
  mpf_class re{0, 256}, im{0, 256};
  HpComplex() = default;
  HpComplex(const mpf_class& r, const mpf_class& i) : re(r, 256), im(i, 256) {}
  explicit HpComplex(const Rational& q) : re(q, 256), im(0, 256) {}
  explicit HpComplex(Complex z) : re(z.real(), 256), im(z.imag(), 256) {}
  HpComplex operator+(const HpComplex& o) const { return {re + o.re, im + o.im}; }
  HpComplex operator-(const HpComplex& o) const { return {re - o.re, im - o.im}; }
  HpComplex operator-() const { return {-re, -im}; }
  HpComplex operator*(const HpComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  HpComplex operator/(const HpComplex& o) const;
  HpComplex& operator+=(const HpComplex& o) { return *this = *this + o; }
  mpf_class abs() const;
  Complex to_complex() const { return {re.get_d(), im.get_d()}; }
};

HpComplex field_root_hp(const Field* f);
HpComplex eval_hp(const Scalar& s, const HpComplex& root);
HpComplex eval_hp(const RatExpr& e, const std::map<std::string, HpComplex>& point,
                  const HpComplex& root);

// Rational sample points p/q with p, q uniform in [-50, 50], q != 0.
class RationalSampler {
 public:
  explicit RationalSampler(uint64_t seed) : rng_(seed) {}
  Rational next();

 private:
  std::mt19937_64 rng_;
};

}  // namespace rbsuper
