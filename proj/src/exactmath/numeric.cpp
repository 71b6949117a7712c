#include "rbsuper/exactmath/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <vector>

#include "rbsuper/errors.hpp"

namespace rbsuper {

namespace {

// HpComplex temporaries take the default precision.
[[maybe_unused]] const bool kHpPrecision = (mpf_set_default_prec(256), true);

template <class C, class Conv>
C horner(const std::vector<Rational>& c, const C& x, Conv conv) {
  C acc = conv(Rational(0));
  for (size_t k = c.size(); k-- > 0;) acc = acc * x + conv(c[k]);
  return acc;
}

template <class C, class Conv>
C eval_poly(const PolyExpr& p, const std::vector<C>& vars, const C& root, Conv conv) {
  C acc = conv(Rational(0));
  for (auto& [m, c] : p.terms()) {
    C term = horner(c.coords(), root, conv);
    for (size_t i = 0; i < m.size(); ++i)
      for (unsigned k = 0; k < m[i]; ++k) term = term * vars[i];
    acc = acc + term;
  }
  return acc;
}

template <class C>
std::vector<C> bind(const Symbols* syms, const std::map<std::string, C>& point) {
  std::vector<C> vars;
  for (auto& n : syms->names()) {
    auto it = point.find(n);
    if (it == point.end()) throw UnknownSymbol("no value for '" + n + "'");
    vars.push_back(it->second);
  }
  return vars;
}

std::vector<Rational> derivative(const std::vector<Rational>& c) {
  std::vector<Rational> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<long>(k));
  return d;
}

}  // namespace

Complex field_root(const Field* f) {
  const auto& m = f->minpoly();
  int d = f->degree();
  if (d == 1) return Complex(-m[0].get_d(), 0);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -m[i].get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  auto ev = es.eigenvalues();
  Complex best = ev[0];
  for (int i = 1; i < d; ++i) {
    Complex z = ev[i];
    if (z.imag() > best.imag() + 1e-9 ||
        (std::abs(z.imag() - best.imag()) <= 1e-9 && z.real() > best.real()))
      best = z;
  }
  auto conv = [](const Rational& q) { return Complex(q.get_d(), 0); };
  auto dm = derivative(m);
  for (int it = 0; it < 50; ++it) {
    Complex fx = horner(m, best, conv), dfx = horner(dm, best, conv);
    if (std::abs(dfx) == 0) break;
    Complex step = fx / dfx;
    best -= step;
    if (std::abs(step) < 1e-17) break;
  }
  return best;
}

Complex eval_numeric(const Scalar& s, Complex root) {
  return horner(s.coords(), root, [](const Rational& q) { return Complex(q.get_d(), 0); });
}

Complex eval_numeric(const RatExpr& e, const std::map<std::string, Complex>& point, Complex root) {
  auto conv = [](const Rational& q) { return Complex(q.get_d(), 0); };
  auto nv = bind(e.num().symbols(), point);
  Complex num = eval_poly(e.num(), nv, root, conv);
  if (e.den().is_constant()) return num / eval_numeric(e.den().constant_term(), root);
  auto dv = bind(e.den().symbols(), point);
  Complex den = eval_poly(e.den(), dv, root, conv);
  if (std::abs(den) <= kNearZero) throw NearZeroDenominator("|den| = " + std::to_string(std::abs(den)));
  return num / den;
}

HpComplex HpComplex::operator/(const HpComplex& o) const {
  mpf_class n(o.re * o.re + o.im * o.im, 256);
  return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
}

mpf_class HpComplex::abs() const {
  mpf_class n(re * re + im * im, 256);
  return sqrt(n);
}

HpComplex field_root_hp(const Field* f) {
  HpComplex z(field_root(f));
  auto conv = [](const Rational& q) { return HpComplex(q); };
  const auto& m = f->minpoly();
  auto dm = derivative(m);
  for (int it = 0; it < 20; ++it) {
    HpComplex fx = horner(m, z, conv), dfx = horner(dm, z, conv);
    if (dfx.abs() == 0) break;
    z = z - fx / dfx;
  }
  return z;
}

HpComplex eval_hp(const Scalar& s, const HpComplex& root) {
  return horner(s.coords(), root, [](const Rational& q) { return HpComplex(q); });
}

HpComplex eval_hp(const RatExpr& e, const std::map<std::string, HpComplex>& point,
                  const HpComplex& root) {
  auto conv = [](const Rational& q) { return HpComplex(q); };
  HpComplex num = eval_poly(e.num(), bind(e.num().symbols(), point), root, conv);
  HpComplex den = e.den().is_constant() ? eval_hp(e.den().constant_term(), root)
                                        : eval_poly(e.den(), bind(e.den().symbols(), point), root, conv);
  if (den.abs() <= kNearZero) throw NearZeroDenominator("|den| = " + std::to_string(den.abs().get_d()));
  return num / den;
}

Rational RationalSampler::next() {
  std::uniform_int_distribution<int> dist(-50, 50);
  int p = dist(rng_);
  int q = 0;
  while (q == 0) q = dist(rng_);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace rbsuper
