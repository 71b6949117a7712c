#include "rbsuper/exactmath/ratexpr.hpp"

#include <set>

#include "rbsuper/errors.hpp"

namespace rbsuper {

RatExpr::RatExpr(PolyExpr num, PolyExpr den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivideByZero("zero denominator");
  normalize();
}

void RatExpr::normalize() {
  if (num_.is_zero()) {
    den_ = PolyExpr(Scalar(1));
    return;
  }
  if (den_.is_constant()) {
    const Scalar& c = den_.terms().begin()->second;
    if (!c.is_one()) num_ *= c.inverse();
    den_ = PolyExpr(Scalar(1));
    return;
  }
  Scalar lc = den_.leading_coeff();
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
  Monomial g = num_.monomial_content();
  if (num_.symbols() != den_.symbols()) {
    const Symbols* s = join_symbols(num_.symbols(), den_.symbols());
    num_ = num_.rebase(s);
    den_ = den_.rebase(s);
    g = num_.monomial_content();
  }
  g = g.gcd(den_.monomial_content());
  if (!g.is_one()) {
    num_ = num_.divide_monomial(g);
    den_ = den_.divide_monomial(g);
  }
  if (den_.is_constant()) {
    normalize();
    return;
  }
  if (num_.total_degree() >= den_.total_degree()) {
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = PolyExpr(Scalar(1));
    }
  }
}

Scalar RatExpr::constant_value() const {
  return num_.constant_term() / den_.constant_term();
}

const Symbols* RatExpr::symbols() const { return join_symbols(num_.symbols(), den_.symbols()); }

const Field* RatExpr::field() const { return join_fields(num_.field(), den_.field()); }

std::vector<std::string> RatExpr::used_symbols() const {
  std::set<std::string> s;
  for (auto i : num_.used_variables()) s.insert(num_.symbols()->names()[i]);
  for (auto i : den_.used_variables()) s.insert(den_.symbols()->names()[i]);
  return {s.begin(), s.end()};
}

RatExpr RatExpr::rebase(const Symbols* syms) const {
  return RatExpr(num_.rebase(syms), den_.is_constant() ? den_ : den_.rebase(syms), true);
}

RatExpr& RatExpr::operator+=(const RatExpr& o) {
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) normalize();
    else if (num_.is_zero()) den_ = PolyExpr(Scalar(1));
    return *this;
  }
  if (!den_.is_constant() && !o.den_.is_constant()) {
    if (auto q = o.den_.divide_exact(den_)) {
      num_ = num_ * *q + o.num_;
      den_ = o.den_;
      normalize();
      return *this;
    }
    if (auto q = den_.divide_exact(o.den_)) {
      num_ += o.num_ * *q;
      normalize();
      return *this;
    }
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatExpr& RatExpr::operator-=(const RatExpr& o) { return *this += -o; }

RatExpr& RatExpr::operator*=(const RatExpr& o) {
  if (num_.is_zero()) return *this;
  if (o.num_.is_zero()) return *this = RatExpr();
  bool poly = den_.is_constant() && o.den_.is_constant();
  num_ *= o.num_;
  if (!o.den_.is_constant()) den_ *= o.den_;
  if (!poly) normalize();
  return *this;
}

RatExpr& RatExpr::operator/=(const RatExpr& o) {
  if (o.num_.is_zero()) throw DivideByZero("division by a zero expression");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

RatExpr RatExpr::pow(unsigned k) const { return RatExpr(num_.pow(k), den_.pow(k)); }

RatExpr substitute(const PolyExpr& p, const std::map<std::string, RatExpr>& values) {
  const Symbols* syms = p.symbols();
  std::vector<const RatExpr*> sub(syms->size(), nullptr);
  std::vector<std::string> keep;
  for (size_t i = 0; i < syms->size(); ++i) {
    auto it = values.find(syms->names()[i]);
    if (it != values.end()) sub[i] = &it->second;
  }
  // Powers are cached per variable; untouched variables stay symbolic.
  std::vector<std::map<unsigned, RatExpr>> cache(syms->size());
  auto power = [&](size_t i, unsigned k) -> const RatExpr& {
    auto it = cache[i].find(k);
    if (it != cache[i].end()) return it->second;
    RatExpr base = sub[i] ? *sub[i] : RatExpr::variable(syms->names()[i], syms);
    return cache[i].emplace(k, base.pow(k)).first->second;
  };
  RatExpr out;
  for (auto& [m, c] : p.terms()) {
    RatExpr term(c);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) term *= power(i, m[i]);
    out += term;
  }
  return out;
}

RatExpr RatExpr::substitute(const std::map<std::string, RatExpr>& values) const {
  if (den_.is_constant()) return rbsuper::substitute(num_, values);
  return rbsuper::substitute(num_, values) / rbsuper::substitute(den_, values);
}

bool operator==(const RatExpr& a, const RatExpr& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

bool is_zero(const RatExpr& e) { return e.is_zero(); }

std::string RatExpr::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

PolyExpr common_denominator(const std::vector<const RatExpr*>& entries) {
  PolyExpr d(Scalar(1));
  for (auto* e : entries) {
    if (e->den().is_constant()) continue;
    if (d.divide_exact(e->den())) continue;
    if (auto q = e->den().divide_exact(d)) {
      d = e->den();
      continue;
    }
    d *= e->den();
  }
  return d;
}

}  // namespace rbsuper
