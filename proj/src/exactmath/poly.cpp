#include "rbsuper/exactmath/poly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "rbsuper/errors.hpp"

namespace rbsuper {

namespace {

struct SymbolRegistry {
  std::mutex mu;
  std::map<std::vector<std::string>, std::unique_ptr<Symbols>> tables;
};

SymbolRegistry& symbol_registry() {
  static SymbolRegistry r;
  return r;
}

}  // namespace

const Symbols* Symbols::make(std::vector<std::string> names) {
  auto& reg = symbol_registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.tables.find(names);
  if (it != reg.tables.end()) return it->second.get();
  auto* s = new Symbols(names);
  reg.tables.emplace(std::move(names), std::unique_ptr<Symbols>(s));
  return s;
}

const Symbols* Symbols::empty() {
  static const Symbols* e = make({});
  return e;
}

int Symbols::index(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

const Symbols* join_symbols(const Symbols* a, const Symbols* b) {
  if (a == b || b->size() == 0) return a;
  if (a->size() == 0) return b;
  std::vector<std::string> names = a->names();
  bool grew = false;
  for (auto& n : b->names())
    if (!a->contains(n)) {
      names.push_back(n);
      grew = true;
    }
  return grew ? Symbols::make(std::move(names)) : a;
}

Monomial::Monomial(std::vector<uint16_t> e) : e_(std::move(e)) {
  for (auto v : e_) deg_ += v;
}

void Monomial::set(size_t i, uint16_t v) {
  deg_ = deg_ - e_[i] + v;
  e_[i] = v;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  r.deg_ += o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  r.deg_ -= o.deg_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<uint16_t> e(e_.size());
  for (size_t i = 0; i < e_.size(); ++i) e[i] = std::max(e_[i], o.e_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::gcd(const Monomial& o) const {
  std::vector<uint16_t> e(e_.size());
  for (size_t i = 0; i < e_.size(); ++i) e[i] = std::min(e_[i], o.e_[i]);
  return Monomial(std::move(e));
}

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool LexGreater::operator()(const Monomial& a, const Monomial& b) const {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

PolyExpr::PolyExpr(const Scalar& c) : syms_(Symbols::empty()) {
  if (!c.is_zero()) terms_.emplace(Monomial(0), c);
}

PolyExpr PolyExpr::variable(const std::string& name, const Symbols* syms) {
  int idx = syms->index(name);
  if (idx < 0) throw UnknownSymbol(name);
  PolyExpr p;
  p.syms_ = syms;
  Monomial m(syms->size());
  m.set(idx, 1);
  p.terms_.emplace(m, Scalar(1));
  return p;
}

PolyExpr PolyExpr::from_terms(const Symbols* syms, Terms terms) {
  PolyExpr p;
  p.syms_ = syms;
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
  p.terms_ = std::move(terms);
  return p;
}

bool PolyExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar PolyExpr::constant_term() const {
  if (terms_.empty()) return Scalar(0);
  auto last = std::prev(terms_.end());
  if (last->first.is_one()) return last->second;
  return Scalar(0);
}

unsigned PolyExpr::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

const Field* PolyExpr::field() const {
  const Field* f = Field::rational();
  for (auto& [m, c] : terms_) f = join_fields(f, c.field());
  return f;
}

std::vector<size_t> PolyExpr::used_variables() const {
  std::vector<bool> used(syms_->size(), false);
  for (auto& [m, c] : terms_)
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) used[i] = true;
  std::vector<size_t> out;
  for (size_t i = 0; i < used.size(); ++i)
    if (used[i]) out.push_back(i);
  return out;
}

PolyExpr PolyExpr::rebase(const Symbols* syms) const {
  if (syms == syms_) return *this;
  std::vector<int> map(syms_->size());
  for (size_t i = 0; i < syms_->size(); ++i) map[i] = syms->index(syms_->names()[i]);
  PolyExpr p;
  p.syms_ = syms;
  for (auto& [m, c] : terms_) {
    Monomial nm(syms->size());
    for (size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (map[i] < 0) throw UnknownSymbol(syms_->names()[i]);
      nm.set(map[i], m[i]);
    }
    p.terms_.emplace_hint(p.terms_.end(), std::move(nm), c);
  }
  return p;
}

void PolyExpr::align(PolyExpr& o) {
  if (syms_ == o.syms_) return;
  const Symbols* s = join_symbols(syms_, o.syms_);
  if (s != syms_) *this = rebase(s);
  if (s != o.syms_) o = o.rebase(s);
}

PolyExpr PolyExpr::operator-() const {
  PolyExpr r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

PolyExpr& PolyExpr::operator+=(const PolyExpr& o) {
  if (o.terms_.empty()) return *this;
  if (syms_ != o.syms_) {
    PolyExpr b = o;
    align(b);
    return *this += b;
  }
  for (auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

PolyExpr& PolyExpr::operator-=(const PolyExpr& o) {
  if (o.terms_.empty()) return *this;
  if (syms_ != o.syms_) {
    PolyExpr b = o;
    align(b);
    return *this -= b;
  }
  for (auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

PolyExpr& PolyExpr::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

void PolyExpr::add_scaled(const Scalar& c, const Monomial& mono, const PolyExpr& o) {
  for (auto& [m, v] : o.terms_) {
    Scalar prod = v * c;
    auto [it, inserted] = terms_.emplace(m * mono, prod);
    if (!inserted) {
      it->second += prod;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
}

PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) {
  if (a.terms_.empty() || b.terms_.empty()) return PolyExpr();
  if (a.is_constant()) {
    PolyExpr r = b;
    return r *= a.terms_.begin()->second;
  }
  if (b.is_constant()) {
    PolyExpr r = a;
    return r *= b.terms_.begin()->second;
  }
  if (a.syms_ != b.syms_) {
    PolyExpr x = a, y = b;
    x.align(y);
    return x * y;
  }
  PolyExpr r;
  r.syms_ = a.syms_;
  for (auto& [m, c] : a.terms_) r.add_scaled(c, m, b);
  return r;
}

PolyExpr& PolyExpr::operator*=(const PolyExpr& o) {
  *this = *this * o;
  return *this;
}

PolyExpr PolyExpr::pow(unsigned k) const {
  PolyExpr r(Scalar(1)), base = *this;
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

std::optional<PolyExpr> PolyExpr::divide_exact(const PolyExpr& d) const {
  if (d.is_zero()) throw DivideByZero("polynomial division by zero");
  if (is_zero()) return PolyExpr();
  if (d.is_constant()) {
    PolyExpr r = *this;
    return r *= d.terms_.begin()->second.inverse();
  }
  PolyExpr rem = *this, div = d;
  rem.align(div);
  PolyExpr q;
  q.syms_ = rem.syms_;
  const Monomial& lm = div.leading_monomial();
  Scalar lc_inv = div.leading_coeff().inverse();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    Monomial t = rm / lm;
    Scalar c = rem.leading_coeff() * lc_inv;
    q.terms_.emplace(t, c);
    rem.add_scaled(-c, t, div);
  }
  return q;
}

Monomial PolyExpr::monomial_content() const {
  if (terms_.empty()) return Monomial(syms_->size());
  Monomial g = terms_.begin()->first;
  for (auto& [m, c] : terms_) {
    g = g.gcd(m);
    if (g.is_one()) break;
  }
  return g;
}

PolyExpr PolyExpr::divide_monomial(const Monomial& mono) const {
  if (mono.is_one()) return *this;
  PolyExpr r;
  r.syms_ = syms_;
  for (auto& [m, c] : terms_) r.terms_.emplace(m / mono, c);
  return r;
}

bool operator==(const PolyExpr& a, const PolyExpr& b) {
  if (a.syms_ == b.syms_) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (auto& [m, c] : a.terms_) {
      if (m != it->first || c != it->second) return false;
      ++it;
    }
    return true;
  }
  return (a - b).is_zero();
}

std::string monomial_str(const Monomial& m, const Symbols* syms) {
  std::string out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += "*";
    out += syms->names()[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string PolyExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [m, c] : terms_) {
    std::string term;
    if (m.is_one()) {
      term = c.str();
    } else {
      std::string ms = monomial_str(m, syms_);
      if (c.is_one())
        term = ms;
      else if ((-c).is_one())
        term = "-" + ms;
      else
        term = c.str() + "*" + ms;
    }
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out;
}

}  // namespace rbsuper
