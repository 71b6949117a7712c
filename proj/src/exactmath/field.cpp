#include "rbsuper/exactmath/field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "rbsuper/errors.hpp"

namespace rbsuper {

namespace {

using UPoly = std::vector<Rational>;  // low to high

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// a = q*b + r
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    size_t shift = r.size() - b.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

struct Registry {
  std::mutex mu;
  std::map<std::vector<std::string>, std::unique_ptr<Field>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

std::string rational_str(const Rational& q) { return q.get_str(); }

const Field* Field::rational() {
  static const Field* f = make({Rational(0), Rational(1)});
  return f;
}

const Field* Field::gaussian() {
  static const Field* f = make({Rational(1), Rational(0), Rational(1)});
  return f;
}

const Field* Field::make(std::vector<Rational> m) {
  trim(m);
  if (m.size() < 2) throw InputError("field polynomial must have degree >= 1");
  Rational lead = m.back();
  for (auto& c : m) c /= lead;
  std::vector<std::string> key;
  for (auto& c : m) key.push_back(c.get_str());
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return it->second.get();
  auto* f = new Field(std::move(m));
  reg.fields.emplace(std::move(key), std::unique_ptr<Field>(f));
  return f;
}

bool Field::has_i_alias() const { return this == gaussian(); }

std::string Field::minpoly_text() const {
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = m_[k];
    if (c == 0) continue;
    Rational a = abs(c);
    bool neg = c < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? "-" : "+";
    bool show_coeff = k == 0 || a != 1;
    if (show_coeff) out += a.get_str();
    if (k > 0) {
      if (show_coeff) out += "*";
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

const Field* join_fields(const Field* a, const Field* b) {
  if (a == b) return a;
  if (a->is_rational()) return b;
  if (b->is_rational()) return a;
  throw FieldMismatch("cannot combine Q[t]/(" + a->minpoly_text() + ") with Q[t]/(" +
                      b->minpoly_text() + ")");
}

Scalar::Scalar(const Field* f) : f_(f), c_(f->degree(), Rational(0)) {}

Scalar::Scalar(const Rational& q, const Field* f) : Scalar(f) { c_[0] = q; }

Scalar Scalar::generator(const Field* f) {
  Scalar s(f);
  if (f->degree() == 1)
    s.c_[0] = -f->minpoly()[0];
  else
    s.c_[1] = 1;
  return s;
}

Scalar Scalar::from_coords(const Field* f, std::vector<Rational> c) {
  Scalar s(f);
  UPoly p = std::move(c);
  trim(p);
  if (static_cast<int>(p.size()) > f->degree()) {
    UPoly q, r;
    divmod(p, f->minpoly(), q, r);
    p = r;
  }
  for (size_t i = 0; i < p.size(); ++i) s.c_[i] = p[i];
  return s;
}

bool Scalar::is_zero() const {
  for (auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Scalar::is_one() const { return is_rational() && c_[0] == 1; }

Scalar Scalar::in_field(const Field* f) const {
  if (f == f_) return *this;
  if (!f_->is_rational()) throw FieldMismatch("scalar " + str() + " is not in Q[t]/(" + f->minpoly_text() + ")");
  return Scalar(c_[0], f);
}

void Scalar::unify(Scalar& o) {
  if (f_ == o.f_) return;
  const Field* f = join_fields(f_, o.f_);
  *this = in_field(f);
  o = o.in_field(f);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (f_ != o.f_) {
    Scalar b = o;
    unify(b);
    return *this += b;
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (f_ != o.f_) {
    Scalar b = o;
    unify(b);
    return *this -= b;
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (f_ != o.f_) {
    Scalar b = o;
    unify(b);
    return *this *= b;
  }
  if (c_.size() == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  if (o.is_rational()) {
    for (auto& c : c_) c *= o.c_[0];
    return *this;
  }
  *this = from_coords(f_, mul(c_, o.c_));
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivideByZero("division by the zero scalar");
  if (is_rational()) return Scalar(1 / c_[0], f_);
  // Extended Euclid: find u with u*a = 1 mod m.
  UPoly r0 = f_->minpoly(), r1 = c_;
  trim(r1);
  UPoly s0, s1 = {Rational(1)};
  while (!r1.empty()) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw DivideByZero(str() + " is a zero divisor modulo " + f_->minpoly_text());
  Rational g = r0[0];
  for (auto& c : s0) c /= g;
  return from_coords(f_, s0);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.f_ == b.f_) return a.c_ == b.c_;
  return (a - b).is_zero();
}

std::string Scalar::str() const {
  if (is_rational()) return c_[0].get_str();
  std::string out;
  for (size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = abs(c);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? "-" : "+";
    bool show = k == 0 || a != 1;
    if (show) out += a.get_str();
    if (k > 0) {
      if (show) out += "*";
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return "(" + out + ")";
}

}  // namespace rbsuper
