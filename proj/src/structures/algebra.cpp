#include "rbsuper/structures/algebra.hpp"

#include "rbsuper/errors.hpp"

namespace rbsuper {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::associative: return "associative";
    case Kind::lie: return "lie";
    case Kind::pre_lie: return "pre-lie";
    case Kind::l_dendriform: return "l-dendriform";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "associative") return Kind::associative;
  if (s == "lie") return Kind::lie;
  if (s == "pre-lie") return Kind::pre_lie;
  if (s == "l-dendriform") return Kind::l_dendriform;
  throw InputError("unknown algebra kind '" + s + "'");
}

size_t GradedBasis::num_even() const {
  size_t c = 0;
  for (int p : parity) c += p == 0;
  return c;
}

int GradedBasis::index(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

GradedBasis make_basis(const std::vector<std::string>& names, const std::vector<int>& parity) {
  if (names.size() != parity.size()) throw InputError("basis names and parities differ in length");
  GradedBasis b;
  for (int pass = 0; pass < 2; ++pass)
    for (size_t i = 0; i < names.size(); ++i)
      if (parity[i] == pass) {
        b.names.push_back(names[i]);
        b.parity.push_back(pass);
        b.permutation.push_back(static_cast<int>(i));
      }
  for (size_t i = 0; i < b.names.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (b.names[i] == b.names[j]) throw InputError("duplicate basis name '" + b.names[i] + "'");
  return b;
}

Vec StructureTable::product(size_t i, size_t j) const {
  return Vec(c_.begin() + (i * n_ + j) * n_, c_.begin() + (i * n_ + j + 1) * n_);
}

bool StructureTable::product_is_zero(size_t i, size_t j) const {
  for (size_t k = 0; k < n_; ++k)
    if (!at(i, j, k).is_zero()) return false;
  return true;
}

bool operator==(const StructureTable& a, const StructureTable& b) {
  if (a.n_ != b.n_) return false;
  for (size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

SuperAlgebra make_algebra(std::string name, Kind kind, GradedBasis basis, const Symbols* params,
                          const Field* field) {
  SuperAlgebra a;
  a.name = std::move(name);
  a.kind = kind;
  a.field = field;
  a.basis = std::move(basis);
  a.params = params;
  a.tables.assign(kind == Kind::l_dendriform ? 2 : 1, StructureTable(a.basis.size()));
  return a;
}

SuperAlgebra SuperAlgebra::pinned() const {
  if (pins.empty()) return *this;
  SuperAlgebra out = *this;
  std::vector<std::string> names;
  for (auto& n : params->names())
    if (!pins.count(n)) names.push_back(n);
  out.params = Symbols::make(names);
  for (auto& t : out.tables)
    for (auto& e : t.raw())
      if (!e.is_zero()) e = e.substitute(pins);
  for (auto& c : out.constraints) c = c.substitute(pins);
  out.pins.clear();
  return out;
}

size_t action_count(Kind k) {
  switch (k) {
    case Kind::lie: return 1;
    case Kind::l_dendriform: return 4;
    default: return 2;
  }
}

std::vector<std::string> action_names(Kind k) {
  switch (k) {
    case Kind::lie: return {"rho"};
    case Kind::l_dendriform: return {"l.right", "r.right", "l.left", "r.left"};
    default: return {"l", "r"};
  }
}

ModuleData regular_module(const SuperAlgebra& a, bool with_internal) {
  ModuleData m;
  m.kind = a.kind;
  m.basis = a.basis;
  size_t n = a.dim();
  auto left = [&](const StructureTable& t) {
    ActionTable l(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t al = 0; al < n; ++al)
        for (size_t b = 0; b < n; ++b) l.at(i, al, b) = t.at(i, al, b);
    return l;
  };
  auto right = [&](const StructureTable& t) {
    ActionTable r(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t al = 0; al < n; ++al) {
        int s = ksign(a.basis.p(i), a.basis.p(al));
        for (size_t b = 0; b < n; ++b) r.at(i, al, b) = s == 1 ? t.at(al, i, b) : -t.at(al, i, b);
      }
    return r;
  };
  switch (a.kind) {
    case Kind::lie: m.actions = {left(a.table())}; break;
    case Kind::l_dendriform:
      m.actions = {left(a.table(0)), right(a.table(0)), left(a.table(1)), right(a.table(1))};
      break;
    default: m.actions = {left(a.table()), right(a.table())};
  }
  if (with_internal) m.internal = a.tables;
  return m;
}

namespace {

GradedBasis concat(const GradedBasis& a, const GradedBasis& b) {
  GradedBasis out = a;
  for (size_t i = 0; i < b.size(); ++i) {
    out.names.push_back(b.names[i]);
    out.parity.push_back(b.parity[i]);
    out.permutation.push_back(static_cast<int>(a.size() + i));
  }
  return out;
}

const Symbols* symbols_of(const std::vector<RatExpr>& v, const Symbols* acc) {
  for (auto& e : v)
    if (!e.is_zero()) acc = join_symbols(acc, e.symbols());
  return acc;
}

}  // namespace

SuperAlgebra semidirect(const SuperAlgebra& a, const ModuleData& m) {
  if (a.kind != m.kind)
    throw KindMismatch("module of kind " + kind_name(m.kind) + " for a " + kind_name(a.kind) + " algebra");
  if (m.actions.size() != action_count(a.kind)) throw InputError("wrong number of action tables");
  size_t n = a.dim(), d = m.dim(), N = n + d;
  SuperAlgebra s;
  s.name = a.name + "+module";
  s.kind = a.kind;
  s.field = a.field;
  s.basis = concat(a.basis, m.basis);
  const Symbols* syms = a.params;
  for (auto& t : m.actions) syms = symbols_of(t.raw(), syms);
  for (auto& t : m.internal) syms = symbols_of(t.raw(), syms);
  s.params = syms;
  s.constraints = a.constraints;
  s.tables.assign(a.tables.size(), StructureTable(N));
  for (size_t t = 0; t < a.tables.size(); ++t) {
    StructureTable& T = s.tables[t];
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) T.at(i, j, k) = a.table(t).at(i, j, k);
    const ActionTable* l = nullptr;
    const ActionTable* r = nullptr;
    if (a.kind == Kind::l_dendriform) {
      l = &m.actions[2 * t];
      r = &m.actions[2 * t + 1];
    } else if (a.kind != Kind::lie) {
      l = &m.actions[0];
      r = &m.actions[1];
    } else {
      l = &m.actions[0];
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t al = 0; al < d; ++al) {
        int sg = ksign(a.basis.p(i), m.basis.p(al));
        for (size_t b = 0; b < d; ++b) {
          const RatExpr& lv = l->at(i, al, b);
          T.at(i, n + al, n + b) = lv;
          if (a.kind == Kind::lie) {
            T.at(n + al, i, n + b) = sg == 1 ? -lv : lv;
          } else {
            const RatExpr& rv = r->at(i, al, b);
            T.at(n + al, i, n + b) = sg == 1 ? rv : -rv;
          }
        }
      }
    if (m.has_internal())
      for (size_t al = 0; al < d; ++al)
        for (size_t be = 0; be < d; ++be)
          for (size_t g = 0; g < d; ++g) T.at(n + al, n + be, n + g) = m.internal.at(t).at(al, be, g);
  }
  return s;
}

ModuleData split_module(const SuperAlgebra& s, size_t n, const GradedBasis& mb, bool with_internal) {
  size_t d = mb.size();
  ModuleData m;
  m.kind = s.kind;
  m.basis = mb;
  for (size_t t = 0; t < s.tables.size(); ++t) {
    const StructureTable& T = s.tables[t];
    ActionTable l(n, d), r(n, d);
    for (size_t i = 0; i < n; ++i)
      for (size_t al = 0; al < d; ++al) {
        int sg = ksign(s.basis.p(i), mb.p(al));
        for (size_t b = 0; b < d; ++b) {
          l.at(i, al, b) = T.at(i, n + al, n + b);
          const RatExpr& v = T.at(n + al, i, n + b);
          r.at(i, al, b) = sg == 1 ? v : -v;
        }
      }
    m.actions.push_back(std::move(l));
    if (s.kind != Kind::lie) m.actions.push_back(std::move(r));
    if (with_internal) {
      StructureTable in(d);
      for (size_t al = 0; al < d; ++al)
        for (size_t be = 0; be < d; ++be)
          for (size_t g = 0; g < d; ++g) in.at(al, be, g) = T.at(n + al, n + be, n + g);
      m.internal.push_back(std::move(in));
    }
  }
  return m;
}

SuperAlgebra split_algebra(const SuperAlgebra& s, size_t n) {
  SuperAlgebra a = s;
  a.basis.names.resize(n);
  a.basis.parity.resize(n);
  a.basis.permutation.resize(n);
  for (size_t t = 0; t < s.tables.size(); ++t) {
    StructureTable T(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) T.at(i, j, k) = s.tables[t].at(i, j, k);
    a.tables[t] = std::move(T);
  }
  return a;
}

Vec zero_vec(size_t n) { return Vec(n); }

Vec unit_vec(size_t n, size_t i) {
  Vec v(n);
  v[i] = RatExpr(1);
  return v;
}

void axpy(Vec& y, const RatExpr& a, const Vec& x) {
  if (a.is_zero()) return;
  bool one = a.is_constant() && a.constant_value().is_one();
  for (size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += one ? x[i] : a * x[i];
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(const RatExpr& a, const Vec& x) {
  Vec r(x.size());
  axpy(r, a, x);
  return r;
}

bool is_zero(const Vec& v) {
  for (auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

Vec product(const StructureTable& t, const Vec& x, const Vec& y) {
  size_t n = t.dim();
  Vec r(n);
  for (size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (y[j].is_zero() || t.product_is_zero(i, j)) continue;
      RatExpr c = x[i] * y[j];
      for (size_t k = 0; k < n; ++k)
        if (!t.at(i, j, k).is_zero()) r[k] += c * t.at(i, j, k);
    }
  }
  return r;
}

Vec product_ev(const StructureTable& t, size_t i, const Vec& y) {
  size_t n = t.dim();
  Vec r(n);
  for (size_t j = 0; j < n; ++j) {
    if (y[j].is_zero()) continue;
    for (size_t k = 0; k < n; ++k)
      if (!t.at(i, j, k).is_zero()) r[k] += y[j] * t.at(i, j, k);
  }
  return r;
}

Vec product_ve(const StructureTable& t, const Vec& x, size_t j) {
  size_t n = t.dim();
  Vec r(n);
  for (size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t k = 0; k < n; ++k)
      if (!t.at(i, j, k).is_zero()) r[k] += x[i] * t.at(i, j, k);
  }
  return r;
}

Vec product_eval(const SuperAlgebra& a, const Vec& x, const Vec& y, size_t which) {
  if (x.size() != a.dim() || y.size() != a.dim()) throw DimensionMismatch("vector length != dim");
  return product(a.table(which), x, y);
}

Vec associator(const SuperAlgebra& a, const Vec& x, const Vec& y, const Vec& z, size_t which) {
  const StructureTable& t = a.table(which);
  return product(t, product(t, x, y), z) - product(t, x, product(t, y, z));
}

const Symbols* joined_symbols(const SuperAlgebra& a) {
  const Symbols* s = a.params;
  for (auto& t : a.tables) s = symbols_of(t.raw(), s);
  return s;
}

}  // namespace rbsuper
