#include "rbsuper/operators/operators.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "rbsuper/errors.hpp"
#include "rbsuper/exactmath/parse.hpp"

namespace rbsuper {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void add_signed(Vec& acc, int sign, const Vec& v) {
  for (size_t i = 0; i < acc.size(); ++i)
    if (!v[i].is_zero()) acc[i] += sign == 1 ? v[i] : -v[i];
}

int vec_parity(const Vec& x, const std::vector<int>& parity) {
  int p = -1;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (p >= 0 && p != parity[i]) throw InputError("element is not homogeneous");
    p = parity[i];
  }
  return p < 0 ? 0 : p;
}

}  // namespace

Vec EvenMap::image(size_t i) const {
  Vec v(rows());
  for (size_t k = 0; k < rows(); ++k) v[k] = at(k, i);
  return v;
}

Vec EvenMap::apply(const Vec& x) const {
  if (x.size() != cols()) throw DimensionMismatch("map applied to a vector of the wrong length");
  Vec v(rows());
  for (size_t i = 0; i < cols(); ++i) {
    if (x[i].is_zero()) continue;
    for (size_t k = 0; k < rows(); ++k)
      if (!at(k, i).is_zero()) v[k] += x[i] * at(k, i);
  }
  return v;
}

bool EvenMap::respects_grading() const {
  for (size_t k = 0; k < rows(); ++k)
    for (size_t i = 0; i < cols(); ++i)
      if ((cod_[k] ^ dom_[i]) != parity_ && !at(k, i).is_zero()) return false;
  return true;
}

EvenMap EvenMap::scaled(const RatExpr& c) const {
  EvenMap r = *this;
  for (auto& e : r.m_)
    if (!e.is_zero()) e *= c;
  return r;
}

EvenMap EvenMap::substitute(const std::map<std::string, RatExpr>& values) const {
  EvenMap r = *this;
  for (auto& e : r.m_)
    if (!e.is_zero()) e = e.substitute(values);
  return r;
}

bool operator==(const EvenMap& a, const EvenMap& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (size_t i = 0; i < a.m_.size(); ++i)
    if (a.m_[i] != b.m_[i]) return false;
  return true;
}

EvenMap zero_map(const GradedBasis& dom, const GradedBasis& cod) { return EvenMap(dom.parity, cod.parity); }

EvenMap identity_map(const GradedBasis& b) {
  EvenMap m(b.parity, b.parity);
  for (size_t i = 0; i < b.size(); ++i) m.at(i, i) = RatExpr(1);
  return m;
}

EvenMap compose(const EvenMap& f, const EvenMap& g) {
  if (f.cols() != g.rows()) throw DimensionMismatch("cannot compose maps of these shapes");
  EvenMap r(g.dom_parity(), f.cod_parity(), f.parity() ^ g.parity());
  for (size_t i = 0; i < g.cols(); ++i) {
    Vec v = f.apply(g.image(i));
    for (size_t k = 0; k < r.rows(); ++k) r.at(k, i) = v[k];
  }
  return r;
}

EvenMap direct_sum(const EvenMap& r, const EvenMap& rv) {
  std::vector<int> dom = r.dom_parity(), cod = r.cod_parity();
  dom.insert(dom.end(), rv.dom_parity().begin(), rv.dom_parity().end());
  cod.insert(cod.end(), rv.cod_parity().begin(), rv.cod_parity().end());
  EvenMap s(dom, cod);
  for (size_t k = 0; k < r.rows(); ++k)
    for (size_t i = 0; i < r.cols(); ++i) s.at(k, i) = r.at(k, i);
  for (size_t k = 0; k < rv.rows(); ++k)
    for (size_t i = 0; i < rv.cols(); ++i) s.at(r.rows() + k, r.cols() + i) = rv.at(k, i);
  return s;
}

std::string role_name(Role r) {
  switch (r) {
    case Role::rota_baxter: return "rota-baxter";
    case Role::o_operator: return "o-operator";
    case Role::extended_o_operator: return "extended-o-operator";
  }
  return "?";
}

Role parse_role(const std::string& s) {
  if (s == "rota-baxter" || s.empty()) return Role::rota_baxter;
  if (s == "o-operator") return Role::o_operator;
  if (s == "extended-o-operator") return Role::extended_o_operator;
  throw InputError("unknown operator role '" + s + "'");
}

OperatorFamily OperatorFamily::substitute(const std::map<std::string, RatExpr>& values) const {
  OperatorFamily o = *this;
  o.map = map.substitute(values);
  if (modification) o.modification = modification->substitute(values);
  if (module_map) o.module_map = module_map->substitute(values);
  for (auto& c : o.constraints) c = c.substitute(values);
  std::vector<std::string> keep;
  for (auto& n : params->names())
    if (!values.count(n)) keep.push_back(n);
  o.params = Symbols::make(keep);
  o.pivots.erase(std::remove_if(o.pivots.begin(), o.pivots.end(),
                                [&](const Pivot& p) { return values.count(p.param) > 0; }),
                 o.pivots.end());
  return o;
}

namespace {

const std::set<std::string> kMetaKeys = {"name",      "algebra", "role",  "weight", "convention",
                                         "parameters", "constraints", "pivots", "note"};

// `R(e1)` -> ("R", "e1")
bool split_image_key(const std::string& lhs, std::string& fn, std::string& arg) {
  size_t open = lhs.find('('), close = lhs.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) return false;
  fn = trim(std::string_view(lhs).substr(0, open));
  arg = trim(std::string_view(lhs).substr(open + 1, close - open - 1));
  return !fn.empty() && !arg.empty();
}

void fill_map(const TextSection& s, EvenMap& m, const GradedBasis& dom, const GradedBasis& cod,
              const Symbols* syms, const Field* f, bool skip_meta) {
  std::set<int> seen;
  for (auto& l : s.lines) {
    if (skip_meta && kMetaKeys.count(l.lhs)) continue;
    std::string fn, arg;
    if (!split_image_key(l.lhs, fn, arg))
      throw InputError("line " + std::to_string(l.line) + ": expected 'R(e_i) = ...'");
    int i = dom.index(arg);
    if (i < 0) throw InputError("line " + std::to_string(l.line) + ": unknown basis element '" + arg + "'");
    if (!seen.insert(i).second) throw InputError("line " + std::to_string(l.line) + ": image of " + arg + " given twice");
    Vec v;
    try {
      v = parse_linear(l.rhs, syms, f, cod.names);
    } catch (const SyntaxError& e) {
      throw InputError("line " + std::to_string(l.line) + ": " + e.what());
    } catch (const UnknownSymbol& e) {
      throw InputError("line " + std::to_string(l.line) + ": " + e.what());
    }
    for (size_t k = 0; k < cod.size(); ++k) m.at(k, i) = v[k];
  }
}

bool single_param_cell(const RatExpr& e, const Symbols* syms, const std::string& p, Scalar& scale) {
  if (!e.is_polynomial() || e.num().num_terms() != 1) return false;
  const Monomial& m = e.num().leading_monomial();
  if (m.degree() != 1) return false;
  int idx = e.num().symbols()->index(p);
  if (idx < 0 || m[idx] != 1) return false;
  (void)syms;
  scale = e.num().leading_coeff();
  return true;
}

}  // namespace

void derive_pivots(OperatorFamily& op) {
  op.pivots.clear();
  op.unpivoted.clear();
  for (auto& p : op.params->names()) {
    bool found = false;
    for (size_t i = 0; i < op.map.cols() && !found; ++i)
      for (size_t k = 0; k < op.map.rows() && !found; ++k) {
        Scalar c;
        if (single_param_cell(op.map.at(k, i), op.params, p, c)) {
          op.pivots.push_back({p, k, i, c});
          found = true;
        }
      }
    if (!found) op.unpivoted.push_back(p);
  }
}

OperatorFamily parse_operator(const std::vector<TextSection>& group, const SuperAlgebra& a,
                              const ModuleData* m, bool require_even) {
  if (group.empty() || group[0].name != "operator") throw InputError("operator group must start with [operator]");
  const TextSection& s = group[0];
  OperatorFamily op;
  op.name = s.get("name", "R");
  op.algebra = s.get("algebra", a.name);
  op.role = parse_role(s.get("role"));
  op.note = s.get("note");
  std::string conv = s.get("convention", "canonical");
  if (conv != "canonical" && conv != "iden-rota") throw InputError("convention must be canonical or iden-rota");
  op.iden_rota = conv == "iden-rota";

  const GradedBasis* dom = &a.basis;
  if (op.role != Role::rota_baxter) {
    if (!m) throw InputError("operator '" + op.name + "' needs a [module] in the algebra file");
    dom = &m->basis;
  }

  std::set<std::string> skip(a.basis.names.begin(), a.basis.names.end());
  if (m) skip.insert(m->basis.names.begin(), m->basis.names.end());
  for (auto& n : a.params->names()) skip.insert(n);
  std::vector<std::string> own;
  if (const TextLine* p = s.find("parameters")) {
    own = split_list(p->rhs);
  } else {
    auto scan = [&](const std::string& text) {
      for (auto& id : scan_identifiers(text)) {
        if (skip.count(id) || id == "t" || (id == "i" && a.field->has_i_alias())) continue;
        if (std::find(own.begin(), own.end(), id) == own.end()) own.push_back(id);
      }
    };
    for (auto& sec : group)
      for (auto& l : sec.lines)
        if (!kMetaKeys.count(l.lhs)) scan(l.rhs);
    scan(s.get("constraints"));
  }
  op.params = Symbols::make(own);
  const Symbols* syms = join_symbols(a.params, op.params);

  RatExpr w = parse_expr(s.get("weight", "0"), Symbols::empty(), a.field);
  if (!w.is_constant()) throw InputError("weight must be a constant");
  op.weight = op.iden_rota ? -w.constant_value() : w.constant_value();

  for (auto& c : split_list(s.get("constraints"))) op.constraints.push_back(parse_expr(c, syms, a.field));

  op.map = EvenMap(dom->parity, a.basis.parity);
  fill_map(s, op.map, *dom, a.basis, syms, a.field, true);
  for (size_t g = 1; g < group.size(); ++g) {
    const TextSection& sec = group[g];
    if (sec.name == "operator.modification") {
      if (!m) throw InputError("[operator.modification] needs a module");
      EvenMap t(m->basis.parity, a.basis.parity);
      fill_map(sec, t, m->basis, a.basis, syms, a.field, false);
      op.modification = std::move(t);
    } else if (sec.name == "operator.module_map") {
      if (!m) throw InputError("[operator.module_map] needs a module");
      EvenMap t(m->basis.parity, m->basis.parity);
      fill_map(sec, t, m->basis, m->basis, syms, a.field, false);
      op.module_map = std::move(t);
    } else {
      throw InputError("unknown section [" + sec.name + "]");
    }
  }
  if (require_even && !op.map.respects_grading()) throw InputError("operator '" + op.name + "' is not an even map");
  if (op.modification && !op.modification->respects_grading())
    throw InputError("modification of '" + op.name + "' is not even");
  if (op.module_map && !op.module_map->respects_grading())
    throw InputError("module map of '" + op.name + "' is not even");

  std::string piv = s.get("pivots");
  if (piv.empty()) {
    derive_pivots(op);
  } else {
    for (auto& item : split_list(piv)) {
      // a1:R[k][i]
      size_t colon = item.find(':');
      size_t b1 = item.find('['), e1 = item.find(']'), b2 = item.find('[', e1), e2 = item.find(']', b2);
      if (colon == std::string::npos || b1 == std::string::npos || e2 == std::string::npos)
        throw InputError("pivot '" + item + "' must read name:R[k][i]");
      Pivot p;
      p.param = trim(std::string_view(item).substr(0, colon));
      p.row = std::stoul(item.substr(b1 + 1, e1 - b1 - 1)) - 1;
      p.col = std::stoul(item.substr(b2 + 1, e2 - b2 - 1)) - 1;
      if (p.row >= op.map.rows() || p.col >= op.map.cols()) throw InputError("pivot '" + item + "' is out of range");
      if (!single_param_cell(op.map.at(p.row, p.col), op.params, p.param, p.scale))
        throw InputError("pivot cell of '" + p.param + "' is not a multiple of it");
      op.pivots.push_back(p);
    }
    for (auto& n : op.params->names()) {
      bool has = false;
      for (auto& p : op.pivots) has = has || p.param == n;
      if (!has) op.unpivoted.push_back(n);
    }
  }
  return op;
}

namespace {

void render_map(std::ostringstream& os, const std::string& fn, const EvenMap& m, const GradedBasis& dom,
                const GradedBasis& cod) {
  for (size_t i = 0; i < m.cols(); ++i) {
    Vec v = m.image(i);
    if (!is_zero(v)) os << fn << "(" << dom.names[i] << ") = " << linear_str(v, cod.names) << "\n";
  }
}

}  // namespace

std::string render_operator(const OperatorFamily& op, const SuperAlgebra& a, const ModuleData* m) {
  std::ostringstream os;
  os << "[operator]\nname = " << op.name << "\nalgebra = " << op.algebra << "\nrole = " << role_name(op.role)
     << "\nweight = " << op.written_weight().str() << "\n";
  if (op.iden_rota) os << "convention = iden-rota\n";
  std::string ps;
  for (auto& n : op.params->names()) ps += (ps.empty() ? "" : ", ") + n;
  os << "parameters = " << ps << "\n";
  if (!op.constraints.empty()) {
    os << "constraints = ";
    for (size_t i = 0; i < op.constraints.size(); ++i) os << (i ? ", " : "") << op.constraints[i].str();
    os << "\n";
  }
  if (!op.pivots.empty()) {
    os << "pivots = ";
    for (size_t i = 0; i < op.pivots.size(); ++i)
      os << (i ? ", " : "") << op.pivots[i].param << ":R[" << op.pivots[i].row + 1 << "][" << op.pivots[i].col + 1
         << "]";
    os << "\n";
  }
  if (!op.note.empty()) os << "note = " << op.note << "\n";
  const GradedBasis& dom = op.role == Role::rota_baxter ? a.basis : m->basis;
  render_map(os, op.role == Role::rota_baxter ? "R" : "T", op.map, dom, a.basis);
  if (op.modification) {
    os << "\n[operator.modification]\n";
    render_map(os, "T'", *op.modification, m->basis, a.basis);
  }
  if (op.module_map) {
    os << "\n[operator.module_map]\n";
    render_map(os, "R", *op.module_map, m->basis, m->basis);
  }
  return os.str();
}

EvenMap mult_operator(const SuperAlgebra& a, MultSide side, const Vec& x, size_t table) {
  if (x.size() != a.dim()) throw DimensionMismatch("element has the wrong length");
  if (side == MultSide::adjoint && a.kind != Kind::lie) throw KindMismatch("ad is defined for Lie superalgebras");
  int px = vec_parity(x, a.basis.parity);
  EvenMap m(a.basis.parity, a.basis.parity, px);
  const StructureTable& t = a.table(table);
  for (size_t j = 0; j < a.dim(); ++j) {
    Vec v;
    if (side == MultSide::right) {
      v = product(t, unit_vec(a.dim(), j), x);
      if (ksign(px, a.basis.p(j)) == -1)
        for (auto& e : v) e = -e;
    } else {
      v = product(t, x, unit_vec(a.dim(), j));
    }
    for (size_t k = 0; k < a.dim(); ++k) m.at(k, j) = v[k];
  }
  return m;
}

CheckReport check_rb(const SuperAlgebra& a, const EvenMap& r, const Scalar& weight, const CheckOptions& opt,
                     const TupleFilter& filter) {
  auto t0 = Clock::now();
  size_t n = a.dim();
  if (r.rows() != n || r.cols() != n) throw DimensionMismatch("operator shape does not match the algebra");
  CheckReport rep;
  rep.subject = a.name;
  // The identity is homogeneous of degree two in R once the weight term is
  // scaled along: N = D R satisfies it with weight D w exactly when R does.
  EvenMap N = r;
  PolyExpr d = clear_denominators({&N.raw()});
  RatExpr w = RatExpr(weight) * RatExpr(d);
  PolyExpr d2 = d * d;
  std::vector<Vec> img(n);
  for (size_t i = 0; i < n; ++i) img[i] = N.image(i);
  bool lie = a.kind == Kind::lie;
  std::vector<std::string> axiom = {"rota-baxter"};
  if (a.kind == Kind::l_dendriform) axiom = {"rota-baxter-right", "rota-baxter-left"};
  std::vector<size_t> tup(2);
  for (size_t t = 0; t < a.tables.size(); ++t) {
    const StructureTable& T = a.table(t);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (rep.failures >= opt.max_failures) goto done;
        tup = {i, j};
        if (filter && !filter(tup)) continue;
        ++rep.checked;
        Vec lhs = product(T, img[i], img[j]);
        Vec inner = product_ve(T, img[i], j);
        if (lie)
          add_signed(inner, -ksign(a.basis.p(i), a.basis.p(j)), product_ve(T, img[j], i));
        else
          add_signed(inner, 1, product_ev(T, i, img[j]));
        if (!w.is_zero()) axpy(inner, w, T.product(i, j));
        Vec res = lhs - N.apply(inner);
        if (!is_zero(res)) record_residual(rep, axiom[t], tup, res, a.basis, a.basis.names, &d2);
      }
  }
done:
  rep.seconds = since(t0);
  return rep;
}

CheckReport check_rb(const SuperAlgebra& a, const OperatorFamily& op, const CheckOptions& opt) {
  if (op.role != Role::rota_baxter) throw InputError("'" + op.name + "' is not a Rota-Baxter operator");
  CheckReport rep = check_rb(a, op.map, op.weight, opt);
  rep.subject = a.name + "/" + op.name;
  return rep;
}

namespace {

// T : V -> A viewed as an operator on A (+) V that kills A.
EvenMap lift_to_sum(const EvenMap& t, const SuperAlgebra& a, const ModuleData& m) {
  std::vector<int> par = a.basis.parity;
  par.insert(par.end(), m.basis.parity.begin(), m.basis.parity.end());
  EvenMap s(par, par);
  size_t n = a.dim();
  for (size_t k = 0; k < n; ++k)
    for (size_t al = 0; al < m.dim(); ++al) s.at(k, n + al) = t.at(k, al);
  return s;
}

void check_o_shape(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t) {
  if (t.rows() != a.dim() || t.cols() != m.dim()) throw DimensionMismatch("T must map the module into the algebra");
  if (a.kind != m.kind) throw KindMismatch("module kind differs from algebra kind");
}

}  // namespace

CheckReport check_o_operator(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t, const Scalar& weight,
                             const CheckOptions& opt) {
  check_o_shape(a, m, t);
  if (!weight.is_zero() && !m.has_internal())
    throw MissingInternalProduct("nonzero weight needs a product on the module");
  SuperAlgebra s = semidirect(a, m);
  size_t n = a.dim();
  auto filter = [n](const std::vector<size_t>& tp) { return tp[0] >= n && tp[1] >= n; };
  CheckReport rep = check_rb(s, lift_to_sum(t, a, m), weight, opt, filter);
  // Report tuples by module index.
  for (auto& w : rep.witnesses) {
    w.axiom = "o-operator";
    for (auto& i : w.indices) i -= static_cast<int>(n);
  }
  rep.subject = a.name + " O-operator";
  return rep;
}

CheckReport check_extended_o_operator(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t,
                                      const EvenMap& tp, const Scalar& weight, const CheckOptions& opt) {
  auto t0 = Clock::now();
  check_o_shape(a, m, t);
  check_o_shape(a, m, tp);
  if (a.kind != Kind::associative && a.kind != Kind::pre_lie)
    throw KindMismatch("extended O-operators are defined for associative and pre-Lie kinds");
  CheckReport rep;
  rep.subject = a.name + " extended O-operator";
  SuperAlgebra s = semidirect(a, m);
  const StructureTable& S = s.table();
  size_t n = a.dim(), d = m.dim();
  EvenMap L = lift_to_sum(t, a, m), Lp = lift_to_sum(tp, a, m);
  RatExpr w(weight);
  const ActionTable& l = m.actions[0];
  const ActionTable& r = m.actions[1];
  for (size_t al = 0; al < d && rep.failures < opt.max_failures; ++al)
    for (size_t be = 0; be < d && rep.failures < opt.max_failures; ++be) {
      ++rep.checked;
      std::vector<size_t> tup = {al, be};
      if (!weight.is_zero()) {
        // w l(T'(u))v - w r(T'(v))u
        Vec c1(d);
        for (size_t i = 0; i < n; ++i)
          for (size_t g = 0; g < d; ++g) {
            if (!tp.at(i, al).is_zero() && !l.at(i, be, g).is_zero()) c1[g] += tp.at(i, al) * l.at(i, be, g);
            if (!tp.at(i, be).is_zero() && !r.at(i, al, g).is_zero()) c1[g] -= tp.at(i, be) * r.at(i, al, g);
          }
        c1 = w * c1;
        if (!is_zero(c1)) record_residual(rep, "extended-o-compatibility", tup, c1, m.basis, m.basis.names);
      }
      Vec u = unit_vec(n + d, n + al), v = unit_vec(n + d, n + be);
      Vec tu = L.apply(u), tv = L.apply(v);
      Vec lhs = product(S, tu, tv);
      Vec rhs = L.apply(product(S, tu, v) + product(S, u, tv));
      if (!weight.is_zero()) axpy(rhs, w, product(S, Lp.apply(u), Lp.apply(v)));
      Vec res = lhs - rhs;
      res.resize(n);
      if (!is_zero(res)) record_residual(rep, "extended-o-operator", tup, res, m.basis, a.basis.names);
    }
  rep.seconds = since(t0);
  return rep;
}

CheckReport check_rb_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& r, const EvenMap& rv,
                               const Scalar& weight, const CheckOptions& opt) {
  if (r.rows() != a.dim() || r.cols() != a.dim() || rv.rows() != m.dim() || rv.cols() != m.dim())
    throw DimensionMismatch("operator shapes do not match algebra and module");
  if (!weight.is_zero() && !m.has_internal())
    throw MissingInternalProduct("nonzero weight needs a product on the module");
  SuperAlgebra s = semidirect(a, m);
  size_t n = a.dim();
  auto filter = [n](const std::vector<size_t>& tp) { return (tp[0] >= n) != (tp[1] >= n); };
  CheckReport rep = check_rb(s, direct_sum(r, rv), weight, opt, filter);
  for (auto& w : rep.witnesses) w.axiom = "rota-baxter-module";
  rep.subject = a.name + " module operator";
  return rep;
}

CheckReport check_rb_morphism(const SuperAlgebra& a, const EvenMap& r, const SuperAlgebra& b, const EvenMap& rb,
                              const EvenMap& f, const CheckOptions& opt) {
  auto t0 = Clock::now();
  if (f.cols() != a.dim() || f.rows() != b.dim()) throw DimensionMismatch("f must map A to A'");
  if (r.rows() != a.dim() || rb.rows() != b.dim()) throw DimensionMismatch("operator shapes do not match");
  if (a.tables.size() != b.tables.size()) throw KindMismatch("algebras of different kinds");
  CheckReport rep;
  rep.subject = a.name + " -> " + b.name;
  for (size_t t = 0; t < a.tables.size(); ++t)
    for (size_t i = 0; i < a.dim() && rep.failures < opt.max_failures; ++i)
      for (size_t j = 0; j < a.dim() && rep.failures < opt.max_failures; ++j) {
        ++rep.checked;
        Vec res = f.apply(a.table(t).product(i, j)) - product(b.table(t), f.image(i), f.image(j));
        if (!is_zero(res)) record_residual(rep, "homomorphism", {i, j}, res, a.basis, b.basis.names);
      }
  EvenMap fr = compose(f, r), rf = compose(rb, f);
  for (size_t i = 0; i < a.dim() && rep.failures < opt.max_failures; ++i) {
    ++rep.checked;
    Vec res = fr.image(i) - rf.image(i);
    if (!is_zero(res)) record_residual(rep, "commutes-with-R", {i}, res, a.basis, b.basis.names);
  }
  rep.seconds = since(t0);
  return rep;
}

}  // namespace rbsuper
