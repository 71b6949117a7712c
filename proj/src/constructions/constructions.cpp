#include "rbsuper/constructions/constructions.hpp"

#include <functional>

#include "rbsuper/errors.hpp"

namespace rbsuper {

namespace {

const std::vector<std::pair<ConstructionId, const char*>> kNames = {
    {ConstructionId::commutator_lie, "commutator_lie"},
    {ConstructionId::assoc_rb_to_prelie_0, "assoc_rb_to_prelie_0"},
    {ConstructionId::assoc_rb_to_prelie_m1, "assoc_rb_to_prelie_m1"},
    {ConstructionId::assoc_rb_to_lie_m1, "assoc_rb_to_lie_m1"},
    {ConstructionId::lieadm_rb_to_prelie, "lieadm_rb_to_prelie"},
    {ConstructionId::prelie_rb_to_prelie, "prelie_rb_to_prelie"},
    {ConstructionId::lie_oop_to_prelie_on_module, "lie_oop_to_prelie_on_module"},
    {ConstructionId::assoc_oop_to_ldend_on_module, "assoc_oop_to_ldend_on_module"},
    {ConstructionId::prelie_oop_to_ldend_on_module, "prelie_oop_to_ldend_on_module"},
    {ConstructionId::rb_to_ldend, "rb_to_ldend"},
    {ConstructionId::ldend_to_prelie_vertical, "ldend_to_prelie_vertical"},
    {ConstructionId::ldend_to_prelie_horizontal, "ldend_to_prelie_horizontal"},
    {ConstructionId::ldend_to_lie, "ldend_to_lie"},
    {ConstructionId::transfer_oop_prelie_to_lie, "transfer_oop_prelie_to_lie"},
    {ConstructionId::transfer_oop_ldend_to_assoc, "transfer_oop_ldend_to_assoc"},
    {ConstructionId::transfer_oop_ldend_to_prelie, "transfer_oop_ldend_to_prelie"},
    {ConstructionId::induced_module_lie_to_prelie, "induced_module_lie_to_prelie"},
    {ConstructionId::induced_module_assoc_to_ldend, "induced_module_assoc_to_ldend"},
    {ConstructionId::induced_module_prelie_to_ldend, "induced_module_prelie_to_ldend"},
};

using Entry = std::function<Vec(size_t, size_t)>;

StructureTable build(size_t n, const Entry& f) {
  StructureTable t(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Vec v = f(i, j);
      for (size_t k = 0; k < n; ++k) t.at(i, j, k) = v[k];
    }
  return t;
}

void sub_scaled(Vec& acc, int sign, const Vec& v) {
  for (size_t k = 0; k < acc.size(); ++k)
    if (!v[k].is_zero()) acc[k] += sign == 1 ? v[k] : -v[k];
}

SuperAlgebra derived(const SuperAlgebra& a, const std::string& suffix, Kind kind, std::vector<StructureTable> tables,
                     const Symbols* params) {
  SuperAlgebra out;
  out.name = a.name + "." + suffix;
  out.kind = kind;
  out.field = a.field;
  out.basis = a.basis;
  out.tables = std::move(tables);
  out.params = params;
  out.constraints = a.constraints;
  out.pins = a.pins;
  return out;
}

std::string first_witness(const CheckReport& r) {
  if (r.witnesses.empty()) return "";
  const Witness& w = r.witnesses.front();
  std::string names;
  for (auto& n : w.names) names += (names.empty() ? "" : ",") + n;
  return " (" + w.axiom + " at (" + names + "): " + w.vector + ")";
}

void require(const CheckReport& r, const std::string& what) {
  if (!r.passed) throw InputError(what + first_witness(r));
}

void recheck(const CheckReport& r, const std::string& what) {
  if (!r.passed) throw ConstructionFailed(what + first_witness(r));
}

void recheck_algebra(const SuperAlgebra& out) {
  recheck(validate(out), out.name + " grading");
  recheck(check_axioms(out), out.name + " axioms");
}

bool associative_like(const SuperAlgebra& a) { return a.kind == Kind::associative || a.also_associative; }

// The input's own axioms; Lie-admissible inputs only need a Lie commutator.
void require_axioms(const SuperAlgebra& a) {
  require(validate(a), a.name + " is not graded");
  if (a.kind == Kind::associative && a.lie_admissible) return;
  require(check_axioms(a), a.name + " fails its axioms");
}

void require_kind(const SuperAlgebra& a, bool ok, const std::string& what) {
  if (!ok) throw KindMismatch(a.name + " is " + kind_name(a.kind) + "; " + what);
}

void require_square(const SuperAlgebra& a, const EvenMap& r) {
  if (r.rows() != a.dim() || r.cols() != a.dim()) throw DimensionMismatch("operator shape does not match " + a.name);
}

StructureTable commutator_table(const SuperAlgebra& a, size_t which = 0) {
  const StructureTable& t = a.table(which);
  return build(a.dim(), [&](size_t i, size_t j) {
    Vec v = t.product(i, j);
    sub_scaled(v, -ksign(a.basis.p(i), a.basis.p(j)), t.product(j, i));
    return v;
  });
}

// R(x)y - (-1)^{|x||y|} y R(x), minus xy when `minus_xy`.
StructureTable rb_commutator_table(const SuperAlgebra& a, const EvenMap& r, bool minus_xy) {
  const StructureTable& t = a.table();
  return build(a.dim(), [&](size_t i, size_t j) {
    Vec ri = r.image(i);
    Vec v = product_ve(t, ri, j);
    sub_scaled(v, -ksign(a.basis.p(i), a.basis.p(j)), product_ev(t, j, ri));
    if (minus_xy) sub_scaled(v, -1, t.product(i, j));
    return v;
  });
}

// Both L-dendriform tables of an O-operator on a module, over the module basis.
std::vector<StructureTable> oop_ldend_tables(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t,
                                             bool prelie) {
  size_t n = a.dim(), d = m.dim();
  const ActionTable& l = m.actions[0];
  const ActionTable& r = m.actions[1];
  // act(x, i, beta) = a(T(e_alpha)) applied to v_beta, with x = column alpha of T
  auto act = [&](const ActionTable& tab, size_t alpha, size_t beta) {
    Vec v(d);
    for (size_t i = 0; i < n; ++i) {
      if (t.at(i, alpha).is_zero()) continue;
      for (size_t g = 0; g < d; ++g)
        if (!tab.at(i, beta, g).is_zero()) v[g] += t.at(i, alpha) * tab.at(i, beta, g);
    }
    return v;
  };
  StructureTable right = build(d, [&](size_t al, size_t be) { return act(l, al, be); });
  StructureTable left = build(d, [&](size_t al, size_t be) {
    if (prelie) return RatExpr(-1) * act(r, al, be);
    return RatExpr(ksign(m.basis.p(al), m.basis.p(be))) * act(r, be, al);
  });
  return {std::move(right), std::move(left)};
}

SuperAlgebra module_algebra(const SuperAlgebra& a, const ModuleData& m, const std::string& suffix, Kind kind,
                            std::vector<StructureTable> tables, const EvenMap& t) {
  SuperAlgebra out = derived(a, suffix, kind, std::move(tables), symbols_with(a, {&t}));
  out.basis = m.basis;
  return out;
}

void require_oop(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t) {
  require_axioms(a);
  require(check_module(a, m), "module axioms fail");
  require(check_o_operator(a, m, t, Scalar(0)), "T is not a weight-zero O-operator");
}

StructureTable vertical_table(const SuperAlgebra& a) {
  return build(a.dim(), [&](size_t i, size_t j) {
    Vec v = a.table(0).product(i, j);
    sub_scaled(v, -ksign(a.basis.p(i), a.basis.p(j)), a.table(1).product(j, i));
    return v;
  });
}

StructureTable horizontal_table(const SuperAlgebra& a) {
  return build(a.dim(), [&](size_t i, size_t j) { return a.table(0).product(i, j) + a.table(1).product(i, j); });
}

// L-dendriform structure of R without any checks.
SuperAlgebra ldend_of(const SuperAlgebra& a, const EvenMap& r) {
  std::vector<StructureTable> tabs;
  ModuleData reg = regular_module(a);
  if (a.kind == Kind::associative)
    tabs = oop_ldend_tables(a, reg, r, false);
  else
    tabs = oop_ldend_tables(a, reg, r, true);
  return derived(a, "ldend", Kind::l_dendriform, std::move(tabs), symbols_with(a, {&r}));
}

ModuleData sum_actions(const ModuleData& m, const std::vector<std::pair<int, int>>& l_terms,
                       const std::vector<std::pair<int, int>>& r_terms, Kind kind) {
  // terms: (action index, sign)
  ModuleData out;
  out.kind = kind;
  out.basis = m.basis;
  auto combine = [&](const std::vector<std::pair<int, int>>& terms) {
    ActionTable t(m.actions[0].alg_dim(), m.dim());
    for (auto [idx, sign] : terms) {
      const auto& src = m.actions[idx].raw();
      auto& dst = t.raw();
      for (size_t q = 0; q < dst.size(); ++q)
        if (!src[q].is_zero()) dst[q] += sign == 1 ? src[q] : -src[q];
    }
    return t;
  };
  out.actions.push_back(combine(l_terms));
  if (!r_terms.empty()) out.actions.push_back(combine(r_terms));
  return out;
}

}  // namespace

std::string construction_name(ConstructionId id) {
  for (auto& [k, n] : kNames)
    if (k == id) return n;
  return "?";
}

ConstructionId parse_construction(const std::string& s) {
  for (auto& [k, n] : kNames)
    if (s == n) return k;
  throw UnknownId("no construction named '" + s + "'");
}

std::vector<ConstructionId> all_constructions() {
  std::vector<ConstructionId> out;
  for (auto& kn : kNames) out.push_back(kn.first);
  return out;
}

Scalar weight_minus_one() { return Scalar(-1); }

const Symbols* symbols_with(const SuperAlgebra& a, const std::vector<const EvenMap*>& maps) {
  const Symbols* s = a.params;
  for (auto* m : maps)
    for (auto& e : m->raw())
      if (!e.is_zero()) s = join_symbols(s, e.symbols());
  return s;
}

SuperAlgebra commutator_lie(const SuperAlgebra& a) {
  require_kind(a, a.kind == Kind::associative || a.kind == Kind::pre_lie, "expected associative or pre-Lie");
  require_axioms(a);
  SuperAlgebra out = derived(a, "lie", Kind::lie, {commutator_table(a)}, a.params);
  if (a.lie_admissible && !check_axioms(out).passed) throw NotLieAdmissible(a.name + " is not Lie-admissible");
  recheck_algebra(out);
  return out;
}

SuperAlgebra assoc_rb_to_prelie(const SuperAlgebra& a, const EvenMap& r, AssocMode mode) {
  require_kind(a, associative_like(a), "expected an associative superalgebra");
  require_square(a, r);
  require_axioms(a);
  Scalar w = mode == AssocMode::weight0 ? Scalar(0) : weight_minus_one();
  CheckReport rb = check_rb(a, r, w);
  if (!rb.passed) throw WeightMismatch("R is not a Rota-Baxter operator of weight " + w.str() + first_witness(rb));
  std::string suffix = mode == AssocMode::weight0 ? "prelie0" : "prelie_m1";
  SuperAlgebra out = derived(a, suffix, Kind::pre_lie, {rb_commutator_table(a, r, mode == AssocMode::weight_m1)},
                             symbols_with(a, {&r}));
  recheck_algebra(out);
  return out;
}

SuperAlgebra assoc_rb_to_lie_m1(const SuperAlgebra& a, const EvenMap& r) {
  SuperAlgebra pre = assoc_rb_to_prelie(a, r, AssocMode::weight_m1);
  SuperAlgebra out = derived(a, "lie_m1", Kind::lie, {commutator_table(pre)}, pre.params);
  recheck_algebra(out);
  recheck(check_rb(out, r, weight_minus_one()), "R on " + out.name);
  return out;
}

SuperAlgebra lieadm_rb_to_prelie(const SuperAlgebra& a, const EvenMap& r) {
  require_kind(a, a.kind == Kind::associative || a.kind == Kind::lie || a.also_associative,
               "expected an associative, Lie-admissible or Lie superalgebra");
  require_square(a, r);
  require(validate(a), a.name + " is not graded");
  SuperAlgebra lie;
  if (a.kind == Kind::lie) {
    require(check_axioms(a), a.name + " fails super-Jacobi");
    lie = a;
  } else {
    lie = derived(a, "lie", Kind::lie, {commutator_table(a)}, a.params);
    if (!check_axioms(lie).passed) throw NotLieAdmissible(a.name + " is not Lie-admissible");
  }
  require(check_rb(a, r, Scalar(0)), "R is not a weight-zero Rota-Baxter operator");
  const StructureTable& br = lie.table();
  SuperAlgebra out = derived(a, "prelie", Kind::pre_lie,
                             {build(a.dim(), [&](size_t i, size_t j) { return product_ve(br, r.image(i), j); })},
                             symbols_with(a, {&r}));
  recheck_algebra(out);
  return out;
}

SuperAlgebra prelie_rb_to_prelie(const SuperAlgebra& a, const EvenMap& r) {
  require_kind(a, a.kind == Kind::pre_lie, "expected a pre-Lie superalgebra");
  require_square(a, r);
  require_axioms(a);
  require(check_rb(a, r, Scalar(0)), "R is not a weight-zero Rota-Baxter operator");
  SuperAlgebra out = derived(a, "prelie_rb", Kind::pre_lie, {rb_commutator_table(a, r, false)}, symbols_with(a, {&r}));
  recheck_algebra(out);
  recheck(check_rb(out, r, Scalar(0)), "R on " + out.name);
  return out;
}

SuperAlgebra lie_oop_to_prelie_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t) {
  require_kind(a, a.kind == Kind::lie, "expected a Lie superalgebra");
  require_oop(a, m, t);
  // u o v = rho(T(u)) v is the right table of the associative-shaped builder.
  ModuleData as_bimodule = m;
  as_bimodule.actions.push_back(ActionTable(a.dim(), m.dim()));
  auto tabs = oop_ldend_tables(a, as_bimodule, t, true);
  SuperAlgebra out = module_algebra(a, m, "module_prelie", Kind::pre_lie, {std::move(tabs[0])}, t);
  recheck_algebra(out);
  return out;
}

SuperAlgebra assoc_oop_to_ldend_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t) {
  require_kind(a, a.kind == Kind::associative, "expected an associative superalgebra");
  require_oop(a, m, t);
  SuperAlgebra out = module_algebra(a, m, "module_ldend", Kind::l_dendriform, oop_ldend_tables(a, m, t, false), t);
  recheck_algebra(out);
  return out;
}

PrelieOopResult prelie_oop_to_ldend_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t) {
  require_kind(a, a.kind == Kind::pre_lie, "expected a pre-Lie superalgebra");
  require_oop(a, m, t);
  PrelieOopResult res;
  res.ldend = module_algebra(a, m, "module_ldend", Kind::l_dendriform, oop_ldend_tables(a, m, t, true), t);
  recheck_algebra(res.ldend);
  res.vertical = ldend_to_prelie(res.ldend, PrelieSplit::vertical);
  // T(u o v) = T(u) o T(v): T is an algebra map from the vertical product.
  CheckReport& h = res.homomorphism;
  h.subject = "T homomorphism";
  for (size_t al = 0; al < m.dim(); ++al)
    for (size_t be = 0; be < m.dim(); ++be) {
      ++h.checked;
      Vec lhs = t.apply(res.vertical.table().product(al, be));
      Vec rhs = product(a.table(), t.image(al), t.image(be));
      Vec res_v = lhs - rhs;
      if (!is_zero(res_v)) record_residual(h, "homomorphism", {al, be}, res_v, m.basis, a.basis.names);
    }
  recheck(h, "T is not a homomorphism");
  return res;
}

SuperAlgebra rb_to_ldend(const SuperAlgebra& a, const EvenMap& r) {
  require_kind(a, a.kind == Kind::associative || a.kind == Kind::pre_lie, "expected associative or pre-Lie");
  require_square(a, r);
  require_axioms(a);
  require(check_rb(a, r, Scalar(0)), "R is not a weight-zero Rota-Baxter operator");
  SuperAlgebra out = ldend_of(a, r);
  recheck_algebra(out);
  return out;
}

SuperAlgebra ldend_to_prelie(const SuperAlgebra& a, PrelieSplit which) {
  require_kind(a, a.kind == Kind::l_dendriform, "expected an L-dendriform superalgebra");
  require_axioms(a);
  bool v = which == PrelieSplit::vertical;
  SuperAlgebra out = derived(a, v ? "vertical" : "horizontal", Kind::pre_lie, {v ? vertical_table(a) : horizontal_table(a)},
                             a.params);
  recheck_algebra(out);
  return out;
}

SuperAlgebra ldend_to_lie(const SuperAlgebra& a) {
  require_kind(a, a.kind == Kind::l_dendriform, "expected an L-dendriform superalgebra");
  require_axioms(a);
  SuperAlgebra h = derived(a, "horizontal", Kind::pre_lie, {horizontal_table(a)}, a.params);
  SuperAlgebra out = derived(a, "lie", Kind::lie, {commutator_table(h)}, a.params);
  recheck_algebra(out);
  return out;
}

TransferResult transfer_oop(TransferKind kind, const SuperAlgebra& a, const ModuleData& m, const EvenMap& t) {
  TransferResult res;
  switch (kind) {
    case TransferKind::prelie_to_lie:
      require_kind(a, a.kind == Kind::pre_lie, "expected a pre-Lie superalgebra");
      require_oop(a, m, t);
      res.target = commutator_lie(a);
      res.module = sum_actions(m, {{0, 1}, {1, -1}}, {}, Kind::lie);
      break;
    case TransferKind::ldend_to_assoc:
      require_kind(a, a.kind == Kind::l_dendriform, "expected an L-dendriform superalgebra");
      require_oop(a, m, t);
      res.target = derived(a, "assoc", Kind::associative, {horizontal_table(a)}, a.params);
      require(check_axioms(res.target), a.name + " has a non-associative horizontal product");
      res.module = sum_actions(m, {{0, 1}, {2, 1}}, {{1, 1}, {3, 1}}, Kind::associative);
      break;
    case TransferKind::ldend_to_prelie:
      require_kind(a, a.kind == Kind::l_dendriform, "expected an L-dendriform superalgebra");
      require_oop(a, m, t);
      res.target = ldend_to_prelie(a, PrelieSplit::vertical);
      res.module = sum_actions(m, {{0, 1}, {3, -1}}, {{1, 1}, {2, -1}}, Kind::pre_lie);
      break;
  }
  res.report = check_module(res.target, res.module);
  res.report.merge(check_o_operator(res.target, res.module, t, Scalar(0)));
  res.report.subject = "transferred O-operator on " + res.target.name;
  return res;
}

InducedResult induced_module(InducedKind kind, const SuperAlgebra& a, const EvenMap& r, const ModuleData& m,
                             const EvenMap& rv) {
  Kind want = kind == InducedKind::lie_to_prelie      ? Kind::lie
              : kind == InducedKind::assoc_to_ldend ? Kind::associative
                                                    : Kind::pre_lie;
  require_kind(a, a.kind == want, "expected a " + kind_name(want) + " superalgebra");
  require_square(a, r);
  require_axioms(a);
  require(check_module(a, m), "module axioms fail");
  require(check_rb(a, r, Scalar(0)), "R is not a weight-zero Rota-Baxter operator");
  require(check_rb_on_module(a, m, r, rv, Scalar(0)), "R_V is not compatible with R");
  // On A (+) V, R (+) R_V is a weight-zero RB operator of the semidirect sum;
  // its derived structure restricts to A and acts on V.
  SuperAlgebra sum = semidirect(a, m);
  EvenMap theta = direct_sum(r, rv);
  SuperAlgebra big;
  if (kind == InducedKind::lie_to_prelie) {
    const StructureTable& br = sum.table();
    big = derived(sum, "prelie", Kind::pre_lie,
                  {build(sum.dim(), [&](size_t i, size_t j) { return product_ve(br, theta.image(i), j); })},
                  symbols_with(sum, {&theta}));
  } else {
    big = ldend_of(sum, theta);
  }
  InducedResult res;
  res.algebra = split_algebra(big, a.dim());
  res.algebra.name = a.name + "." + (kind == InducedKind::lie_to_prelie ? "prelie" : "ldend");
  res.module = split_module(big, a.dim(), m.basis, false);
  recheck_algebra(res.algebra);
  res.report = check_module(res.algebra, res.module);
  res.report.subject = "induced module over " + res.algebra.name;
  recheck(res.report, "induced module");
  return res;
}

CheckReport check_commuting_rb(const SuperAlgebra& a, const EvenMap& r1, const EvenMap& r2) {
  require_kind(a, a.kind == Kind::pre_lie, "expected a pre-Lie superalgebra");
  require_square(a, r1);
  require_square(a, r2);
  if (!(compose(r1, r2) == compose(r2, r1))) throw NotCommuting("R1 R2 != R2 R1");
  require_axioms(a);
  require(check_rb(a, r1, Scalar(0)), "R1 is not a weight-zero Rota-Baxter operator");
  require(check_rb(a, r2, Scalar(0)), "R2 is not a weight-zero Rota-Baxter operator");
  SuperAlgebra ld = rb_to_ldend(a, r1);
  CheckReport rep = check_rb(ld, r2, Scalar(0));
  rep.subject = "R2 on the L-dendriform structure of R1";
  return rep;
}

}  // namespace rbsuper
