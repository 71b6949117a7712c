#include "rbsuper/operators/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "rbsuper/errors.hpp"

namespace rbsuper {

namespace {

using HpVec = std::vector<HpComplex>;
using HpPoint = std::map<std::string, HpComplex>;

HpVec hp_zero(size_t n) { return HpVec(n); }

// Products of the pinned algebra at a point, cached per table.
struct NumericAlgebra {
  size_t n = 0;
  std::vector<std::vector<HpComplex>> tables;  // (i*n + j)*n + k
  std::vector<int> parity;

  HpVec product(size_t t, const HpVec& x, const HpVec& y) const {
    HpVec out = hp_zero(n);
    for (size_t i = 0; i < n; ++i) {
      if (x[i].abs() == 0) continue;
      for (size_t j = 0; j < n; ++j) {
        if (y[j].abs() == 0) continue;
        HpComplex c = x[i] * y[j];
        for (size_t k = 0; k < n; ++k) out[k] += c * tables[t][(i * n + j) * n + k];
      }
    }
    return out;
  }
};

HpVec unit(size_t n, size_t i) {
  HpVec v = hp_zero(n);
  v[i] = HpComplex(Rational(1));
  return v;
}

HpVec apply(const std::vector<HpComplex>& m, size_t n, const HpVec& x) {
  HpVec out = hp_zero(n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) out[k] += m[k * n + i] * x[i];
  return out;
}

// Pinned names stay in the symbol tables of substituted expressions without
// occurring in them; they are bound to 0.
HpComplex eval_at(const RatExpr& e, HpPoint& pt, const HpComplex& root) {
  for (const Symbols* s : {e.num().symbols(), e.den().symbols()})
    for (auto& n : s->names()) pt.try_emplace(n, HpComplex(Rational(0)));
  return eval_hp(e, pt, root);
}

std::vector<std::string> free_symbols(const SuperAlgebra& pinned, const OperatorFamily& fam) {
  std::vector<std::string> names = pinned.params->names();
  for (auto& p : fam.params->names())
    if (std::find(names.begin(), names.end(), p) == names.end()) names.push_back(p);
  return names;
}

}  // namespace

double OracleReport::max_residual() const {
  double m = 0;
  for (auto& p : points) m = std::max(m, p.residual);
  return m;
}

double numeric_rb_residual(const SuperAlgebra& a, const OperatorFamily& fam,
                           const std::map<std::string, Rational>& values) {
  HpComplex root = field_root_hp(a.field);
  HpPoint pt;
  for (auto& [k, v] : values) pt[k] = HpComplex(v);
  size_t n = a.dim();
  NumericAlgebra na;
  na.n = n;
  na.parity = a.basis.parity;
  for (auto& t : a.tables) {
    std::vector<HpComplex> c(n * n * n);
    for (size_t q = 0; q < c.size(); ++q)
      if (!t.raw()[q].is_zero()) c[q] = eval_at(t.raw()[q], pt, root);
    na.tables.push_back(std::move(c));
  }
  std::vector<HpComplex> r(n * n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (!fam.map.at(k, i).is_zero()) r[k * n + i] = eval_at(fam.map.at(k, i), pt, root);
  HpComplex w = eval_hp(fam.weight, root);
  bool lie = a.kind == Kind::lie;

  mpf_class worst(0, 256);
  for (size_t t = 0; t < na.tables.size(); ++t)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        HpVec ei = unit(n, i), ej = unit(n, j);
        HpVec ri = apply(r, n, ei), rj = apply(r, n, ej);
        HpVec lhs = na.product(t, ri, rj);
        HpVec inner = na.product(t, ri, ej);
        HpVec second = lie ? na.product(t, rj, ei) : na.product(t, ei, rj);
        HpComplex s(Rational(lie ? -ksign(a.basis.p(i), a.basis.p(j)) : 1));
        HpVec xy = na.product(t, ei, ej);
        for (size_t k = 0; k < n; ++k) inner[k] += s * second[k] + w * xy[k];
        HpVec rhs = apply(r, n, inner);
        for (size_t k = 0; k < n; ++k) {
          mpf_class m = (lhs[k] - rhs[k]).abs();
          if (m > worst) worst = m;
        }
      }
  return worst.get_d();
}

OracleReport oracle_check(const SuperAlgebra& a, const OperatorFamily& fam, const OracleOptions& opt) {
  SuperAlgebra p = a.pinned();
  OperatorFamily f = p.pins.empty() && a.pins.empty() ? fam : fam.substitute(a.pins);
  OracleReport rep;
  rep.subject = a.name + "/" + fam.name;
  rep.seed = opt.seed;
  rep.exact_passed = check_rb(p, f).passed;

  std::vector<std::string> names = free_symbols(p, f);
  HpComplex root = field_root_hp(p.field);
  RationalSampler sampler(opt.seed);
  std::vector<RatExpr> guards = p.constraints;
  guards.insert(guards.end(), f.constraints.begin(), f.constraints.end());
  size_t tries = 0;
  while (rep.points.size() < opt.points) {
    if (++tries > opt.points + opt.max_resamples) throw NearZeroDenominator("could not sample a regular point");
    OraclePoint pt;
    for (auto& nm : names) pt.values[nm] = sampler.next();
    HpPoint hp;
    for (auto& [k, v] : pt.values) hp[k] = HpComplex(v);
    try {
      bool ok = true;
      for (auto& g : guards)
        if (eval_at(g, hp, root).abs() <= kNearZero) ok = false;
      if (!ok) continue;
      pt.residual = numeric_rb_residual(p, f, pt.values);
    } catch (const NearZeroDenominator&) {
      continue;
    }
    rep.points.push_back(std::move(pt));
  }
  bool all_small = std::all_of(rep.points.begin(), rep.points.end(),
                               [&](const OraclePoint& q) { return q.residual < opt.zero_tol; });
  bool some_large = std::any_of(rep.points.begin(), rep.points.end(),
                                [&](const OraclePoint& q) { return q.residual > opt.nonzero_tol; });
  rep.agree = rep.exact_passed ? all_small : some_large;
  return rep;
}

std::optional<OperatorFamily> perturb_family(const SuperAlgebra& a, const OperatorFamily& fam, uint64_t seed) {
  SuperAlgebra p = a.pinned();
  OperatorFamily base = a.pins.empty() ? fam : fam.substitute(a.pins);
  std::vector<std::pair<size_t, size_t>> cells;
  for (size_t k = 0; k < base.map.rows(); ++k)
    for (size_t i = 0; i < base.map.cols(); ++i)
      if (base.map.cod_parity()[k] == base.map.dom_parity()[i]) cells.push_back({k, i});
  std::mt19937_64 rng(seed);
  std::shuffle(cells.begin(), cells.end(), rng);
  for (auto [k, i] : cells) {
    OperatorFamily f = base;
    f.map.at(k, i) += RatExpr(1);
    f.name = fam.name + "+E" + std::to_string(k + 1) + std::to_string(i + 1);
    if (!check_rb(p, f).passed) return f;
  }
  return std::nullopt;
}

}  // namespace rbsuper
