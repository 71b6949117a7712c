#include "rbsuper/structures/checks.hpp"

#include <chrono>

#include "rbsuper/errors.hpp"
#include "rbsuper/exactmath/parse.hpp"

namespace rbsuper {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Products {
  // p[i][j] = e_i * e_j
  std::vector<std::vector<Vec>> p;
  explicit Products(const StructureTable& t) : p(t.dim(), std::vector<Vec>(t.dim())) {
    for (size_t i = 0; i < t.dim(); ++i)
      for (size_t j = 0; j < t.dim(); ++j) p[i][j] = t.product(i, j);
  }
  const Vec& operator()(size_t i, size_t j) const { return p[i][j]; }
};

void add_scaled(Vec& acc, int sign, const Vec& v) {
  for (size_t i = 0; i < acc.size(); ++i)
    if (!v[i].is_zero()) acc[i] += sign == 1 ? v[i] : -v[i];
}

}  // namespace

void CheckReport::merge(const CheckReport& o) {
  passed = passed && o.passed;
  failures += o.failures;
  checked += o.checked;
  seconds += o.seconds;
  for (auto& w : o.witnesses)
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
}

void record_residual(CheckReport& rep, const std::string& axiom, const std::vector<size_t>& tuple,
                     const Vec& residual, const GradedBasis& tb, const std::vector<std::string>& out,
                     const PolyExpr* scale) {
  rep.passed = false;
  ++rep.failures;
  if (rep.witnesses.size() >= CheckReport::kMaxWitnesses) return;
  Witness w;
  w.axiom = axiom;
  for (auto i : tuple) {
    w.indices.push_back(static_cast<int>(i) + 1);
    w.names.push_back(tb.names[i]);
  }
  Vec r = residual;
  if (scale && !scale->is_constant()) {
    RatExpr s(*scale);
    for (auto& e : r)
      if (!e.is_zero()) e /= s;
  }
  for (size_t k = 0; k < r.size(); ++k)
    if (!r[k].is_zero()) {
      w.component = static_cast<int>(k) + 1;
      w.residual = r[k].str();
      break;
    }
  w.vector = linear_str(r, out);
  rep.witnesses.push_back(std::move(w));
}

PolyExpr clear_denominators(std::vector<Vec*> blocks) {
  std::vector<const RatExpr*> all;
  for (auto* b : blocks)
    for (auto& e : *b)
      if (!e.is_zero() && !e.is_polynomial()) all.push_back(&e);
  PolyExpr d = common_denominator(all);
  if (d.is_constant()) return d;
  RatExpr D(d);
  for (auto* b : blocks)
    for (auto& e : *b)
      if (!e.is_zero()) e *= D;
  return d;
}

CheckReport validate(const SuperAlgebra& a) {
  auto t0 = Clock::now();
  CheckReport rep;
  rep.subject = a.name;
  size_t n = a.dim();
  for (auto& t : a.tables)
    if (t.dim() != n) throw DimensionMismatch("table dimension differs from basis size");
  for (size_t t = 0; t < a.tables.size(); ++t)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        ++rep.checked;
        int pij = a.basis.p(i) ^ a.basis.p(j);
        for (size_t k = 0; k < n; ++k)
          if (a.basis.p(k) != pij && !a.table(t).at(i, j, k).is_zero()) {
            Vec r = zero_vec(n);
            r[k] = a.table(t).at(i, j, k);
            record_residual(rep, "grading", {i, j}, r, a.basis, a.basis.names);
            break;
          }
      }
  if (a.kind == Kind::lie) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        ++rep.checked;
        Vec r = a.table().product(i, j);
        add_scaled(r, ksign(a.basis.p(i), a.basis.p(j)), a.table().product(j, i));
        if (!is_zero(r)) record_residual(rep, "super-skew-symmetry", {i, j}, r, a.basis, a.basis.names);
      }
  }
  rep.seconds = since(t0);
  return rep;
}

CheckReport check_axioms(const SuperAlgebra& a, const CheckOptions& opt, const TupleFilter& filter) {
  auto t0 = Clock::now();
  CheckReport rep;
  rep.subject = a.name;
  size_t n = a.dim();
  // The identities are quadratic in the structure constants, so a common
  // denominator can be cleared first and divided out of the residuals.
  std::vector<StructureTable> T = a.tables;
  std::vector<Vec*> blocks;
  for (auto& t : T) blocks.push_back(&t.raw());
  PolyExpr d = clear_denominators(blocks);
  PolyExpr d2 = d * d;
  const GradedBasis& B = a.basis;
  std::vector<Products> P;
  for (auto& t : T) P.emplace_back(t);

  auto mul_ve = [&](size_t t, const Vec& x, size_t k) { return product_ve(T[t], x, k); };
  auto mul_ev = [&](size_t t, size_t i, const Vec& y) { return product_ev(T[t], i, y); };

  std::vector<size_t> tup(3);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        if (rep.failures >= opt.max_failures) goto done;
        tup = {i, j, k};
        if (filter && !filter(tup)) continue;
        ++rep.checked;
        int sxy = ksign(B.p(i), B.p(j));
        auto emit = [&](const std::string& ax, const Vec& r) {
          if (!is_zero(r)) record_residual(rep, ax, tup, r, B, B.names, &d2);
        };
        switch (a.kind) {
          case Kind::associative: {
            emit("associativity", mul_ve(0, P[0](i, j), k) - mul_ev(0, i, P[0](j, k)));
            break;
          }
          case Kind::lie: {
            // [x,[y,z]] - [[x,y],z] - s [y,[x,z]]
            Vec r = mul_ev(0, i, P[0](j, k));
            add_scaled(r, -1, mul_ve(0, P[0](i, j), k));
            add_scaled(r, -sxy, mul_ev(0, j, P[0](i, k)));
            emit("super-Jacobi", r);
            break;
          }
          case Kind::pre_lie: {
            // (xy)z - x(yz) - s((yx)z - y(xz))
            Vec r = mul_ve(0, P[0](i, j), k);
            add_scaled(r, -1, mul_ev(0, i, P[0](j, k)));
            add_scaled(r, -sxy, mul_ve(0, P[0](j, i), k));
            add_scaled(r, sxy, mul_ev(0, j, P[0](i, k)));
            emit("pre-Lie", r);
            break;
          }
          case Kind::l_dendriform: {
            const size_t R = 0, L = 1;  // triangle-right, triangle-left
            // x>(y>z) = (x>y)>z + (x<y)>z + s y>(x>z) - s (y<x)>z - s (y>x)>z
            Vec r1 = mul_ev(R, i, P[R](j, k));
            add_scaled(r1, -1, mul_ve(R, P[R](i, j), k));
            add_scaled(r1, -1, mul_ve(R, P[L](i, j), k));
            add_scaled(r1, -sxy, mul_ev(R, j, P[R](i, k)));
            add_scaled(r1, sxy, mul_ve(R, P[L](j, i), k));
            add_scaled(r1, sxy, mul_ve(R, P[R](j, i), k));
            emit("L-dendriform-1", r1);
            // x>(y<z) = (x>y)<z + s y<(x>z) + s y<(x<z) - s (y<x)<z
            Vec r2 = mul_ev(R, i, P[L](j, k));
            add_scaled(r2, -1, mul_ve(L, P[R](i, j), k));
            add_scaled(r2, -sxy, mul_ev(L, j, P[R](i, k)));
            add_scaled(r2, -sxy, mul_ev(L, j, P[L](i, k)));
            add_scaled(r2, sxy, mul_ve(L, P[L](j, i), k));
            emit("L-dendriform-2", r2);
            break;
          }
        }
        if (a.also_associative && a.kind != Kind::associative && a.kind != Kind::l_dendriform)
          emit("associativity", mul_ve(0, P[0](i, j), k) - mul_ev(0, i, P[0](j, k)));
      }
done:
  rep.seconds = since(t0);
  return rep;
}

CheckReport check_associativity(const SuperAlgebra& a, const CheckOptions& opt) {
  SuperAlgebra b = a;
  b.kind = Kind::associative;
  b.also_associative = false;
  b.tables.resize(1);
  return check_axioms(b, opt);
}

CheckReport check_module(const SuperAlgebra& a, const ModuleData& m, const CheckOptions& opt) {
  if (a.kind != m.kind)
    throw KindMismatch("module of kind " + kind_name(m.kind) + " for a " + kind_name(a.kind) + " algebra");
  SuperAlgebra s = semidirect(a, m);
  s.also_associative = false;
  size_t n = a.dim();
  bool internal = m.has_internal();
  CheckReport rep = validate(s);
  if (!rep.passed) return rep;
  auto filter = [n, internal](const std::vector<size_t>& t) {
    int c = 0;
    for (auto i : t) c += i >= n;
    return c == 1 || (internal && c == 2);
  };
  CheckReport ax = check_axioms(s, opt, filter);
  ax.subject = a.name + " module";
  ax.seconds += rep.seconds;
  return ax;
}

}  // namespace rbsuper
