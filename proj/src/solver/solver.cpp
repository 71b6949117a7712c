#include "rbsuper/solver/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "rbsuper/errors.hpp"

namespace rbsuper {

namespace {

// ---------------------------------------------------------------------------
// Sparse polynomials sorted by a chosen monomial order (largest term first).

struct Term {
  Monomial m;
  Scalar c;
};
using Poly = std::vector<Term>;

struct Order {
  MonomialOrder o;
  bool gt(const Monomial& a, const Monomial& b) const {
    return o == MonomialOrder::lex ? LexGreater{}(a, b) : DegRevLexGreater{}(a, b);
  }
};

Poly to_poly(const PolyExpr& p, const Symbols* syms, const Order& ord) {
  PolyExpr q = p.symbols() == syms ? p : p.rebase(syms);
  Poly out;
  out.reserve(q.num_terms());
  for (auto& [m, c] : q.terms()) out.push_back({m, c});
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return ord.gt(a.m, b.m); });
  return out;
}

PolyExpr from_poly(const Poly& p, const Symbols* syms) {
  PolyExpr::Terms t;
  for (auto& term : p) t.emplace(term.m, term.c);
  return PolyExpr::from_terms(syms, std::move(t));
}

// p - c * m * g, merging two sorted lists.
Poly sub_mul(const Poly& p, const Scalar& c, const Monomial& m, const Poly& g, const Order& ord) {
  Poly out;
  out.reserve(p.size() + g.size());
  size_t i = 0, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = m * g[j].m;
    if (i == p.size() || ord.gt(gm, p[i].m)) {
      out.push_back({gm, -(c * g[j].c)});
      ++j;
    } else if (ord.gt(p[i].m, gm)) {
      out.push_back(p[i++]);
    } else {
      Scalar v = p[i].c - c * g[j].c;
      if (!v.is_zero()) out.push_back({gm, v});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(Poly& p) {
  if (p.empty() || p[0].c.is_one()) return;
  Scalar inv = p[0].c.inverse();
  for (auto& t : p) t.c *= inv;
}

// Full reduction of p by the list g (every element monic).
Poly normal_form(Poly p, const std::vector<Poly>& g, const Order& ord, size_t skip = SIZE_MAX) {
  Poly rem;
  while (!p.empty()) {
    const Term& lead = p[0];
    bool reduced = false;
    for (size_t k = 0; k < g.size(); ++k) {
      if (k == skip || g[k].empty() || !g[k][0].m.divides(lead.m)) continue;
      p = sub_mul(p, lead.c, lead.m / g[k][0].m, g[k], ord);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(lead);
      p.erase(p.begin());
    }
  }
  return rem;
}

unsigned poly_degree(const Poly& p) {
  unsigned d = 0;
  for (auto& t : p) d = std::max(d, t.m.degree());
  return d;
}

// Interreduces and sorts by increasing leading monomial.
std::vector<Poly> reduce_basis(std::vector<Poly> g, const Order& ord) {
  std::vector<Poly> kept;
  for (size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (g[j][0].m.divides(g[i][0].m) && (g[j][0].m != g[i][0].m || j < i)) redundant = true;
    }
    if (!redundant) kept.push_back(g[i]);
  }
  for (size_t i = 0; i < kept.size(); ++i) {
    Poly head = {kept[i][0]};
    Poly tail(kept[i].begin() + 1, kept[i].end());
    Poly r = normal_form(tail, kept, ord, i);
    head.insert(head.end(), r.begin(), r.end());
    kept[i] = head;
  }
  std::sort(kept.begin(), kept.end(), [&](const Poly& a, const Poly& b) { return ord.gt(b[0].m, a[0].m); });
  return kept;
}

std::vector<PolyExpr> to_exprs(const std::vector<Poly>& g, const Symbols* syms) {
  std::vector<PolyExpr> out;
  for (auto& p : g) out.push_back(from_poly(p, syms));
  return out;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over the field, coefficients low to high.

using UPoly = std::vector<Scalar>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly umod(UPoly a, const UPoly& b) {
  trim(a);
  Scalar inv = b.back().inverse();
  while (a.size() >= b.size()) {
    Scalar f = a.back() * inv;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

UPoly udiv(UPoly a, const UPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  UPoly q(a.size() - b.size() + 1, Scalar(0, b.back().field()));
  Scalar inv = b.back().inverse();
  while (a.size() >= b.size()) {
    Scalar f = a.back() * inv;
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return q;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

UPoly uderiv(const UPoly& p) {
  UPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Scalar(static_cast<long>(i)));
  trim(d);
  return d;
}

Scalar ueval(const UPoly& p, const Scalar& x) {
  Scalar acc(0, x.field());
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

std::optional<Rational> rationalize(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued fraction with denominators up to 1e6.
  double r = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(r);
    if (std::fabs(a) > 1e12) break;
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > 1000000) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::fabs(approx - x) < 1e-9 * std::max(1.0, std::fabs(x))) return Rational(p1, q1);
    double frac = r - a;
    if (std::fabs(frac) < 1e-15) break;
    r = 1.0 / frac;
  }
  if (q1 != 0 && std::fabs(static_cast<double>(p1) / q1 - x) < 1e-9 * std::max(1.0, std::fabs(x)))
    return Rational(p1, q1);
  return std::nullopt;
}

// Field element whose embedding is z, when one with small rational
// coordinates exists.
std::optional<Scalar> recognize(Complex z, const Field* f) {
  if (f->degree() == 1) {
    if (std::fabs(z.imag()) > 1e-7) return std::nullopt;
    auto q = rationalize(z.real());
    if (!q) return std::nullopt;
    return Scalar(*q, f);
  }
  Complex th = field_root(f);
  if (f->degree() == 2 && std::fabs(th.imag()) > 1e-12) {
    double c1 = z.imag() / th.imag();
    double c0 = z.real() - c1 * th.real();
    auto q0 = rationalize(c0), q1 = rationalize(c1);
    if (!q0 || !q1) return std::nullopt;
    return Scalar::from_coords(f, {*q0, *q1});
  }
  if (std::fabs(z.imag()) > 1e-7) return std::nullopt;
  auto q = rationalize(z.real());
  if (!q) return std::nullopt;
  return Scalar(*q, f);
}

// All roots of p in the field, or nullopt when some root lies outside it.
std::optional<std::vector<Scalar>> roots_in_field(UPoly p, const Field* f) {
  trim(p);
  if (p.size() <= 1) return std::vector<Scalar>{};
  UPoly g = ugcd(p, uderiv(p));
  UPoly sq = g.size() > 1 ? udiv(p, g) : p;
  trim(sq);
  size_t d = sq.size() - 1;
  std::vector<Scalar> roots;
  if (d == 1) {
    roots.push_back(-sq[0] / sq[1]);
    return roots;
  }
  Complex th = field_root(f);
  std::vector<Complex> c(d + 1);
  for (size_t i = 0; i <= d; ++i) c[i] = eval_numeric(sq[i], th);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (size_t i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (size_t i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    auto s = recognize(es.eigenvalues()(k), f);
    if (!s || !ueval(sq, *s).is_zero()) return std::nullopt;
    if (std::find(roots.begin(), roots.end(), *s) == roots.end()) roots.push_back(*s);
  }
  if (roots.size() != d) return std::nullopt;
  return roots;
}

// Exact points of a zero-dimensional ideal from its lex basis, or nullopt.
std::optional<std::vector<std::vector<Scalar>>> triangular_points(const std::vector<PolyExpr>& lexg, size_t q,
                                                                  const Field* f) {
  std::vector<std::vector<Scalar>> points;
  std::vector<Scalar> vals(q, Scalar(0, f));
  std::vector<std::vector<size_t>> used;
  for (auto& g : lexg) used.push_back(g.used_variables());
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k < 0) {
      points.push_back(vals);
      return true;
    }
    UPoly acc;
    for (size_t gi = 0; gi < lexg.size(); ++gi) {
      bool inside = std::all_of(used[gi].begin(), used[gi].end(), [&](size_t v) { return v >= size_t(k); });
      if (!inside) continue;
      UPoly u;
      for (auto& [m, c] : lexg[gi].terms()) {
        Scalar v = c;
        for (size_t x = k + 1; x < q; ++x)
          for (unsigned e = 0; e < m[x]; ++e) v *= vals[x];
        size_t e = m[k];
        if (u.size() <= e) u.resize(e + 1, Scalar(0, f));
        u[e] += v;
      }
      trim(u);
      if (u.empty()) continue;
      if (u.size() == 1) return true;  // nonzero constant: this branch has no points
      acc = acc.empty() ? u : ugcd(acc, u);
      if (acc.size() == 1) return true;
    }
    if (acc.empty()) return false;  // x_k is free
    auto roots = roots_in_field(acc, f);
    if (!roots) return false;
    for (auto& r : *roots) {
      vals[k] = r;
      if (!rec(k - 1)) return false;
    }
    return true;
  };
  if (!rec(static_cast<int>(q) - 1)) return std::nullopt;
  return points;
}

// ---------------------------------------------------------------------------
// Numeric evaluation.

struct CompiledPoly {
  std::vector<Complex> coeff;
  std::vector<std::vector<uint16_t>> exps;
};

std::vector<CompiledPoly> compile(const PolySystem& sys, const std::vector<PolyExpr>& eqs) {
  Complex th = field_root(sys.field);
  std::vector<CompiledPoly> out;
  for (auto& e : eqs) {
    PolyExpr p = e.symbols() == sys.syms ? e : e.rebase(sys.syms);
    CompiledPoly c;
    for (auto& [m, s] : p.terms()) {
      c.coeff.push_back(eval_numeric(s, th));
      c.exps.push_back(m.exps());
    }
    out.push_back(std::move(c));
  }
  return out;
}

Complex ipow(Complex z, unsigned e) {
  Complex r = 1;
  for (unsigned i = 0; i < e; ++i) r *= z;
  return r;
}

Eigen::VectorXcd eval_f(const std::vector<CompiledPoly>& sys, const NumericPoint& x) {
  Eigen::VectorXcd f(sys.size());
  for (size_t i = 0; i < sys.size(); ++i) {
    Complex acc = 0;
    for (size_t t = 0; t < sys[i].coeff.size(); ++t) {
      Complex v = sys[i].coeff[t];
      for (size_t k = 0; k < x.size(); ++k)
        if (sys[i].exps[t][k]) v *= ipow(x[k], sys[i].exps[t][k]);
      acc += v;
    }
    f(i) = acc;
  }
  return f;
}

Eigen::MatrixXcd eval_j(const std::vector<CompiledPoly>& sys, const NumericPoint& x) {
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(sys.size(), x.size());
  for (size_t i = 0; i < sys.size(); ++i)
    for (size_t t = 0; t < sys[i].coeff.size(); ++t) {
      const auto& e = sys[i].exps[t];
      for (size_t d = 0; d < x.size(); ++d) {
        if (!e[d]) continue;
        Complex v = sys[i].coeff[t] * Complex(e[d]) * ipow(x[d], e[d] - 1);
        for (size_t k = 0; k < x.size(); ++k)
          if (k != d && e[k]) v *= ipow(x[k], e[k]);
        j(i, d) += v;
      }
    }
  return j;
}

NumericPoint random_start(std::mt19937_64& rng, size_t q, double radius) {
  std::normal_distribution<double> gauss(0, 1);
  std::uniform_real_distribution<double> unif(0, 1);
  NumericPoint x(q);
  double norm = 0;
  for (auto& z : x) {
    z = Complex(gauss(rng), gauss(rng));
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  double scale = q ? radius * std::pow(unif(rng), 1.0 / (2.0 * q)) / (norm > 0 ? norm : 1) : 0;
  for (auto& z : x) z *= scale;
  return x;
}

// Damped Gauss-Newton; returns the final residual norm.
double newton(const std::vector<CompiledPoly>& sys, NumericPoint& x, const NumericOptions& opt) {
  Eigen::VectorXcd f = eval_f(sys, x);
  double nrm = f.norm();
  for (size_t it = 0; it < opt.max_iterations && nrm >= opt.tol * 1e-3; ++it) {
    Eigen::MatrixXcd j = eval_j(sys, x);
    Eigen::VectorXcd step = j.completeOrthogonalDecomposition().solve(-f);
    double t = 1;
    bool accepted = false;
    for (int h = 0; h <= 40; ++h, t /= 2) {
      NumericPoint xn = x;
      for (size_t k = 0; k < x.size(); ++k) xn[k] += t * step(k);
      Eigen::VectorXcd fn = eval_f(sys, xn);
      double nn = fn.norm();
      if (std::isfinite(nn) && nn < nrm) {
        x = std::move(xn);
        f = std::move(fn);
        nrm = nn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return nrm;
}

double distance(const NumericPoint& a, const NumericPoint& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Splitting the variety along monomial factors.

std::vector<std::vector<PolyExpr>> split_components(const std::vector<PolyExpr>& g, const Symbols* syms,
                                                    const GroebnerCaps& caps) {
  std::vector<std::vector<PolyExpr>> work = {g}, done;
  while (!work.empty()) {
    std::vector<PolyExpr> ideal = std::move(work.back());
    work.pop_back();
    std::vector<PolyExpr> basis = buchberger(ideal, syms, MonomialOrder::degrevlex, caps);
    if (basis.size() == 1 && basis[0].is_constant()) continue;  // empty variety
    bool split = false;
    for (auto& p : basis) {
      Monomial content = p.monomial_content();
      if (content.is_one()) continue;
      if (p.num_terms() == 1 && content.degree() == 1) continue;
      for (size_t v = 0; v < content.size(); ++v) {
        if (!content[v]) continue;
        auto next = basis;
        next.push_back(PolyExpr::variable(syms->names()[v], syms));
        work.push_back(std::move(next));
      }
      if (p.num_terms() > 1) {
        auto next = basis;
        next.push_back(p.divide_monomial(content));
        work.push_back(std::move(next));
      }
      split = true;
      break;
    }
    if (!split) done.push_back(std::move(basis));
  }
  // Drop components contained in another one.
  std::vector<std::vector<PolyExpr>> out;
  for (size_t i = 0; i < done.size(); ++i) {
    bool contained = false;
    for (size_t j = 0; j < done.size() && !contained; ++j) {
      if (i == j) continue;
      bool j_in_i = std::all_of(done[j].begin(), done[j].end(), [&](const PolyExpr& p) {
        return ideal_contains(done[i], p);
      });
      if (!j_in_i) continue;
      bool i_in_j = std::all_of(done[i].begin(), done[i].end(), [&](const PolyExpr& p) {
        return ideal_contains(done[j], p);
      });
      // V(done[i]) is inside V(done[j]); keep the first of two equal ones.
      contained = !i_in_j || j < i;
    }
    if (!contained) out.push_back(done[i]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t k = 0; k < a.size(); ++k) {
      std::string sa = a[k].str(), sb = b[k].str();
      if (sa != sb) return sa < sb;
    }
    return false;
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

PolySystem assemble_rb_system(const SuperAlgebra& alg, const Scalar& weight) {
  SuperAlgebra a = alg.pinned();
  for (auto& t : a.tables)
    for (auto& e : t.raw())
      if (!e.is_constant())
        throw UnpinnedParameters(a.name + " has free structure parameters; pin them first");
  CheckReport v = validate(a);
  if (!v.passed) throw InputError(a.name + " fails validation");
  size_t n = a.dim(), p = a.basis.num_even();

  PolySystem sys;
  sys.field = a.field;
  sys.parity = a.basis.parity;
  auto add_block = [&](size_t lo, size_t hi) {
    for (size_t r = lo; r < hi; ++r)
      for (size_t c = lo; c < hi; ++c) sys.cells.push_back({r, c});
  };
  add_block(0, p);
  add_block(p, n);
  for (size_t u = 0; u < sys.cells.size(); ++u) sys.unknowns.push_back("r" + std::to_string(u + 1));
  sys.syms = Symbols::make(sys.unknowns);

  EvenMap r = unknown_map(sys);
  std::vector<Vec> img(n);
  for (size_t i = 0; i < n; ++i) img[i] = r.image(i);
  std::vector<StructureTable> tables;
  for (auto& t : a.tables) {
    StructureTable c(n);
    for (size_t q = 0; q < t.raw().size(); ++q)
      if (!t.raw()[q].is_zero()) c.raw()[q] = RatExpr(t.raw()[q].constant_value());
    tables.push_back(std::move(c));
  }
  RatExpr w(weight);
  bool lie = a.kind == Kind::lie;
  std::vector<PolyExpr> eqs;
  for (auto& T : tables)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Vec lhs = product(T, img[i], img[j]);
        Vec inner = product_ve(T, img[i], j);
        if (lie) {
          Vec other = product_ve(T, img[j], i);
          axpy(inner, RatExpr(-ksign(a.basis.p(i), a.basis.p(j))), other);
        } else {
          inner = inner + product_ev(T, i, img[j]);
        }
        if (!w.is_zero()) axpy(inner, w, T.product(i, j));
        Vec res = lhs - r.apply(inner);
        for (auto& e : res) {
          if (e.is_zero()) continue;
          PolyExpr num = e.num();
          if (!e.den().is_constant()) throw std::logic_error("non-polynomial RB residual");
          num = num.rebase(sys.syms);
          num *= num.leading_coeff().inverse();
          if (std::find(eqs.begin(), eqs.end(), num) == eqs.end()) eqs.push_back(num);
        }
      }
  sys.equations = std::move(eqs);
  return sys;
}

EvenMap unknown_map(const PolySystem& sys) {
  std::vector<RatExpr> vals;
  for (auto& u : sys.unknowns) vals.push_back(RatExpr::variable(u, sys.syms));
  return map_at(sys, vals);
}

EvenMap map_at(const PolySystem& sys, const std::vector<RatExpr>& values) {
  if (values.size() != sys.cells.size()) throw DimensionMismatch("wrong number of unknown values");
  EvenMap m(sys.parity, sys.parity);
  for (size_t u = 0; u < sys.cells.size(); ++u) m.at(sys.cells[u].first, sys.cells[u].second) = values[u];
  return m;
}

std::vector<PolyExpr> buchberger(const std::vector<PolyExpr>& gens, const Symbols* syms, MonomialOrder order,
                                 const GroebnerCaps& caps, std::vector<PolyExpr>* partial) {
  Order ord{order};
  std::vector<Poly> g;
  for (auto& e : gens) {
    Poly p = normal_form(to_poly(e, syms, ord), g, ord);
    if (p.empty()) continue;
    make_monic(p);
    g.push_back(std::move(p));
  }
  auto unit = [&]() {
    for (auto& p : g)
      if (p[0].m.is_one()) return true;
    return false;
  };
  if (unit()) return {PolyExpr::from_terms(syms, {{Monomial(syms->size()), Scalar(1)}})};

  std::set<std::pair<size_t, size_t>> pending, processed;
  for (size_t j = 0; j < g.size(); ++j)
    for (size_t i = 0; i < j; ++i) pending.insert({i, j});
  auto fail = [&](const std::string& why) {
    if (partial) *partial = to_exprs(g, syms);
    throw CapExceeded(why + " (partial basis of " + std::to_string(g.size()) + " elements)");
  };
  while (!pending.empty()) {
    // Normal selection: the pair with the smallest lcm, ties by index.
    auto best = pending.begin();
    Monomial best_lcm = g[best->first][0].m.lcm(g[best->second][0].m);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = g[it->first][0].m.lcm(g[it->second][0].m);
      if (ord.gt(best_lcm, l)) {
        best = it;
        best_lcm = l;
      }
    }
    auto [i, j] = *best;
    pending.erase(best);
    processed.insert({i, j});
    const Monomial& li = g[i][0].m;
    const Monomial& lj = g[j][0].m;
    if (li.gcd(lj).is_one()) continue;  // coprime leading monomials
    bool chain = false;
    for (size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j || !g[k][0].m.divides(best_lcm)) continue;
      auto key = [](size_t a, size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = processed.count(key(i, k)) && processed.count(key(j, k));
    }
    if (chain) continue;
    Poly s = sub_mul({}, Scalar(-1), best_lcm / li, g[i], ord);
    s = sub_mul(s, Scalar(1), best_lcm / lj, g[j], ord);
    Poly h = normal_form(std::move(s), g, ord);
    if (h.empty()) continue;
    make_monic(h);
    if (poly_degree(h) > caps.max_degree) fail("degree cap " + std::to_string(caps.max_degree) + " exceeded");
    if (g.size() + 1 > caps.max_basis) fail("basis cap " + std::to_string(caps.max_basis) + " exceeded");
    g.push_back(std::move(h));
    if (unit()) return {PolyExpr::from_terms(syms, {{Monomial(syms->size()), Scalar(1)}})};
    for (size_t k = 0; k + 1 < g.size(); ++k) pending.insert({k, g.size() - 1});
  }
  return to_exprs(reduce_basis(std::move(g), ord), syms);
}

PolyExpr reduce(const PolyExpr& p, const std::vector<PolyExpr>& g, MonomialOrder order) {
  Order ord{order};
  const Symbols* syms = p.symbols();
  for (auto& e : g) syms = join_symbols(syms, e.symbols());
  std::vector<Poly> gp;
  for (auto& e : g) {
    Poly q = to_poly(e, syms, ord);
    make_monic(q);
    if (!q.empty()) gp.push_back(std::move(q));
  }
  return from_poly(normal_form(to_poly(p, syms, ord), gp, ord), syms);
}

bool ideal_contains(const std::vector<PolyExpr>& g, const PolyExpr& p, MonomialOrder order) {
  return reduce(p, g, order).is_zero();
}

int variety_dimension(const std::vector<PolyExpr>& g, size_t nvars) {
  std::vector<uint32_t> supports;
  for (auto& p : g) {
    if (p.is_zero()) continue;
    if (p.is_constant()) return -1;
    const Monomial& m = p.leading_monomial();
    uint32_t s = 0;
    for (size_t v = 0; v < m.size(); ++v)
      if (m[v]) s |= 1u << v;
    supports.push_back(s);
  }
  if (nvars > 24) throw CapExceeded("too many unknowns for the dimension count");
  int best = 0;
  for (uint32_t set = 0; set < (1u << nvars); ++set) {
    int size = __builtin_popcount(set);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(), [&](uint32_t s) { return (s & ~set) == 0; });
    if (independent) best = size;
  }
  return best;
}

SolutionSet solve_system(const PolySystem& sys, const SolveOptions& opt) {
  SolutionSet out;
  size_t q = sys.unknowns.size();
  out.groebner = buchberger(sys.equations, sys.syms, MonomialOrder::degrevlex, opt.caps);
  out.dimension = variety_dimension(out.groebner, q);
  std::mt19937_64 rng(opt.seed);
  auto substitute_check = [&](const std::vector<RatExpr>& vals) {
    std::map<std::string, RatExpr> env;
    for (size_t u = 0; u < q; ++u) env[sys.unknowns[u]] = vals[u];
    for (auto& e : sys.equations)
      if (!substitute(e, env).is_zero()) throw std::logic_error("solver produced a non-solution");
  };
  if (out.dimension < 0) {
    out.kind = SolutionKind::finite;
    return out;
  }
  if (out.dimension == 0) {
    auto lexg = buchberger(out.groebner, sys.syms, MonomialOrder::lex, opt.caps);
    auto pts = triangular_points(lexg, q, sys.field);
    if (pts) {
      out.kind = SolutionKind::finite;
      out.exact_points = *pts;
      for (auto& p : out.exact_points) substitute_check(std::vector<RatExpr>(p.begin(), p.end()));
      return out;
    }
    NumericOptions no;
    no.seed = opt.seed;
    SolutionSet num = numeric_solve(sys, no);
    out.kind = SolutionKind::numeric;
    out.numeric_points = num.numeric_points;
    out.residuals = num.residuals;
    return out;
  }

  out.kind = SolutionKind::positive_dimensional;
  Complex th = field_root(sys.field);
  for (auto& basis : split_components(out.groebner, sys.syms, opt.caps)) {
    Component c;
    c.basis = basis;
    c.dimension = variety_dimension(basis, q);
    bool linear = std::all_of(basis.begin(), basis.end(), [](const PolyExpr& p) { return p.total_degree() <= 1; });
    if (linear) {
      // Reduced and monic: each element is pivot + combination of free unknowns.
      std::vector<RatExpr> vals(q);
      std::vector<bool> pivot(q, false);
      auto lead_var = [&](const PolyExpr& p) {
        const Monomial& lm = p.leading_monomial();
        size_t v = 0;
        for (size_t k = 0; k < q; ++k)
          if (lm[k]) v = k;
        return v;
      };
      for (auto& p : basis) pivot[lead_var(p)] = true;
      for (size_t k = 0; k < q; ++k)
        if (!pivot[k]) {
          vals[k] = RatExpr::variable(sys.unknowns[k], sys.syms);
          c.free_unknowns.push_back(sys.unknowns[k]);
        }
      for (auto& p : basis) {
        size_t v = lead_var(p);
        vals[v] = RatExpr(PolyExpr::variable(sys.unknowns[v], sys.syms) - p);
      }
      substitute_check(vals);
      c.general = map_at(sys, vals);
      std::normal_distribution<double> gauss(0, 3);
      for (size_t s = 0; s < opt.samples_per_component; ++s) {
        std::map<std::string, Complex> env;
        for (auto& u : sys.unknowns) env[u] = 0;
        for (auto& f : c.free_unknowns) env[f] = Complex(gauss(rng), gauss(rng));
        NumericPoint pt(q);
        for (size_t k = 0; k < q; ++k) pt[k] = eval_numeric(vals[k], env, th);
        c.samples.push_back(std::move(pt));
      }
    } else {
      PolySystem sub = sys;
      sub.equations = basis;
      NumericOptions no;
      no.seed = rng();
      no.restarts = 4 * opt.samples_per_component + 4;
      SolutionSet num = numeric_solve(sub, no);
      for (size_t s = 0; s < num.numeric_points.size() && s < opt.samples_per_component; ++s)
        c.samples.push_back(num.numeric_points[s]);
    }
    out.components.push_back(std::move(c));
  }
  return out;
}

SolutionSet numeric_solve(const PolySystem& sys, const NumericOptions& opt) {
  SolutionSet out;
  out.kind = SolutionKind::numeric;
  size_t q = sys.unknowns.size();
  std::mt19937_64 rng(opt.seed);
  if (sys.equations.empty()) {
    out.unconstrained = true;
    for (size_t r = 0; r < std::min<size_t>(opt.restarts, 10); ++r) {
      out.numeric_points.push_back(random_start(rng, q, opt.radius));
      out.residuals.push_back(0);
    }
    return out;
  }
  auto compiled = compile(sys, sys.equations);
  for (size_t r = 0; r < opt.restarts; ++r) {
    NumericPoint x = random_start(rng, q, opt.radius);
    double res = newton(compiled, x, opt);
    if (!(res < opt.tol)) continue;
    bool dup = std::any_of(out.numeric_points.begin(), out.numeric_points.end(),
                           [&](const NumericPoint& y) { return distance(x, y) < opt.dedup; });
    if (dup) continue;
    out.numeric_points.push_back(std::move(x));
    out.residuals.push_back(res);
  }
  return out;
}

double residual_norm(const PolySystem& sys, const NumericPoint& p) {
  return eval_f(compile(sys, sys.equations), p).norm();
}

FamilyMatch match_family(const PolySystem& sys, const NumericPoint& point, const OperatorFamily& fam,
                         const std::map<std::string, RatExpr>& pins, double tol) {
  FamilyMatch res;
  size_t n = sys.parity.size();
  if (fam.map.rows() != n || fam.map.cols() != n) throw DimensionMismatch("family does not fit the system");
  if (point.size() != sys.cells.size()) throw DimensionMismatch("point does not fit the system");
  Complex th = field_root(sys.field);
  std::vector<Complex> target(n * n, 0);
  for (size_t u = 0; u < sys.cells.size(); ++u) target[sys.cells[u].first * n + sys.cells[u].second] = point[u];

  std::map<std::string, Complex> env;
  for (auto& [name, e] : pins) env[name] = eval_numeric(e, {}, th);
  for (auto& pv : fam.pivots) env[pv.param] = target[pv.row * n + pv.col] / eval_numeric(pv.scale, th);

  auto deviation = [&](const std::map<std::string, Complex>& at) {
    double worst = 0;
    for (size_t k = 0; k < n; ++k)
      for (size_t i = 0; i < n; ++i) {
        const RatExpr& e = fam.map.at(k, i);
        Complex v = e.is_zero() ? Complex(0) : eval_numeric(e, at, th);
        worst = std::max(worst, std::abs(v - target[k * n + i]));
      }
    return worst;
  };

  try {
    if (!fam.unpivoted.empty()) {
      // Gauss-Newton on the free parameters with a finite-difference Jacobian.
      std::mt19937_64 rng(0);
      std::normal_distribution<double> gauss(0, 1);
      std::map<std::string, Complex> best_env;
      double best = INFINITY;
      auto residual = [&](const std::map<std::string, Complex>& at) {
        Eigen::VectorXcd f(n * n);
        for (size_t k = 0; k < n; ++k)
          for (size_t i = 0; i < n; ++i) {
            const RatExpr& e = fam.map.at(k, i);
            Complex v = e.is_zero() ? Complex(0) : eval_numeric(e, at, th);
            f(k * n + i) = v - target[k * n + i];
          }
        return f;
      };
      for (int start = 0; start < 8; ++start) {
        std::map<std::string, Complex> at = env;
        for (auto& p : fam.unpivoted) at[p] = start == 0 ? Complex(1) : Complex(gauss(rng), gauss(rng));
        try {
          for (int it = 0; it < 60; ++it) {
            Eigen::VectorXcd f = residual(at);
            if (f.norm() < 1e-13) break;
            Eigen::MatrixXcd jac(n * n, fam.unpivoted.size());
            for (size_t c = 0; c < fam.unpivoted.size(); ++c) {
              auto moved = at;
              const double h = 1e-7;
              moved[fam.unpivoted[c]] += h;
              jac.col(c) = (residual(moved) - f) / h;
            }
            Eigen::VectorXcd step = jac.completeOrthogonalDecomposition().solve(-f);
            for (size_t c = 0; c < fam.unpivoted.size(); ++c) at[fam.unpivoted[c]] += step(c);
          }
          double d = deviation(at);
          if (d < best) {
            best = d;
            best_env = at;
          }
        } catch (const NearZeroDenominator&) {
        }
      }
      if (best_env.empty()) {
        res.reason = "no fit for the unpivoted parameters";
        return res;
      }
      env = best_env;
    }
    res.deviation = deviation(env);
  } catch (const NearZeroDenominator&) {
    res.reason = "a family entry has a vanishing denominator at the fitted parameters";
    return res;
  }
  for (auto& p : fam.params->names())
    if (env.count(p)) res.params[p] = env.at(p);
  if (!(res.deviation < tol)) {
    res.reason = "deviation " + std::to_string(res.deviation);
    return res;
  }
  for (auto& c : fam.constraints) {
    Complex v;
    try {
      v = eval_numeric(c, env, th);
    } catch (const NearZeroDenominator&) {
      v = 0;
    }
    if (std::abs(v) <= tol) throw ConstraintViolated(fam.name + ": " + c.str() + " vanishes at the fitted parameters");
  }
  res.matched = true;
  return res;
}

}  // namespace rbsuper
