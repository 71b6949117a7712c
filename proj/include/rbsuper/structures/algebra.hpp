#pragma once

#include <map>
#include <string>
#include <vector>

#include "rbsuper/exactmath/ratexpr.hpp"

namespace rbsuper {

enum class Kind { associative, lie, pre_lie, l_dendriform };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

using Vec = std::vector<RatExpr>;

// Homogeneous basis, even elements first.
struct GradedBasis {
  std::vector<std::string> names;
  std::vector<int> parity;       // 0 even, 1 odd
  std::vector<int> permutation;  // permutation[new index] = index as declared

  size_t size() const { return names.size(); }
  int p(size_t i) const { return parity[i]; }
  size_t num_even() const;
  int index(const std::string& name) const;
};

// Builds a basis from declared names/parities, reordering to even-first.
GradedBasis make_basis(const std::vector<std::string>& names, const std::vector<int>& parity);

// (-1)^{ab}
inline int ksign(int a, int b) { return (a & b) ? -1 : 1; }

// c(i,j,k) = coefficient of e_k in e_i * e_j.
class StructureTable {
 public:
  StructureTable() = default;
  explicit StructureTable(size_t n) : n_(n), c_(n * n * n) {}
  size_t dim() const { return n_; }
  RatExpr& at(size_t i, size_t j, size_t k) { return c_[(i * n_ + j) * n_ + k]; }
  const RatExpr& at(size_t i, size_t j, size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  Vec product(size_t i, size_t j) const;
  bool product_is_zero(size_t i, size_t j) const;
  std::vector<RatExpr>& raw() { return c_; }
  const std::vector<RatExpr>& raw() const { return c_; }
  friend bool operator==(const StructureTable& a, const StructureTable& b);

 private:
  size_t n_ = 0;
  std::vector<RatExpr> c_;
};

// a(i, alpha, beta) = coefficient of v_beta in a(e_i)(v_alpha).
class ActionTable {
 public:
  ActionTable() = default;
  ActionTable(size_t n, size_t m) : n_(n), m_(m), c_(n * m * m) {}
  size_t alg_dim() const { return n_; }
  size_t mod_dim() const { return m_; }
  RatExpr& at(size_t i, size_t a, size_t b) { return c_[(i * m_ + a) * m_ + b]; }
  const RatExpr& at(size_t i, size_t a, size_t b) const { return c_[(i * m_ + a) * m_ + b]; }
  std::vector<RatExpr>& raw() { return c_; }
  const std::vector<RatExpr>& raw() const { return c_; }

 private:
  size_t n_ = 0, m_ = 0;
  std::vector<RatExpr> c_;
};

struct SuperAlgebra {
  std::string name;
  Kind kind = Kind::pre_lie;
  const Field* field = Field::gaussian();
  GradedBasis basis;
  // One table; for l-dendriform the right (triangle-right) table comes first,
  // then the left one.
  std::vector<StructureTable> tables;
  const Symbols* params = Symbols::empty();
  std::vector<RatExpr> constraints;  // must not vanish
  std::map<std::string, RatExpr> pins;
  bool also_associative = false;
  bool lie_admissible = false;
  std::string note;

  size_t dim() const { return basis.size(); }
  const StructureTable& table(size_t t = 0) const { return tables.at(t); }
  // Copy with the pins substituted and removed from the parameter list.
  SuperAlgebra pinned() const;
};

SuperAlgebra make_algebra(std::string name, Kind kind, GradedBasis basis,
                          const Symbols* params = Symbols::empty(), const Field* field = Field::gaussian());

// Actions by kind:
//   associative, pre-lie : l, r
//   lie                  : rho
//   l-dendriform         : l_right, r_right, l_left, r_left
// Right actions follow the sign convention  v . x = (-1)^{|x||v|} r(x) v.
struct ModuleData {
  Kind kind = Kind::associative;
  GradedBasis basis;
  std::vector<ActionTable> actions;
  std::vector<StructureTable> internal;  // optional product on V
  bool has_internal() const { return !internal.empty(); }
  size_t dim() const { return basis.size(); }
};

size_t action_count(Kind k);
std::vector<std::string> action_names(Kind k);

// The regular module: actions by left and right multiplication (adjoint for Lie).
ModuleData regular_module(const SuperAlgebra& a, bool with_internal = false);

// Algebra structure on A (+) V whose mixed products are the actions; products
// of two module elements come from the internal product (zero if absent).
SuperAlgebra semidirect(const SuperAlgebra& a, const ModuleData& m);
// Inverse of semidirect: reads the actions back from the mixed products.
ModuleData split_module(const SuperAlgebra& sum, size_t alg_dim, const GradedBasis& mod_basis,
                        bool with_internal);
SuperAlgebra split_algebra(const SuperAlgebra& sum, size_t alg_dim);

// Vector arithmetic.
Vec zero_vec(size_t n);
Vec unit_vec(size_t n, size_t i);
void axpy(Vec& y, const RatExpr& a, const Vec& x);  // y += a x
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const RatExpr& a, const Vec& x);
bool is_zero(const Vec& v);

Vec product(const StructureTable& t, const Vec& x, const Vec& y);
Vec product_ev(const StructureTable& t, size_t i, const Vec& y);  // e_i * y
Vec product_ve(const StructureTable& t, const Vec& x, size_t j);  // x * e_j

// product_eval in the module map: x * y in table `which`.
Vec product_eval(const SuperAlgebra& a, const Vec& x, const Vec& y, size_t which = 0);
// (x y) z - x (y z)
Vec associator(const SuperAlgebra& a, const Vec& x, const Vec& y, const Vec& z, size_t which = 0);

// Common symbol table for the algebra's tables and the given expressions.
const Symbols* joined_symbols(const SuperAlgebra& a);

}  // namespace rbsuper
