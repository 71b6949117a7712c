#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbsuper/exactmath/field.hpp"

namespace rbsuper {

// Ordered, interned list of parameter names. The order fixes the variable
// order of the degrevlex monomial order (first name is the largest variable).
class Symbols {
 public:
  static const Symbols* make(std::vector<std::string> names);
  static const Symbols* empty();

  const std::vector<std::string>& names() const { return names_; }
  size_t size() const { return names_.size(); }
  int index(const std::string& name) const;
  bool contains(const std::string& name) const { return index(name) >= 0; }

 private:
  explicit Symbols(std::vector<std::string> n) : names_(std::move(n)) {}
  std::vector<std::string> names_;
};

// a's names followed by b's names that a lacks.
const Symbols* join_symbols(const Symbols* a, const Symbols* b);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<uint16_t> e);

  size_t size() const { return e_.size(); }
  uint16_t operator[](size_t i) const { return e_[i]; }
  unsigned degree() const { return deg_; }
  const std::vector<uint16_t>& exps() const { return e_; }
  void set(size_t i, uint16_t v);

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // requires divides
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  bool is_one() const { return deg_ == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }

 private:
  std::vector<uint16_t> e_;
  unsigned deg_ = 0;
};

// Total degree first, ties broken by the smaller exponent of the last
// differing variable. Returns true when a > b.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Pure lexicographic, a > b.
struct LexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Polynomial in named parameters with coefficients in a number field.
class PolyExpr {
 public:
  using Terms = std::map<Monomial, Scalar, DegRevLexGreater>;

  PolyExpr() : syms_(Symbols::empty()) {}
  PolyExpr(const Scalar& c);  // NOLINT: constants convert implicitly
  PolyExpr(long c) : PolyExpr(Scalar(c)) {}  // NOLINT
  PolyExpr(int c) : PolyExpr(Scalar(c)) {}   // NOLINT
  static PolyExpr variable(const std::string& name, const Symbols* syms);
  static PolyExpr from_terms(const Symbols* syms, Terms terms);

  const Symbols* symbols() const { return syms_; }
  const Terms& terms() const { return terms_; }
  size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Scalar& leading_coeff() const { return terms_.begin()->second; }
  unsigned total_degree() const;
  const Field* field() const;
  // Indices of variables that actually occur.
  std::vector<size_t> used_variables() const;

  // Same polynomial over a larger symbol table (every used name must exist there).
  PolyExpr rebase(const Symbols* syms) const;

  PolyExpr operator-() const;
  PolyExpr& operator+=(const PolyExpr& o);
  PolyExpr& operator-=(const PolyExpr& o);
  PolyExpr& operator*=(const PolyExpr& o);
  PolyExpr& operator*=(const Scalar& c);
  friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
  friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }
  friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b);
  friend PolyExpr operator*(PolyExpr a, const Scalar& c) { return a *= c; }
  PolyExpr pow(unsigned k) const;

  // Adds c*m*other to this (m, other over this symbol table).
  void add_scaled(const Scalar& c, const Monomial& m, const PolyExpr& other);

  // Quotient if `d` divides this exactly, otherwise nullopt.
  std::optional<PolyExpr> divide_exact(const PolyExpr& d) const;
  // gcd of all monomials; the one-monomial for zero.
  Monomial monomial_content() const;
  PolyExpr divide_monomial(const Monomial& m) const;

  friend bool operator==(const PolyExpr& a, const PolyExpr& b);
  friend bool operator!=(const PolyExpr& a, const PolyExpr& b) { return !(a == b); }

  std::string str() const;

 private:
  void align(PolyExpr& o);
  const Symbols* syms_;
  Terms terms_;
};

std::string monomial_str(const Monomial& m, const Symbols* syms);

}  // namespace rbsuper
