#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbsuper/structures/checks.hpp"
#include "rbsuper/structures/text_format.hpp"

namespace rbsuper {

// Linear map between graded spaces, stored as M(k, i) = coefficient of f_k in
// the image of e_i (column i is the image of e_i).
class EvenMap {
 public:
  EvenMap() = default;
  EvenMap(std::vector<int> dom_parity, std::vector<int> cod_parity, int parity = 0)
      : dom_(std::move(dom_parity)), cod_(std::move(cod_parity)), parity_(parity),
        m_(dom_.size() * cod_.size()) {}

  size_t rows() const { return cod_.size(); }
  size_t cols() const { return dom_.size(); }
  int parity() const { return parity_; }
  const std::vector<int>& dom_parity() const { return dom_; }
  const std::vector<int>& cod_parity() const { return cod_; }
  RatExpr& at(size_t k, size_t i) { return m_[k * cols() + i]; }
  const RatExpr& at(size_t k, size_t i) const { return m_[k * cols() + i]; }
  std::vector<RatExpr>& raw() { return m_; }
  const std::vector<RatExpr>& raw() const { return m_; }

  Vec image(size_t i) const;
  Vec apply(const Vec& x) const;
  // Entries that break the parity of the map.
  bool respects_grading() const;
  EvenMap scaled(const RatExpr& c) const;
  EvenMap substitute(const std::map<std::string, RatExpr>& values) const;
  friend bool operator==(const EvenMap& a, const EvenMap& b);

 private:
  std::vector<int> dom_, cod_;
  int parity_ = 0;
  std::vector<RatExpr> m_;
};

EvenMap zero_map(const GradedBasis& dom, const GradedBasis& cod);
EvenMap identity_map(const GradedBasis& b);
EvenMap compose(const EvenMap& f, const EvenMap& g);  // f after g

enum class Role { rota_baxter, o_operator, extended_o_operator };
std::string role_name(Role r);
Role parse_role(const std::string& s);

// A parameter read back from one matrix cell: param = M(row, col) / scale.
struct Pivot {
  std::string param;
  size_t row = 0, col = 0;
  Scalar scale = Scalar(1);
};

struct OperatorFamily {
  std::string name;
  std::string algebra;
  Role role = Role::rota_baxter;
  Scalar weight = Scalar(0);  // canonical: R(x)R(y) = R(R(x)y + xR(y) + weight xy)
  bool iden_rota = false;     // weight was written in the opposite-sign convention
  EvenMap map;
  std::optional<EvenMap> modification;  // T' of an extended O-operator
  std::optional<EvenMap> module_map;    // R_V of a module operator
  const Symbols* params = Symbols::empty();
  std::vector<RatExpr> constraints;  // must not vanish
  std::vector<Pivot> pivots;
  std::vector<std::string> unpivoted;  // parameters no cell isolates
  std::string note;

  // Weight as written in the file.
  Scalar written_weight() const { return iden_rota ? -weight : weight; }
  OperatorFamily substitute(const std::map<std::string, RatExpr>& values) const;
};

// Parses one `[operator]` group against its algebra (and module, for roles
// whose domain is the module). With require_even unset, an R map that breaks
// the grading is kept as read (the catalog reports it instead).
OperatorFamily parse_operator(const std::vector<TextSection>& group, const SuperAlgebra& a,
                              const ModuleData* m = nullptr, bool require_even = true);
std::string render_operator(const OperatorFamily& op, const SuperAlgebra& a, const ModuleData* m = nullptr);

// Cells whose entry is a nonzero constant times a single parameter.
void derive_pivots(OperatorFamily& op);

enum class MultSide { left, right, adjoint };
// L(x)(y) = x y, R(x)(y) = (-1)^{|x||y|} y x, ad(x)(y) = [x, y].
EvenMap mult_operator(const SuperAlgebra& a, MultSide side, const Vec& x, size_t table = 0);

// Rota-Baxter identity of the algebra's kind, identically in all parameters:
//   associative, pre-Lie:  R(x)R(y) = R(R(x)y + xR(y) + w xy)
//   Lie:                   [R(x),R(y)] = R([R(x),y] - (-1)^{|x||y|}[R(y),x] + w[x,y])
//   L-dendriform:          the first form for both products.
CheckReport check_rb(const SuperAlgebra& a, const EvenMap& r, const Scalar& weight,
                     const CheckOptions& opt = {}, const TupleFilter& filter = nullptr);
CheckReport check_rb(const SuperAlgebra& a, const OperatorFamily& op, const CheckOptions& opt = {});

// T : V -> A relative to the module V:
//   T(u)T(v) = T(l(T(u))v + (-1)^{|u||v|} r(T(v))u + w u._V v)   (Lie: rho form)
CheckReport check_o_operator(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t,
                             const Scalar& weight, const CheckOptions& opt = {});

// Extended O-operator (T, T') of weight w on an associative or pre-Lie bimodule:
//   w l(T'(u))v = w r(T'(v))u
//   T(u)T(v) = T(l(T(u))v + (-1)^{|u||v|} r(T(v))u) + w T'(u)T'(v)
CheckReport check_extended_o_operator(const SuperAlgebra& a, const ModuleData& m, const EvenMap& t,
                                      const EvenMap& tprime, const Scalar& weight,
                                      const CheckOptions& opt = {});

// R on A with R_V on V: the RB identity on pairs with one module element.
CheckReport check_rb_on_module(const SuperAlgebra& a, const ModuleData& m, const EvenMap& r,
                               const EvenMap& rv, const Scalar& weight, const CheckOptions& opt = {});

// f : A -> A' with f(xy) = f(x)f(y) for every product and f R = R' f.
CheckReport check_rb_morphism(const SuperAlgebra& a, const EvenMap& r, const SuperAlgebra& b,
                              const EvenMap& rb, const EvenMap& f, const CheckOptions& opt = {});

// A (+) V map acting as r on A and rv on V.
EvenMap direct_sum(const EvenMap& r, const EvenMap& rv);

}  // namespace rbsuper
