#include "rbsuper/exactmath/parse.hpp"

#include <cctype>
#include <optional>

#include "rbsuper/errors.hpp"

namespace rbsuper {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Either a scalar or a vector over the given basis.
struct Value {
  RatExpr s;
  std::optional<std::vector<RatExpr>> v;
  bool is_vec() const { return v.has_value(); }
};

class Parser {
 public:
  Parser(std::string_view text, const Symbols* syms, const Field* field,
         const std::vector<std::string>* basis)
      : text_(text), syms_(syms), field_(field), basis_(basis) {}

  Value run() {
    Value v = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Value sum() {
    Value acc;
    char c = peek();
    bool neg = false;
    if (c == '+' || c == '-') {
      neg = c == '-';
      ++pos_;
    }
    acc = product();
    if (neg) negate(acc);
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      size_t at = pos_;
      ++pos_;
      Value rhs = product();
      if (c == '-') negate(rhs);
      add(acc, rhs, at);
    }
    return acc;
  }

  bool starts_atom(char c) {
    return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '(';
  }

  Value product() {
    Value acc = factor();
    for (;;) {
      char c = peek();
      size_t at = pos_;
      if (c == '*') {
        ++pos_;
        Value rhs = factor();
        mul(acc, rhs, at);
      } else if (c == '/') {
        ++pos_;
        Value rhs = factor();
        div(acc, rhs, at);
      } else if (starts_atom(c)) {
        Value rhs = factor();
        mul(acc, rhs, at);
      } else {
        break;
      }
    }
    return acc;
  }

  Value factor() {
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      Value v = factor();
      if (c == '-') negate(v);
      return v;
    }
    Value base = atom();
    if (peek() == '^') {
      size_t at = pos_;
      ++pos_;
      skip_ws();
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (base.is_vec()) throw SyntaxError("cannot raise a basis vector to a power", at);
      base.s = base.s.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  Value atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Value v;
      v.s = RatExpr(Rational(std::string(text_.substr(start, pos_ - start))));
      return v;
    }
    if (ident_start(c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      return identifier(name, start);
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value identifier(const std::string& name, size_t at) {
    Value v;
    if (basis_) {
      for (size_t i = 0; i < basis_->size(); ++i)
        if ((*basis_)[i] == name) {
          v.v = std::vector<RatExpr>(basis_->size());
          (*v.v)[i] = RatExpr(1);
          return v;
        }
    }
    if (syms_->contains(name)) {
      v.s = RatExpr::variable(name, syms_);
      return v;
    }
    if (name == "t" || (name == "i" && field_->has_i_alias())) {
      v.s = RatExpr(Scalar::generator(field_));
      return v;
    }
    (void)at;
    throw UnknownSymbol("'" + name + "' at byte " + std::to_string(at));
  }

  static void negate(Value& v) {
    if (v.is_vec())
      for (auto& e : *v.v) e = -e;
    else
      v.s = -v.s;
  }

  void promote_zero(Value& v) {
    if (!v.is_vec() && basis_ && v.s.is_zero()) v.v = std::vector<RatExpr>(basis_->size());
  }

  void add(Value& a, Value& b, size_t at) {
    if (a.is_vec() != b.is_vec()) {
      promote_zero(a);
      promote_zero(b);
      if (a.is_vec() != b.is_vec()) throw SyntaxError("cannot add a scalar and a vector", at);
    }
    if (a.is_vec())
      for (size_t i = 0; i < a.v->size(); ++i) (*a.v)[i] += (*b.v)[i];
    else
      a.s += b.s;
  }

  void mul(Value& a, Value& b, size_t at) {
    if (a.is_vec() && b.is_vec()) throw SyntaxError("product of two basis vectors", at);
    if (a.is_vec()) {
      for (auto& e : *a.v) e *= b.s;
    } else if (b.is_vec()) {
      for (auto& e : *b.v) e *= a.s;
      a = std::move(b);
    } else {
      a.s *= b.s;
    }
  }

  void div(Value& a, Value& b, size_t at) {
    if (b.is_vec()) throw SyntaxError("division by a basis vector", at);
    if (b.s.is_zero()) throw DivideByZero("division by zero at byte " + std::to_string(at));
    if (a.is_vec())
      for (auto& e : *a.v) e /= b.s;
    else
      a.s /= b.s;
  }

  std::string_view text_;
  size_t pos_ = 0;
  const Symbols* syms_;
  const Field* field_;
  const std::vector<std::string>* basis_;
};

}  // namespace

RatExpr parse_expr(std::string_view text, const Symbols* syms, const Field* field) {
  Value v = Parser(text, syms, field, nullptr).run();
  return v.s;
}

std::vector<RatExpr> parse_linear(std::string_view text, const Symbols* syms, const Field* field,
                                  const std::vector<std::string>& basis) {
  Value v = Parser(text, syms, field, &basis).run();
  if (v.is_vec()) return *v.v;
  if (v.s.is_zero()) return std::vector<RatExpr>(basis.size());
  throw SyntaxError("expected a linear combination of basis vectors", 0);
}

std::vector<std::string> scan_identifiers(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    if (ident_start(text[i]) && (i == 0 || !ident_char(text[i - 1]) ||
                                 std::isdigit(static_cast<unsigned char>(text[i - 1])))) {
      size_t s = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string name(text.substr(s, i - s));
      bool seen = false;
      for (auto& o : out) seen = seen || o == name;
      if (!seen) out.push_back(name);
    } else {
      ++i;
    }
  }
  return out;
}

const Field* parse_field(const std::string& text) {
  const Symbols* t = Symbols::make({"t"});
  RatExpr e = parse_expr(text, t, Field::rational());
  if (!e.is_polynomial()) throw InputError("field polynomial must be a polynomial in t");
  PolyExpr p = e.num().rebase(t);
  unsigned deg = p.total_degree();
  std::vector<Rational> c(deg + 1, Rational(0));
  for (auto& [m, v] : p.terms()) c[m.degree()] = v.rational_part();
  if (deg < 1) throw InputError("field polynomial must have degree >= 1");
  return Field::make(c);
}

std::string linear_str(const std::vector<RatExpr>& coeffs, const std::vector<std::string>& basis) {
  std::string out;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    const RatExpr& c = coeffs[k];
    if (c.is_zero()) continue;
    std::string term;
    if (c == RatExpr(1))
      term = basis[k];
    else if (c == RatExpr(-1))
      term = "-" + basis[k];
    else if (c.is_polynomial() && c.num().num_terms() == 1 && c.num().leading_coeff().is_rational())
      term = c.str() + " " + basis[k];
    else
      term = "(" + c.str() + ") " + basis[k];
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace rbsuper
