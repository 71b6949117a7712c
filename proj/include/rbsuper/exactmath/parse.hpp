#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rbsuper/exactmath/ratexpr.hpp"

namespace rbsuper {

// Grammar (whitespace ignored):
//   sum     := ['+'|'-'] product (('+'|'-') product)*
//   product := factor (('*'|'/'| juxtaposition) factor)*
//   factor  := ('+'|'-') factor | atom ['^' integer]
//   atom    := integer | identifier | '(' sum ')'
// `t` is the field generator; `i` aliases it when m = t^2+1 and no symbol
// named `i` exists.
RatExpr parse_expr(std::string_view text, const Symbols* syms, const Field* field);

// Same grammar, but identifiers listed in `basis` denote basis vectors; the
// result must be linear in them. A bare scalar 0 is the zero vector.
std::vector<RatExpr> parse_linear(std::string_view text, const Symbols* syms, const Field* field,
                                  const std::vector<std::string>& basis);

// All identifiers appearing in `text`, in order of first appearance.
std::vector<std::string> scan_identifiers(std::string_view text);

// m(t) from text such as `t^2+1`.
const Field* parse_field(const std::string& text);

// Linear combination in a form parse_linear accepts.
std::string linear_str(const std::vector<RatExpr>& coeffs, const std::vector<std::string>& basis);

}  // namespace rbsuper
