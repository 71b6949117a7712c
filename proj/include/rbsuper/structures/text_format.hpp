#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbsuper/structures/algebra.hpp"

namespace rbsuper {

// Line-oriented sectioned text: `[section]` headers, `lhs = rhs` lines, and
// full-line `#` comments.
struct TextLine {
  std::string lhs, rhs;
  int line = 0;
};

struct TextSection {
  std::string name;
  int line = 0;
  std::vector<TextLine> lines;
  const TextLine* find(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback = "") const;
};

std::vector<TextSection> parse_sections(std::string_view text);

std::string trim(std::string_view s);
std::vector<std::string> split_list(std::string_view s, char sep = ',');

// Contents of a .salg file. Operator sections (`[operator]` and its
// `[operator.*]` followers) are kept raw, one group per operator.
struct AlgebraFile {
  SuperAlgebra algebra;
  std::optional<ModuleData> module;
  std::vector<std::vector<TextSection>> operators;
};

AlgebraFile parse_algebra_text(std::string_view text);
AlgebraFile load_algebra_file(const std::string& path);
std::string read_file(const std::string& path);

std::string render_algebra(const SuperAlgebra& a, const ModuleData* m = nullptr);

// Parses `name:even, name:odd` lists.
GradedBasis parse_basis_spec(const std::string& spec);
std::string basis_spec(const GradedBasis& b);

}  // namespace rbsuper
