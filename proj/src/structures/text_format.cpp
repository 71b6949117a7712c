#include "rbsuper/structures/text_format.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rbsuper/errors.hpp"
#include "rbsuper/exactmath/parse.hpp"

namespace rbsuper {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      std::string item = trim(s.substr(start, i - start));
      if (!item.empty()) out.push_back(item);
      start = i + 1;
    }
  }
  return out;
}

const TextLine* TextSection::find(const std::string& key) const {
  for (auto& l : lines)
    if (l.lhs == key) return &l;
  return nullptr;
}

std::string TextSection::get(const std::string& key, const std::string& fallback) const {
  const TextLine* l = find(key);
  return l ? l->rhs : fallback;
}

std::vector<TextSection> parse_sections(std::string_view text) {
  std::vector<TextSection> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InputError("line " + std::to_string(lineno) + ": unterminated section header");
      TextSection s;
      s.name = trim(std::string_view(line).substr(1, line.size() - 2));
      s.line = lineno;
      out.push_back(std::move(s));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw InputError("line " + std::to_string(lineno) + ": expected 'lhs = rhs'");
    if (out.empty()) throw InputError("line " + std::to_string(lineno) + ": content before the first section");
    out.back().lines.push_back({trim(std::string_view(line).substr(0, eq)),
                                trim(std::string_view(line).substr(eq + 1)), lineno});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

GradedBasis parse_basis_spec(const std::string& spec) {
  std::vector<std::string> names;
  std::vector<int> par;
  for (auto& item : split_list(spec)) {
    size_t c = item.find(':');
    if (c == std::string::npos) throw InputError("basis element '" + item + "' lacks ':even' or ':odd'");
    std::string name = trim(std::string_view(item).substr(0, c));
    std::string p = trim(std::string_view(item).substr(c + 1));
    if (p != "even" && p != "odd") throw InputError("parity of '" + name + "' must be even or odd");
    names.push_back(name);
    par.push_back(p == "odd");
  }
  if (names.empty()) throw InputError("empty basis");
  return make_basis(names, par);
}

std::string basis_spec(const GradedBasis& b) {
  std::string out;
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += b.names[i] + (b.p(i) ? ":odd" : ":even");
  }
  return out;
}

namespace {

[[noreturn]] void fail_at(const TextLine& l, const std::string& msg) {
  throw InputError("line " + std::to_string(l.line) + ": " + msg);
}

std::pair<int, int> parse_pair(const TextLine& l, const std::vector<std::string>& left,
                               const std::vector<std::string>& right) {
  auto parts = split_list(l.lhs, '*');
  if (parts.size() != 2) fail_at(l, "expected 'x * y' on the left of '='");
  auto find = [&](const std::vector<std::string>& names, const std::string& n) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) fail_at(l, "unknown basis element '" + n + "'");
    return static_cast<int>(it - names.begin());
  };
  return {find(left, parts[0]), find(right, parts[1])};
}

std::vector<RatExpr> parse_rhs(const TextLine& l, const Symbols* syms, const Field* f,
                               const std::vector<std::string>& basis) {
  try {
    return parse_linear(l.rhs, syms, f, basis);
  } catch (const SyntaxError& e) {
    fail_at(l, e.what());
  } catch (const UnknownSymbol& e) {
    fail_at(l, e.what());
  }
}

void fill_table(const TextSection& s, StructureTable& t, const GradedBasis& b, const Symbols* syms,
                const Field* f, std::vector<std::vector<bool>>* set = nullptr) {
  std::set<std::pair<int, int>> seen;
  for (auto& l : s.lines) {
    auto [i, j] = parse_pair(l, b.names, b.names);
    if (!seen.insert({i, j}).second) fail_at(l, "product " + l.lhs + " given twice");
    auto v = parse_rhs(l, syms, f, b.names);
    for (size_t k = 0; k < b.size(); ++k) t.at(i, j, k) = v[k];
    if (set) (*set)[i][j] = true;
  }
}

void fill_action(const TextSection& s, ActionTable& t, const GradedBasis& ab, const GradedBasis& mb,
                 const Symbols* syms, const Field* f) {
  std::set<std::pair<int, int>> seen;
  for (auto& l : s.lines) {
    auto [i, a] = parse_pair(l, ab.names, mb.names);
    if (!seen.insert({i, a}).second) fail_at(l, "action " + l.lhs + " given twice");
    auto v = parse_rhs(l, syms, f, mb.names);
    for (size_t k = 0; k < mb.size(); ++k) t.at(i, a, k) = v[k];
  }
}

const Symbols* infer_params(const std::vector<const TextSection*>& secs, const std::set<std::string>& skip,
                            const Field* f) {
  std::vector<std::string> names;
  for (auto* s : secs)
    for (auto& l : s->lines)
      for (auto& id : scan_identifiers(l.rhs)) {
        if (skip.count(id) || id == "t" || (id == "i" && f->has_i_alias())) continue;
        if (std::find(names.begin(), names.end(), id) == names.end()) names.push_back(id);
      }
  return Symbols::make(names);
}

std::vector<RatExpr> parse_expr_list(const std::string& s, const Symbols* syms, const Field* f) {
  std::vector<RatExpr> out;
  for (auto& item : split_list(s)) out.push_back(parse_expr(item, syms, f));
  return out;
}

}  // namespace

AlgebraFile parse_algebra_text(std::string_view text) {
  auto sections = parse_sections(text);
  AlgebraFile out;
  const Field* field = Field::gaussian();
  const TextSection* alg = nullptr;
  const TextSection* modsec = nullptr;
  std::vector<const TextSection*> product_secs, action_secs, internal_secs;
  for (auto& s : sections) {
    if (s.name == "field") {
      if (const TextLine* m = s.find("m")) field = parse_field(m->rhs);
    } else if (s.name == "algebra") {
      alg = &s;
    } else if (s.name.rfind("products", 0) == 0) {
      product_secs.push_back(&s);
    } else if (s.name == "module") {
      modsec = &s;
    } else if (s.name.rfind("actions.", 0) == 0) {
      action_secs.push_back(&s);
    } else if (s.name.rfind("module.products", 0) == 0) {
      internal_secs.push_back(&s);
    } else if (s.name == "operator") {
      out.operators.push_back({s});
    } else if (s.name.rfind("operator.", 0) == 0) {
      if (out.operators.empty()) throw InputError("line " + std::to_string(s.line) + ": [" + s.name + "] before [operator]");
      out.operators.back().push_back(s);
    } else {
      throw InputError("line " + std::to_string(s.line) + ": unknown section [" + s.name + "]");
    }
  }
  if (!alg) throw InputError("missing [algebra] section");
  Kind kind = parse_kind(alg->get("kind", "pre-lie"));
  GradedBasis basis = parse_basis_spec(alg->get("basis"));
  GradedBasis mbasis;
  if (modsec) {
    std::string spec = modsec->get("basis");
    if (spec.empty()) {
      int dim = std::stoi(modsec->get("dim", "0"));
      auto par = split_list(modsec->get("parities"));
      if (static_cast<int>(par.size()) != dim) throw InputError("[module] needs dim parities");
      for (int i = 0; i < dim; ++i) spec += (i ? ", v" : "v") + std::to_string(i + 1) + ":" + par[i];
    }
    mbasis = parse_basis_spec(spec);
  }

  const Symbols* params;
  if (const TextLine* p = alg->find("parameters")) {
    params = Symbols::make(split_list(p->rhs));
  } else {
    std::set<std::string> skip(basis.names.begin(), basis.names.end());
    skip.insert(mbasis.names.begin(), mbasis.names.end());
    std::vector<const TextSection*> all = product_secs;
    all.insert(all.end(), action_secs.begin(), action_secs.end());
    all.insert(all.end(), internal_secs.begin(), internal_secs.end());
    params = infer_params(all, skip, field);
  }

  SuperAlgebra a = make_algebra(alg->get("name", "unnamed"), kind, basis, params, field);
  a.also_associative = alg->get("also_associative") == "true";
  a.lie_admissible = alg->get("lie_admissible") == "true";
  a.note = alg->get("note");
  a.constraints = parse_expr_list(alg->get("constraints"), params, field);
  for (auto& item : split_list(alg->get("pins"))) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw InputError("pin '" + item + "' must read name=value");
    std::string name = trim(std::string_view(item).substr(0, eq));
    if (!params->contains(name)) throw InputError("pin for undeclared parameter '" + name + "'");
    a.pins[name] = parse_expr(trim(std::string_view(item).substr(eq + 1)), params, field);
  }

  auto table_index = [&](const std::string& name, const std::string& prefix) -> size_t {
    if (kind == Kind::l_dendriform) {
      if (name == prefix + ".right") return 0;
      if (name == prefix + ".left") return 1;
      throw InputError("l-dendriform tables are [" + prefix + ".right] and [" + prefix + ".left]");
    }
    if (name != prefix) throw InputError("unexpected section [" + name + "] for kind " + kind_name(kind));
    return 0;
  };

  std::vector<std::vector<bool>> set(basis.size(), std::vector<bool>(basis.size(), false));
  for (auto* s : product_secs)
    fill_table(*s, a.tables[table_index(s->name, "products")], basis, params, field, &set);
  if (kind == Kind::lie) {
    // Only one of [x,y], [y,x] needs to be written.
    StructureTable& t = a.tables[0];
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j)
        if (set[i][j] && !set[j][i]) {
          int s = ksign(basis.p(i), basis.p(j));
          for (size_t k = 0; k < basis.size(); ++k)
            t.at(j, i, k) = s == 1 ? -t.at(i, j, k) : t.at(i, j, k);
          set[j][i] = true;
        }
  }
  out.algebra = std::move(a);

  if (modsec) {
    ModuleData m;
    m.kind = kind;
    m.basis = mbasis;
    auto names = action_names(kind);
    m.actions.assign(names.size(), ActionTable(basis.size(), mbasis.size()));
    for (auto* s : action_secs) {
      std::string which = s->name.substr(std::string("actions.").size());
      auto it = std::find(names.begin(), names.end(), which);
      if (it == names.end()) throw InputError("[" + s->name + "] is not an action of a " + kind_name(kind) + " module");
      fill_action(*s, m.actions[it - names.begin()], basis, mbasis, params, field);
    }
    if (!internal_secs.empty()) {
      m.internal.assign(kind == Kind::l_dendriform ? 2 : 1, StructureTable(mbasis.size()));
      for (auto* s : internal_secs)
        fill_table(*s, m.internal[table_index(s->name, "module.products")], mbasis, params, field);
    }
    out.module = std::move(m);
  } else if (!action_secs.empty()) {
    throw InputError("[actions.*] without a [module] section");
  }
  return out;
}

AlgebraFile load_algebra_file(const std::string& path) { return parse_algebra_text(read_file(path)); }

namespace {

void render_table(std::ostringstream& os, const std::string& header, const StructureTable& t,
                  const GradedBasis& b) {
  os << "\n[" << header << "]\n";
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      if (!t.product_is_zero(i, j))
        os << b.names[i] << " * " << b.names[j] << " = " << linear_str(t.product(i, j), b.names) << "\n";
}

}  // namespace

std::string render_algebra(const SuperAlgebra& a, const ModuleData* m) {
  std::ostringstream os;
  os << "[field]\nm = " << a.field->minpoly_text() << "\n\n[algebra]\n";
  os << "name = " << a.name << "\nkind = " << kind_name(a.kind) << "\nbasis = " << basis_spec(a.basis) << "\n";
  std::string params;
  for (auto& n : a.params->names()) params += (params.empty() ? "" : ", ") + n;
  os << "parameters = " << params << "\n";
  if (!a.constraints.empty()) {
    os << "constraints = ";
    for (size_t i = 0; i < a.constraints.size(); ++i) os << (i ? ", " : "") << a.constraints[i].str();
    os << "\n";
  }
  if (!a.pins.empty()) {
    os << "pins = ";
    bool first = true;
    for (auto& [k, v] : a.pins) {
      os << (first ? "" : ", ") << k << "=" << v.str();
      first = false;
    }
    os << "\n";
  }
  if (a.also_associative) os << "also_associative = true\n";
  if (a.lie_admissible) os << "lie_admissible = true\n";
  if (!a.note.empty()) os << "note = " << a.note << "\n";
  if (a.kind == Kind::l_dendriform) {
    render_table(os, "products.right", a.table(0), a.basis);
    render_table(os, "products.left", a.table(1), a.basis);
  } else {
    render_table(os, "products", a.table(0), a.basis);
  }
  if (m) {
    os << "\n[module]\nbasis = " << basis_spec(m->basis) << "\n";
    auto names = action_names(m->kind);
    for (size_t t = 0; t < m->actions.size(); ++t) {
      os << "\n[actions." << names[t] << "]\n";
      const ActionTable& act = m->actions[t];
      for (size_t i = 0; i < a.dim(); ++i)
        for (size_t al = 0; al < m->dim(); ++al) {
          Vec v(m->dim());
          for (size_t b = 0; b < m->dim(); ++b) v[b] = act.at(i, al, b);
          if (!is_zero(v))
            os << a.basis.names[i] << " * " << m->basis.names[al] << " = " << linear_str(v, m->basis.names) << "\n";
        }
    }
    if (m->has_internal()) {
      if (m->kind == Kind::l_dendriform) {
        render_table(os, "module.products.right", m->internal[0], m->basis);
        render_table(os, "module.products.left", m->internal[1], m->basis);
      } else {
        render_table(os, "module.products", m->internal[0], m->basis);
      }
    }
  }
  return os.str();
}

}  // namespace rbsuper
