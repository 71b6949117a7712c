#include "rbsuper/catalog/catalog.hpp"

#include <chrono>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rbsuper/errors.hpp"
#include "rbsuper/operators/oracle.hpp"

namespace rbsuper {

namespace detail {
struct EmbeddedFile {
  const char* name;
  const char* text;
};
extern const EmbeddedFile kEmbeddedCatalog[];
extern const std::size_t kEmbeddedCatalogCount;
}  // namespace detail

namespace {

constexpr const char* kEntryMarker = "%% entry ";

const std::vector<CatalogEntry>& embedded() {
  static const std::vector<CatalogEntry> all = [] {
    std::vector<CatalogEntry> out;
    for (size_t f = 0; f < detail::kEmbeddedCatalogCount; ++f) {
      auto part = parse_catalog_text(detail::kEmbeddedCatalog[f].text);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }();
  return all;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void add_errata(VerifySummary& s, const std::string& entry, const std::string& family, const CheckReport& rep,
                const std::string& note) {
  for (auto& w : rep.witnesses)
    s.errata.push_back({entry, family, w.axiom, w.indices, w.vector, note});
}

std::string join_notes(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "; " + b;
}

}  // namespace

SuperAlgebra super_opposite(const SuperAlgebra& a) {
  SuperAlgebra o = a;
  size_t n = a.dim();
  for (size_t t = 0; t < a.tables.size(); ++t)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
          RatExpr c = a.table(t).at(j, i, k);
          if (!c.is_zero() && ksign(a.basis.p(i), a.basis.p(j)) < 0) c = -c;
          o.tables[t].at(i, j, k) = c;
        }
  return o;
}

CatalogEntry parse_catalog_entry(const std::string& id, const std::string& text) {
  AlgebraFile f;
  try {
    f = parse_algebra_text(text);
  } catch (const Error& e) {
    throw InputError("catalog entry " + id + ": " + e.what());
  }
  CatalogEntry e;
  e.id = id;
  e.algebra = f.algebra;
  e.note = f.algebra.note;
  e.field = f.algebra.field->minpoly_text();
  e.pins = f.algebra.pins;
  for (auto& g : f.operators) e.families.push_back(parse_operator(g, f.algebra, nullptr, false));
  return e;
}

std::vector<CatalogEntry> parse_catalog_text(const std::string& text) {
  std::vector<CatalogEntry> out;
  std::istringstream in(text);
  std::string line, id, body;
  bool open = false;
  auto flush = [&] {
    if (open) out.push_back(parse_catalog_entry(id, body));
    body.clear();
  };
  while (std::getline(in, line)) {
    if (line.rfind(kEntryMarker, 0) == 0) {
      flush();
      id = trim(std::string_view(line).substr(std::string(kEntryMarker).size()));
      open = true;
    } else if (open) {
      body += line + "\n";
    }
  }
  flush();
  return out;
}

std::string render_catalog_entry(const CatalogEntry& e) {
  std::string s = std::string(kEntryMarker) + e.id + "\n" + render_algebra(e.algebra);
  for (auto& f : e.families) s += "\n" + render_operator(f, e.algebra);
  return s;
}

std::vector<CatalogInfo> catalog_list() {
  std::vector<CatalogInfo> out;
  for (auto& e : embedded()) {
    CatalogInfo i;
    i.id = e.id;
    i.kind = kind_name(e.algebra.kind);
    for (int p : e.algebra.basis.parity) (p ? i.odd_dim : i.even_dim)++;
    i.families = e.families.size();
    i.also_associative = e.algebra.also_associative;
    out.push_back(i);
  }
  return out;
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (auto& e : embedded()) ids.push_back(e.id);
  return ids;
}

CatalogEntry catalog_get(const std::string& id) {
  for (auto& e : embedded())
    if (e.id == id) return e;
  throw UnknownId("no catalog entry '" + id + "'");
}

bool glob_match(const std::string& pattern, const std::string& text) {
  size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

VerifySummary verify_entries(const std::vector<CatalogEntry>& entries, const VerifyOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  VerifySummary s;
  const CatalogEntry* perturb_entry = nullptr;
  const OperatorFamily* perturb_fam = nullptr;
  for (auto& e : entries) {
    if (!glob_match(opt.filter, e.id)) continue;
    ++s.entries;
    SuperAlgebra a = e.algebra.pinned();

    AlgebraVerdict av;
    av.entry = e.id;
    CheckReport grading = validate(a);
    CheckReport axioms = check_axioms(a);
    av.passed = grading.passed && axioms.passed;
    if (!axioms.passed) av.opposite_passes = check_axioms(super_opposite(a)).passed;
    if (av.passed) ++s.algebras_passed;
    std::string opp_note = av.opposite_passes ? "the super-opposite product satisfies the identity" : "";
    add_errata(s, e.id, "", grading, e.note);
    add_errata(s, e.id, "", axioms, join_notes(e.note, opp_note));
    s.algebras.push_back(av);

    for (auto& fam : e.families) {
      auto tf = std::chrono::steady_clock::now();
      ++s.checked;
      FamilyVerdict fv{e.id, fam.name, false, 0};
      OperatorFamily f = e.algebra.pins.empty() ? fam : fam.substitute(e.algebra.pins);
      if (!f.map.respects_grading()) {
        ErrataRecord r{e.id, fam.name, "even map", {}, "", join_notes(fam.note, "R mixes the even and odd parts")};
        for (size_t k = 0; k < f.map.rows(); ++k)
          for (size_t i = 0; i < f.map.cols(); ++i)
            if (f.map.cod_parity()[k] != f.map.dom_parity()[i] && !f.map.at(k, i).is_zero() && r.witness.empty()) {
              r.witness = {static_cast<int>(i) + 1, static_cast<int>(k) + 1};
              r.residual = "R(" + a.basis.names[i] + ") has " + f.map.at(k, i).str() + " " + a.basis.names[k];
            }
        s.errata.push_back(r);
      } else {
        CheckReport rep = check_rb(a, f);
        fv.passed = rep.passed;
        add_errata(s, e.id, fam.name, rep, fam.note);
        bool has_products = false;
        for (auto& c : a.table().raw()) has_products = has_products || !c.is_zero();
        if (rep.passed && has_products && !perturb_fam) {
          perturb_entry = &e;
          perturb_fam = &fam;
        }
      }
      (fv.passed ? s.passed : s.failed)++;
      fv.seconds = since(tf);
      s.families.push_back(fv);
    }
  }
  if (opt.inject_perturbation && perturb_fam) {
    PerturbationResult pr;
    pr.entry = perturb_entry->id;
    auto bad = perturb_family(perturb_entry->algebra, *perturb_fam, opt.seed);
    pr.family = bad ? bad->name : perturb_fam->name;
    pr.detected = bad && !check_rb(perturb_entry->algebra.pinned(), *bad).passed;
    s.perturbation = pr;
  }
  s.seconds = since(t0);
  if (!opt.errata_path.empty()) write_errata(s, opt.errata_path);
  return s;
}

VerifySummary catalog_verify_all(const VerifyOptions& opt) { return verify_entries(embedded(), opt); }

std::string errata_jsonl(const VerifySummary& s) {
  std::string out;
  for (auto& r : s.errata) {
    nlohmann::json j = {{"entry", r.entry},       {"family", r.family}, {"identity", r.identity},
                        {"witness", r.witness},   {"residual", r.residual}, {"note", r.note}};
    out += j.dump() + "\n";
  }
  nlohmann::json sum = {{"entries", s.entries},
                        {"algebras_passed", s.algebras_passed},
                        {"checked", s.checked},
                        {"passed", s.passed},
                        {"failed", s.failed},
                        {"errata", s.errata.size()},
                        {"seconds", s.seconds}};
  if (s.perturbation)
    sum["perturbation"] = {{"entry", s.perturbation->entry},
                           {"family", s.perturbation->family},
                           {"detected", s.perturbation->detected}};
  out += nlohmann::json{{"summary", sum}}.dump() + "\n";
  return out;
}

void write_errata(const VerifySummary& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write errata file " + path);
  out << errata_jsonl(s);
  if (!out) throw std::runtime_error("error writing errata file " + path);
}

}  // namespace rbsuper
