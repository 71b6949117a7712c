#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbsuper/operators/operators.hpp"

namespace rbsuper {

// One classified algebra (or one parameter case of it) with its RB families.
struct CatalogEntry {
  std::string id;
  SuperAlgebra algebra;
  std::vector<OperatorFamily> families;
  std::string note;
  std::string field;                       // minimal polynomial text
  std::map<std::string, RatExpr> pins;
};

struct CatalogInfo {
  std::string id;
  std::string kind;
  size_t even_dim = 0, odd_dim = 0;
  size_t families = 0;
  bool also_associative = false;
};

// Entries in the order of the source tables.
std::vector<CatalogInfo> catalog_list();
std::vector<std::string> catalog_ids();
// Throws UnknownId.
CatalogEntry catalog_get(const std::string& id);

// Entries of a catalog text: `%% entry <id>` lines separate algebra files.
std::vector<CatalogEntry> parse_catalog_text(const std::string& text);
CatalogEntry parse_catalog_entry(const std::string& id, const std::string& text);
std::string render_catalog_entry(const CatalogEntry& e);

// Shell-style glob with `*` and `?`.
bool glob_match(const std::string& pattern, const std::string& text);

struct ErrataRecord {
  std::string entry;
  std::string family;    // empty for algebra-level failures
  std::string identity;  // failing axiom or identity
  std::vector<int> witness;
  std::string residual;
  std::string note;
};

struct FamilyVerdict {
  std::string entry, family;
  bool passed = false;
  double seconds = 0;
};

struct AlgebraVerdict {
  std::string entry;
  bool passed = false;
  bool opposite_passes = false;  // the super-opposite product satisfies the identity
};

struct VerifyOptions {
  std::string filter = "*";
  std::string errata_path;  // JSON lines; empty: not written
  // Also verify one perturbed copy of a family and require an exact failure.
  bool inject_perturbation = true;
  uint64_t seed = 0;
};

struct PerturbationResult {
  std::string entry, family;
  bool detected = false;
};

struct VerifySummary {
  size_t entries = 0;
  size_t algebras_passed = 0;
  size_t checked = 0;  // families
  size_t passed = 0;
  size_t failed = 0;
  std::vector<AlgebraVerdict> algebras;
  std::vector<FamilyVerdict> families;
  std::vector<ErrataRecord> errata;
  std::optional<PerturbationResult> perturbation;
  double seconds = 0;
};

VerifySummary verify_entries(const std::vector<CatalogEntry>& entries, const VerifyOptions& opt = {});
VerifySummary catalog_verify_all(const VerifyOptions& opt = {});

// Writes the errata as JSON lines with the summary object last.
void write_errata(const VerifySummary& s, const std::string& path);
std::string errata_jsonl(const VerifySummary& s);

// The super-opposite product x . y = (-1)^{|x||y|} y o x of every table.
SuperAlgebra super_opposite(const SuperAlgebra& a);

}  // namespace rbsuper
