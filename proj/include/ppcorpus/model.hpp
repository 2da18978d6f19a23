#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppcorpus/dates.hpp"

namespace ppcorpus {

// Two-letter lowercase language identifier ("en", "it").
struct LanguageTag {
  std::string code;

  static std::optional<LanguageTag> parse(std::string_view text);
  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;
  friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;
};

// Which ranking justified a company's inclusion, and when it was consulted.
struct RankProvenance {
  std::string source_name;  // e.g. "Alexa Top10 US"
  YearMonth snapshot_date;
  std::optional<int> rank_position;
};

struct CompanyEntry {
  std::string id;  // unique slug
  std::string display_name;
  std::string sector;  // non-empty; replacement matching keys off this
  RankProvenance provenance;
  std::string role_notes;
};

struct PolicyRecord {
  std::string company_id;
  LanguageTag language;
  std::string source_url;  // provenance only, never fetched
  std::optional<YearMonth> version_date;  // absent = unknown
  std::filesystem::path text_path;        // relative to the manifest file
  std::vector<std::string> segment_ids;   // optional alignment hints
};

// One manual judgment per corpus slot, mirroring the branch conditions a
// human resolves when looking for the replication-language counterpart.
// The toolkit mechanizes the bookkeeping, never the judgment itself.
struct PairAnnotation {
  std::string company_id;  // the original-study company this slot descends from
  bool company_exists_in_replication_country = true;
  bool policy_exists_in_replication_language = true;
  bool structure_judged_destructured = false;
  std::optional<std::string> replacement_company_id;  // iff company missing
  std::optional<std::string> substitute_company_id;   // complementary stand-in
  std::optional<std::string> sector_pair_company_id;  // cross-language sector pairing
  bool added_as_complementary = false;
  bool exclusion_from_gap = false;
  std::string exclusion_reason;
  std::string notes;
};

enum class ClassificationLabel { Comparable, Complementary, Replacement, Destructured };

std::string_view to_string(ClassificationLabel label);

struct CorpusSection {
  std::string study_name;
  LanguageTag language;
  std::optional<YearMonth> build_date;
  std::vector<PolicyRecord> policies;
};

struct ToolkitConfig {
  double length_ratio_threshold = 0.20;  // strict: ratio == threshold fails
  int percent_decimals = 2;
  int month_decimals = 1;
  std::vector<int> top_n_sizes = {10, 22};  // strictly increasing
};

struct Violation {
  std::string code;  // stable identifier, e.g. "dangling-reference"
  std::string message;
};

struct CorpusManifest {
  CorpusSection original_corpus;
  CorpusSection source_corpus;       // reference language, newly built
  CorpusSection replication_corpus;  // replication language
  std::vector<CompanyEntry> companies;
  std::vector<PairAnnotation> annotations;
  ToolkitConfig config;

  // Directory the manifest file was loaded from; text_path resolves
  // against it. Not serialized.
  std::filesystem::path base_dir;

  // Field-level problems the loader could represent but not type (e.g. an
  // unparsable date). Surfaced by validate_manifest. Not serialized.
  std::vector<Violation> load_violations;

  const CompanyEntry* find_company(std::string_view id) const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Pure structural check: dangling references, duplicate ids, missing text
// files, invalid dates, language collisions. Empty report means every other
// module can consume the manifest without reference errors.
ValidationReport validate_manifest(const CorpusManifest& manifest);

}  // namespace ppcorpus
