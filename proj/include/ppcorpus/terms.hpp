#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppcorpus/model.hpp"
#include "ppcorpus/text.hpp"

namespace ppcorpus {

// One multi-word surface variant, as a normalized token sequence.
using TermSurface = std::vector<std::string>;

struct TermEntry {
  std::string id;        // unique slug
  std::string category;  // e.g. "crypto", "tracking"
  std::map<std::string, std::vector<TermSurface>> surfaces;  // language code -> variants
  std::vector<std::string> maps_to;  // cross-language many-to-one mappings
  std::string notes;
};

class TermLexicon {
 public:
  static TermLexicon load(const std::filesystem::path& path);
  static TermLexicon from_entries(std::vector<TermEntry> entries);

  const std::vector<TermEntry>& entries() const { return entries_; }
  const TermEntry* find(const std::string& id) const;
  bool has_language(const LanguageTag& language) const;

  // All ids reachable from `id` through maps_to links, in either direction
  // (the term's cross-language equivalence class, including itself).
  std::set<std::string> equivalence_class(const std::string& id) const;

 private:
  std::vector<TermEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

struct TermMatch {
  std::string term_id;
  std::size_t token_begin = 0;
  std::size_t token_length = 0;
};

// Left-to-right, longest-match, non-overlapping scan of the token range
// [begin, end) against the lexicon's surfaces for `language`. All variants
// of a term accumulate under its id.
std::vector<TermMatch> find_term_matches(const std::vector<std::string>& tokens,
                                         std::size_t begin, std::size_t end,
                                         const TermLexicon& lexicon,
                                         const LanguageTag& language);

using TermCounts = std::map<std::string, long>;

// Per-term occurrence counts over a whole document. Throws ComputationError
// if the lexicon carries no surfaces for the language.
TermCounts count_term_occurrences(const NormalizedDocument& doc, const TermLexicon& lexicon,
                                  const LanguageTag& language);

struct RankedTerm {
  std::string term_id;
  long frequency = 0;
  int rank = 0;  // 1..k, descending frequency, ties by ascending term_id
};

struct FrequencyTable {
  LanguageTag language;
  std::vector<RankedTerm> rows;                    // rank order
  std::map<std::string, TermCounts> per_document;  // company id -> counts

  std::optional<int> rank_of(const std::string& term_id) const;
};

// Aggregates per-document counts and assigns ranks.
FrequencyTable rank_terms(const LanguageTag& language,
                          const std::map<std::string, TermCounts>& per_document);

// Transcribed frequency tables: `term_id<TAB>frequency` lines.
FrequencyTable load_frequency_table(const std::filesystem::path& path,
                                    const LanguageTag& language);

struct OverlapResult {
  int member_count = 0;
  double percentage = 0.0;  // 100 * member_count / n, rounded half-up
};

// How many of A's top-n terms have a counterpart (via maps_to equivalence)
// inside B's top-m. Throws ComputationError if a table is shorter than the
// requested cut.
OverlapResult top_n_overlap(const FrequencyTable& rank_a, const FrequencyTable& rank_b,
                            int n, int m, const TermLexicon& lexicon, int percent_decimals = 2);

enum class CoverageTier { TopFirst, TopSecond, Outside };

struct CoverageRow {
  std::string term_id;
  CoverageTier tier = CoverageTier::Outside;
};

struct CoverageReport {
  std::vector<CoverageRow> rows;
  int in_first_tier = 0;
  int in_second_tier = 0;
  int outside = 0;
  double first_tier_percentage = 0.0;   // each rounded on its own;
  double second_tier_percentage = 0.0;  // inside = their sum, outside = 100 - inside
  double inside_percentage = 0.0;
  double outside_percentage = 0.0;
};

// Places every term of the set in a tier of the ranking (inside top
// tiers[0], inside top tiers[1], outside). Percentages use the set size as
// denominator. Throws ComputationError on a term id missing from the
// lexicon.
CoverageReport term_coverage(const std::vector<std::string>& term_set,
                             const FrequencyTable& table, const std::vector<int>& tiers,
                             const TermLexicon& lexicon, int percent_decimals = 2);

struct TermOccurrenceSite {
  std::string term_id;
  std::string segment_id;
  std::size_t token_offset = 0;  // within the document's token list
};

struct OrphanWidowReport {
  // Orphan: replication-language occurrence with no counterpart term in the
  // aligned source segment. Widow: the symmetric source-language case.
  std::vector<TermOccurrenceSite> orphans;
  std::vector<TermOccurrenceSite> widows;
  std::vector<TermOccurrenceSite> unaligned;  // occurrences in unpaired segments
};

// Segment-aligned cross-check of term presence between the two languages.
// `term_filter` empty means every lexicon term. Throws ComputationError if
// the documents share no segment ids.
OrphanWidowReport detect_orphans_widows(const NormalizedDocument& source_doc,
                                        const NormalizedDocument& replication_doc,
                                        const TermLexicon& lexicon,
                                        const std::set<std::string>& term_filter = {});

// Term-set file: one term id per line, '#' comments allowed.
std::vector<std::string> load_term_set(const std::filesystem::path& path);

}  // namespace ppcorpus
