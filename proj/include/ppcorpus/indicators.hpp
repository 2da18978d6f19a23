#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppcorpus/builder.hpp"
#include "ppcorpus/dates.hpp"
#include "ppcorpus/model.hpp"

namespace ppcorpus {

struct CorpusComparisonReport {
  LabelCounts counts;
  std::map<ClassificationLabel, double> percentages;  // rounded half-up
  int total = 0;
  int decimals = 2;
};

// Percentage per label = 100 * count / total. Throws ComputationError on an
// empty multiset. Raw counts travel with the report so the rounding can
// always be audited.
CorpusComparisonReport corpus_comparison(const LabelCounts& labels, const ToolkitConfig& config);

// Calendar months between the most and least recently updated policy of one
// corpus. Throws ComputationError on an empty date list.
int temporal_internal_consistency(const std::vector<YearMonth>& dates);

struct GapPair {
  std::string slot_id;
  std::optional<YearMonth> original_date;
  std::optional<YearMonth> new_date;
  bool excluded = false;       // explicit manifest judgment, never automatic
  std::string exclusion_reason;
};

struct GapPairOutcome {
  std::string slot_id;
  int gap_months = 0;   // meaningful for included pairs only
  std::string reason;   // why excluded, empty for included pairs
};

struct TemporalGapReport {
  double average_months = 0.0;  // rounded half-up to month_decimals
  std::vector<GapPairOutcome> included;
  std::vector<GapPairOutcome> excluded;
};

// Average |new - original| in calendar months over the includable pairs.
// Callers restrict the input to comparable/destructured pairs; the gap has
// no meaning for complementary or replacement ones. Pairs without both
// dates are excluded with reason "date unavailable". Throws
// ComputationError when nothing remains to average.
TemporalGapReport temporal_replication_gap(const std::vector<GapPair>& pairs,
                                           const ToolkitConfig& config);

struct QualitativeEvent {
  YearMonth date;
  std::string description;
  bool flagged = false;
};

// Flags the events falling inside the closed interval [start, end]; the
// rest stay in the output for the report narrative.
std::vector<QualitativeEvent> qualitative_replication_gap(
    const std::vector<QualitativeEvent>& events, YearMonth start, YearMonth end);

// Event log: one `YYYY-MM<TAB>description` line per event.
std::vector<QualitativeEvent> load_events(const std::filesystem::path& path);

struct RankSourceCell {
  std::string source_name;
  YearMonth snapshot_date;
};

struct RankSourceRow {
  std::string family;  // source name with trailing region codes stripped
  std::map<std::string, std::vector<RankSourceCell>> per_corpus;  // corpus name -> entries
  bool homogeneous = false;  // family used by every corpus in the table
};

struct RankSourceComparison {
  std::vector<std::string> corpus_names;  // corpora that contributed columns
  std::vector<RankSourceRow> rows;
};

// One row per rank-source family, one column per non-empty corpus. Throws
// ComputationError if a corpus with policies yields no provenance entries.
RankSourceComparison representativeness_table(const CorpusManifest& manifest);

// "Alexa Top10 US" -> "Alexa Top10". Trailing two-letter uppercase tokens
// are treated as region qualifiers.
std::string rank_source_family(std::string_view source_name);

}  // namespace ppcorpus
