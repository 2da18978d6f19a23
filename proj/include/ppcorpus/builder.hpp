#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppcorpus/model.hpp"
#include "ppcorpus/text.hpp"

namespace ppcorpus {

// The three corpus comparisons the methodology prescribes.
enum class Comparison { OriginalVsSource, OriginalVsReplication, SourceVsReplication };

constexpr std::array<Comparison, 3> kAllComparisons = {
    Comparison::OriginalVsSource, Comparison::OriginalVsReplication,
    Comparison::SourceVsReplication};

std::string_view to_string(Comparison c);
std::optional<Comparison> parse_comparison(std::string_view flag);  // "orig-vs-source", ...

enum class PairOrigin { RetainedFromOriginal, Replacement, ComplementaryAdded };

std::string_view to_string(PairOrigin origin);

struct LengthCheck {
  double ratio = 0.0;
  bool comparable_length = false;
};

// ratio = |a - b| / max(a, b); comparable iff ratio < threshold (strict:
// "less than" is taken literally). Symmetric in the two counts.
// Throws ComputationError when both counts are zero.
LengthCheck length_comparability(std::size_t count_a, std::size_t count_b, double threshold);

struct DocsPresence {
  bool source_language_doc = false;
  bool replication_language_doc = false;
};

// Single-pair classification, evaluated in the algorithm's nesting order:
// Replacement, then Complementary, then Destructured, then Comparable.
// Throws ComputationError on contradictory annotations (a destructured
// judgment needs both policies to exist).
ClassificationLabel classify_pair(const PairAnnotation& annotation, DocsPresence docs,
                                  std::optional<bool> length_ok = std::nullopt);

struct PolicyPair {
  std::string slot_id;                 // source-side company id (stable sort key)
  std::string source_company_id;       // company whose text sits in the source corpus
  std::string replication_company_id;  // company whose text sits in the replication corpus
  std::optional<std::string> original_company_id;  // counterpart in the original corpus
  PairOrigin origin = PairOrigin::RetainedFromOriginal;
  // Cross-language (source vs replication) label; the per-comparison view
  // lives in `labels`.
  ClassificationLabel label = ClassificationLabel::Comparable;
  std::map<Comparison, ClassificationLabel> labels;
  std::optional<double> length_ratio;  // present iff both texts were ingested
  bool length_warning = false;         // ratio at/over threshold; label unchanged
  const PairAnnotation* annotation = nullptr;  // points into the manifest
};

using LabelCounts = std::map<ClassificationLabel, int>;

struct BuildResult {
  std::vector<PolicyPair> pairs;  // ordered by slot_id
  std::map<Comparison, LabelCounts> classification;
};

// Ingested texts per corpus section, keyed by company id. Retained
// companies appear in several sections with different texts.
struct DocumentSet {
  std::map<std::string, NormalizedDocument> original;
  std::map<std::string, NormalizedDocument> source;
  std::map<std::string, NormalizedDocument> replication;
};

// Ingests every policy text referenced by the manifest.
DocumentSet ingest_all(const CorpusManifest& manifest);

// Derives the pair list and the per-comparison label multisets from the
// manifest annotations. Deterministic: output order is fixed by company id.
// Throws ComputationError when a new-corpus policy can be paired neither by
// counterpart nor by annotation.
BuildResult build_corpora(const CorpusManifest& manifest, const DocumentSet& ingested);

}  // namespace ppcorpus
