#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ppcorpus/builder.hpp"
#include "ppcorpus/indicators.hpp"
#include "ppcorpus/model.hpp"
#include "ppcorpus/terms.hpp"

namespace ppcorpus {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportOptions {
  char decimal_separator = '.';  // data files always use '.'
  bool include_timestamp = true;
  std::optional<std::filesystem::path> lexicon_path;
  std::optional<std::filesystem::path> events_path;
  std::optional<std::filesystem::path> term_set_path;
};

struct SectionStatus {
  bool present = false;
  std::string skipped_reason;  // non-empty iff skipped
};

// Every computed artifact of one full pipeline run. Sections that could not
// be computed are marked skipped with a reason instead of silently missing.
struct ReportBundle {
  std::string tool_version{kToolVersion};
  std::string manifest_hash;  // fnv1a-64 of the manifest bytes, hex
  std::string timestamp;      // empty when suppressed

  ValidationReport validation;
  BuildResult build;

  std::map<Comparison, CorpusComparisonReport> comparisons;

  std::map<std::string, int> internal_consistency_months;  // corpus name -> months
  std::optional<TemporalGapReport> temporal_gap;
  SectionStatus temporal_gap_status;

  std::vector<QualitativeEvent> events;
  SectionStatus events_status;

  std::optional<RankSourceComparison> rank_sources;
  SectionStatus rank_sources_status;

  std::optional<FrequencyTable> source_frequencies;
  std::optional<FrequencyTable> replication_frequencies;
  SectionStatus frequencies_status;

  struct OverlapRow {
    int n = 0;
    int m = 0;
    OverlapResult result;
  };
  std::vector<OverlapRow> overlaps;  // source top-n vs replication top-m

  std::optional<CoverageReport> source_coverage;
  std::optional<CoverageReport> replication_coverage;
  SectionStatus coverage_status;

  struct PairOrphanWidow {
    std::string slot_id;
    OrphanWidowReport report;
  };
  std::vector<PairOrphanWidow> orphan_widow;
  SectionStatus orphan_widow_status;
};

std::string fnv1a64_hex(std::string_view bytes);

// Runs the whole pipeline over an already-loaded manifest. The manifest
// must have passed validation.
ReportBundle assemble_report(const CorpusManifest& manifest, const std::string& manifest_bytes,
                             const ReportOptions& options);

// Structured nested rendering of the whole bundle.
std::string render_report_json(const ReportBundle& bundle);

// Delimited per-section renderings, keyed by output file name
// ("pairs.csv", "comparisons.csv", ...).
std::map<std::string, std::string> render_report_csv(const ReportBundle& bundle);

// Human-readable tables (paper-style layout; honors the decimal separator).
std::string render_report_tables(const ReportBundle& bundle, char decimal_separator);

// Writes report.json, the per-section CSV files, and tables.txt into
// out_dir. Byte-deterministic for identical inputs and options.
void write_report(const ReportBundle& bundle, const std::filesystem::path& out_dir,
                  char decimal_separator);

}  // namespace ppcorpus
