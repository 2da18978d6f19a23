#include "ppcorpus/report.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ppcorpus/errors.hpp"
#include "ppcorpus/rounding.hpp"

namespace ppcorpus {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string utc_now_iso8601() {
  auto now = std::chrono::system_clock::now();
  auto t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<YearMonth> record_date(const CorpusSection& section, const std::string& company) {
  for (const auto& p : section.policies) {
    if (p.company_id == company) return p.version_date;
  }
  return std::nullopt;
}

std::vector<YearMonth> known_dates(const CorpusSection& section) {
  std::vector<YearMonth> dates;
  for (const auto& p : section.policies) {
    if (p.version_date) dates.push_back(*p.version_date);
  }
  return dates;
}

constexpr std::array<ClassificationLabel, 4> kAllLabels = {
    ClassificationLabel::Comparable, ClassificationLabel::Complementary,
    ClassificationLabel::Replacement, ClassificationLabel::Destructured};

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

ReportBundle assemble_report(const CorpusManifest& manifest, const std::string& manifest_bytes,
                             const ReportOptions& options) {
  ReportBundle bundle;
  bundle.manifest_hash = fnv1a64_hex(manifest_bytes);
  if (options.include_timestamp) bundle.timestamp = utc_now_iso8601();

  bundle.validation = validate_manifest(manifest);

  DocumentSet docs = ingest_all(manifest);
  bundle.build = build_corpora(manifest, docs);

  if (!bundle.build.pairs.empty()) {
    for (Comparison c : kAllComparisons) {
      bundle.comparisons[c] =
          corpus_comparison(bundle.build.classification.at(c), manifest.config);
    }
  }

  for (auto [name, section] : {std::pair{"original", &manifest.original_corpus},
                               {"source", &manifest.source_corpus},
                               {"replication", &manifest.replication_corpus}}) {
    auto dates = known_dates(*section);
    if (!dates.empty()) {
      bundle.internal_consistency_months[name] = temporal_internal_consistency(dates);
    }
  }

  // Replication gap over pairs that are comparable or destructured against
  // the original corpus; new-side date is the most recent of the two new
  // corpora.
  {
    std::vector<GapPair> gap_pairs;
    for (const auto& pair : bundle.build.pairs) {
      auto label = pair.labels.at(Comparison::OriginalVsReplication);
      if (label != ClassificationLabel::Comparable && label != ClassificationLabel::Destructured) {
        continue;
      }
      GapPair gp;
      gp.slot_id = pair.slot_id;
      if (pair.original_company_id) {
        gp.original_date = record_date(manifest.original_corpus, *pair.original_company_id);
      }
      auto src = record_date(manifest.source_corpus, pair.source_company_id);
      auto rep = record_date(manifest.replication_corpus, pair.replication_company_id);
      if (src && rep) {
        gp.new_date = std::max(*src, *rep);
      } else {
        gp.new_date = src ? src : rep;
      }
      if (pair.annotation && pair.annotation->exclusion_from_gap) {
        gp.excluded = true;
        gp.exclusion_reason = pair.annotation->exclusion_reason;
      }
      gap_pairs.push_back(std::move(gp));
    }
    if (gap_pairs.empty()) {
      bundle.temporal_gap_status = {false, "no comparable or destructured pairs"};
    } else {
      try {
        bundle.temporal_gap = temporal_replication_gap(gap_pairs, manifest.config);
        bundle.temporal_gap_status = {true, ""};
      } catch (const ComputationError& e) {
        bundle.temporal_gap_status = {false, e.what()};
      }
    }
  }

  if (options.events_path) {
    auto events = load_events(*options.events_path);
    // Interval: original corpus construction to new corpora construction,
    // falling back to the observed policy date range.
    std::optional<YearMonth> start = manifest.original_corpus.build_date;
    if (!start) {
      auto dates = known_dates(manifest.original_corpus);
      if (!dates.empty()) start = *std::min_element(dates.begin(), dates.end());
    }
    std::optional<YearMonth> end = manifest.replication_corpus.build_date;
    if (!end) end = manifest.source_corpus.build_date;
    if (!end) {
      auto dates = known_dates(manifest.replication_corpus);
      auto more = known_dates(manifest.source_corpus);
      dates.insert(dates.end(), more.begin(), more.end());
      if (!dates.empty()) end = *std::max_element(dates.begin(), dates.end());
    }
    if (start && end) {
      bundle.events = qualitative_replication_gap(events, *start, *end);
      bundle.events_status = {true, ""};
    } else {
      bundle.events = events;
      bundle.events_status = {false, "corpus interval unknown: no dates in manifest"};
    }
  } else {
    bundle.events_status = {false, "no event log provided"};
  }

  try {
    bundle.rank_sources = representativeness_table(manifest);
    bundle.rank_sources_status = {true, ""};
  } catch (const ComputationError& e) {
    bundle.rank_sources_status = {false, e.what()};
  }

  if (options.lexicon_path) {
    TermLexicon lexicon = TermLexicon::load(*options.lexicon_path);

    auto corpus_table = [&](const std::map<std::string, NormalizedDocument>& corpus_docs,
                            const LanguageTag& language) {
      std::map<std::string, TermCounts> per_document;
      for (const auto& [company, doc] : corpus_docs) {
        per_document[company] = count_term_occurrences(doc, lexicon, language);
      }
      return rank_terms(language, per_document);
    };
    bundle.source_frequencies = corpus_table(docs.source, manifest.source_corpus.language);
    bundle.replication_frequencies =
        corpus_table(docs.replication, manifest.replication_corpus.language);
    bundle.frequencies_status = {true, ""};

    for (int n : manifest.config.top_n_sizes) {
      for (int m : manifest.config.top_n_sizes) {
        if (static_cast<std::size_t>(n) > bundle.source_frequencies->rows.size()) continue;
        if (static_cast<std::size_t>(m) > bundle.replication_frequencies->rows.size()) continue;
        auto overlap = top_n_overlap(*bundle.source_frequencies, *bundle.replication_frequencies,
                                     n, m, lexicon, manifest.config.percent_decimals);
        bundle.overlaps.push_back({n, m, overlap});
      }
    }

    if (options.term_set_path) {
      auto term_set = load_term_set(*options.term_set_path);
      bundle.source_coverage =
          term_coverage(term_set, *bundle.source_frequencies, manifest.config.top_n_sizes,
                        lexicon, manifest.config.percent_decimals);
      bundle.replication_coverage =
          term_coverage(term_set, *bundle.replication_frequencies, manifest.config.top_n_sizes,
                        lexicon, manifest.config.percent_decimals);
      bundle.coverage_status = {true, ""};
    } else {
      bundle.coverage_status = {false, "no term set provided"};
    }

    bool any_aligned = false;
    for (const auto& pair : bundle.build.pairs) {
      auto src = docs.source.find(pair.source_company_id);
      auto rep = docs.replication.find(pair.replication_company_id);
      if (src == docs.source.end() || rep == docs.replication.end()) continue;
      if (src->second.segments.empty() || rep->second.segments.empty()) continue;
      bool shared = std::any_of(
          src->second.segments.begin(), src->second.segments.end(), [&](const Segment& s) {
            return std::any_of(rep->second.segments.begin(), rep->second.segments.end(),
                               [&](const Segment& r) { return r.id == s.id; });
          });
      if (!shared) continue;
      bundle.orphan_widow.push_back(
          {pair.slot_id, detect_orphans_widows(src->second, rep->second, lexicon)});
      any_aligned = true;
    }
    bundle.orphan_widow_status =
        any_aligned ? SectionStatus{true, ""}
                    : SectionStatus{false, "no segment-aligned policy pairs"};
  } else {
    bundle.frequencies_status = {false, "no lexicon provided"};
    bundle.coverage_status = {false, "no lexicon provided"};
    bundle.orphan_widow_status = {false, "no lexicon provided"};
  }

  return bundle;
}

namespace {

Json comparison_to_json(const CorpusComparisonReport& report) {
  Json j;
  j["total"] = report.total;
  j["counts"] = Json::object();
  j["percentages"] = Json::object();
  for (ClassificationLabel label : kAllLabels) {
    j["counts"][std::string(to_string(label))] = report.counts.at(label);
    j["percentages"][std::string(to_string(label))] = report.percentages.at(label);
  }
  return j;
}

Json frequency_table_to_json(const FrequencyTable& table) {
  Json j;
  j["language"] = table.language.code;
  j["rows"] = Json::array();
  for (const auto& row : table.rows) {
    j["rows"].push_back({{"rank", row.rank}, {"term_id", row.term_id}, {"frequency", row.frequency}});
  }
  return j;
}

Json coverage_to_json(const CoverageReport& report) {
  Json j;
  j["in_first_tier"] = report.in_first_tier;
  j["in_second_tier"] = report.in_second_tier;
  j["outside"] = report.outside;
  j["first_tier_percentage"] = report.first_tier_percentage;
  j["second_tier_percentage"] = report.second_tier_percentage;
  j["inside_percentage"] = report.inside_percentage;
  j["outside_percentage"] = report.outside_percentage;
  j["terms"] = Json::array();
  for (const auto& row : report.rows) {
    const char* tier = row.tier == CoverageTier::TopFirst    ? "top-first"
                       : row.tier == CoverageTier::TopSecond ? "top-second"
                                                             : "outside";
    j["terms"].push_back({{"term_id", row.term_id}, {"tier", tier}});
  }
  return j;
}

Json sites_to_json(const std::vector<TermOccurrenceSite>& sites) {
  Json arr = Json::array();
  for (const auto& site : sites) {
    arr.push_back({{"term_id", site.term_id},
                   {"segment_id", site.segment_id},
                   {"token_offset", site.token_offset}});
  }
  return arr;
}

Json status_to_json(const SectionStatus& status) {
  Json j;
  j["present"] = status.present;
  if (!status.present) j["skipped_reason"] = status.skipped_reason;
  return j;
}

}  // namespace

std::string render_report_json(const ReportBundle& bundle) {
  Json root;
  root["metadata"] = {{"tool_version", bundle.tool_version},
                      {"manifest_hash", bundle.manifest_hash}};
  if (!bundle.timestamp.empty()) root["metadata"]["generated_at"] = bundle.timestamp;

  root["validation"] = Json::array();
  for (const auto& v : bundle.validation.violations) {
    root["validation"].push_back({{"code", v.code}, {"message", v.message}});
  }

  root["pairs"] = Json::array();
  for (const auto& pair : bundle.build.pairs) {
    Json pj;
    pj["slot_id"] = pair.slot_id;
    pj["source_company_id"] = pair.source_company_id;
    pj["replication_company_id"] = pair.replication_company_id;
    pj["original_company_id"] =
        pair.original_company_id ? Json(*pair.original_company_id) : Json(nullptr);
    pj["origin"] = std::string(to_string(pair.origin));
    pj["labels"] = Json::object();
    for (Comparison c : kAllComparisons) {
      pj["labels"][std::string(to_string(c))] = std::string(to_string(pair.labels.at(c)));
    }
    pj["length_ratio"] =
        pair.length_ratio ? Json(round_half_up(*pair.length_ratio, 4)) : Json(nullptr);
    pj["length_warning"] = pair.length_warning;
    root["pairs"].push_back(std::move(pj));
  }

  root["comparisons"] = Json::object();
  for (const auto& [comparison, report] : bundle.comparisons) {
    root["comparisons"][std::string(to_string(comparison))] = comparison_to_json(report);
  }

  Json temporal;
  temporal["internal_consistency_months"] = bundle.internal_consistency_months;
  temporal["replication_gap"] = status_to_json(bundle.temporal_gap_status);
  if (bundle.temporal_gap) {
    temporal["replication_gap"]["average_months"] = bundle.temporal_gap->average_months;
    temporal["replication_gap"]["included"] = Json::array();
    for (const auto& p : bundle.temporal_gap->included) {
      temporal["replication_gap"]["included"].push_back(
          {{"slot_id", p.slot_id}, {"gap_months", p.gap_months}});
    }
    temporal["replication_gap"]["excluded"] = Json::array();
    for (const auto& p : bundle.temporal_gap->excluded) {
      temporal["replication_gap"]["excluded"].push_back(
          {{"slot_id", p.slot_id}, {"reason", p.reason}});
    }
  }
  temporal["events"] = status_to_json(bundle.events_status);
  temporal["events"]["entries"] = Json::array();
  for (const auto& event : bundle.events) {
    temporal["events"]["entries"].push_back({{"date", to_string(event.date)},
                                             {"description", event.description},
                                             {"flagged", event.flagged}});
  }
  root["temporal"] = std::move(temporal);

  root["rank_sources"] = status_to_json(bundle.rank_sources_status);
  if (bundle.rank_sources) {
    root["rank_sources"]["rows"] = Json::array();
    for (const auto& row : bundle.rank_sources->rows) {
      Json rj;
      rj["family"] = row.family;
      rj["homogeneous"] = row.homogeneous;
      rj["per_corpus"] = Json::object();
      for (const auto& [corpus, cells] : row.per_corpus) {
        Json arr = Json::array();
        for (const auto& cell : cells) {
          arr.push_back({{"source_name", cell.source_name},
                         {"snapshot_date", to_string(cell.snapshot_date)}});
        }
        rj["per_corpus"][corpus] = std::move(arr);
      }
      root["rank_sources"]["rows"].push_back(std::move(rj));
    }
  }

  root["frequencies"] = status_to_json(bundle.frequencies_status);
  if (bundle.source_frequencies) {
    root["frequencies"]["source"] = frequency_table_to_json(*bundle.source_frequencies);
  }
  if (bundle.replication_frequencies) {
    root["frequencies"]["replication"] =
        frequency_table_to_json(*bundle.replication_frequencies);
  }

  root["overlaps"] = Json::array();
  for (const auto& row : bundle.overlaps) {
    root["overlaps"].push_back({{"source_top_n", row.n},
                                {"replication_top_m", row.m},
                                {"member_count", row.result.member_count},
                                {"percentage", row.result.percentage}});
  }

  root["coverage"] = status_to_json(bundle.coverage_status);
  if (bundle.source_coverage) root["coverage"]["source"] = coverage_to_json(*bundle.source_coverage);
  if (bundle.replication_coverage) {
    root["coverage"]["replication"] = coverage_to_json(*bundle.replication_coverage);
  }

  root["orphans_widows"] = status_to_json(bundle.orphan_widow_status);
  root["orphans_widows"]["pairs"] = Json::array();
  for (const auto& entry : bundle.orphan_widow) {
    root["orphans_widows"]["pairs"].push_back({{"slot_id", entry.slot_id},
                                               {"orphans", sites_to_json(entry.report.orphans)},
                                               {"widows", sites_to_json(entry.report.widows)},
                                               {"unaligned", sites_to_json(entry.report.unaligned)}});
  }

  return root.dump(2) + "\n";
}

std::map<std::string, std::string> render_report_csv(const ReportBundle& bundle) {
  std::map<std::string, std::string> files;

  {
    std::ostringstream out;
    out << "slot_id,source_company_id,replication_company_id,original_company_id,origin,"
           "label_orig_vs_source,label_orig_vs_replication,label_source_vs_replication,"
           "length_ratio,length_warning\n";
    for (const auto& pair : bundle.build.pairs) {
      out << csv_field(pair.slot_id) << ',' << csv_field(pair.source_company_id) << ','
          << csv_field(pair.replication_company_id) << ','
          << csv_field(pair.original_company_id.value_or("")) << ',' << to_string(pair.origin);
      for (Comparison c : kAllComparisons) out << ',' << to_string(pair.labels.at(c));
      out << ',' << (pair.length_ratio ? format_decimal(*pair.length_ratio, 4) : std::string())
          << ',' << (pair.length_warning ? "true" : "false") << '\n';
    }
    files["pairs.csv"] = out.str();
  }

  {
    std::ostringstream out;
    out << "comparison,label,count,percentage\n";
    for (const auto& [comparison, report] : bundle.comparisons) {
      for (ClassificationLabel label : kAllLabels) {
        out << to_string(comparison) << ',' << to_string(label) << ',' << report.counts.at(label)
            << ',' << format_decimal(report.percentages.at(label), report.decimals) << '\n';
      }
    }
    files["comparisons.csv"] = out.str();
  }

  {
    std::ostringstream out;
    out << "kind,key,value\n";
    for (const auto& [corpus, months] : bundle.internal_consistency_months) {
      out << "internal-consistency," << corpus << ',' << months << '\n';
    }
    if (bundle.temporal_gap) {
      out << "gap-average,,"
          << format_decimal(bundle.temporal_gap->average_months, 1) << '\n';
      for (const auto& p : bundle.temporal_gap->included) {
        out << "gap-included," << csv_field(p.slot_id) << ',' << p.gap_months << '\n';
      }
      for (const auto& p : bundle.temporal_gap->excluded) {
        out << "gap-excluded," << csv_field(p.slot_id) << ',' << csv_field(p.reason) << '\n';
      }
    }
    for (const auto& event : bundle.events) {
      out << (event.flagged ? "event-flagged," : "event,") << to_string(event.date) << ','
          << csv_field(event.description) << '\n';
    }
    files["temporal.csv"] = out.str();
  }

  if (bundle.rank_sources) {
    std::ostringstream out;
    out << "family,corpus,source_name,snapshot_date,homogeneous\n";
    for (const auto& row : bundle.rank_sources->rows) {
      for (const auto& [corpus, cells] : row.per_corpus) {
        for (const auto& cell : cells) {
          out << csv_field(row.family) << ',' << corpus << ',' << csv_field(cell.source_name)
              << ',' << to_string(cell.snapshot_date) << ','
              << (row.homogeneous ? "true" : "false") << '\n';
        }
      }
    }
    files["rank_sources.csv"] = out.str();
  }

  auto freq_csv = [](const FrequencyTable& table) {
    std::ostringstream out;
    out << "rank,term_id,frequency\n";
    for (const auto& row : table.rows) {
      out << row.rank << ',' << csv_field(row.term_id) << ',' << row.frequency << '\n';
    }
    return out.str();
  };
  if (bundle.source_frequencies) {
    files["frequencies_source.csv"] = freq_csv(*bundle.source_frequencies);
  }
  if (bundle.replication_frequencies) {
    files["frequencies_replication.csv"] = freq_csv(*bundle.replication_frequencies);
  }

  if (!bundle.overlaps.empty()) {
    std::ostringstream out;
    out << "source_top_n,replication_top_m,member_count,percentage\n";
    for (const auto& row : bundle.overlaps) {
      out << row.n << ',' << row.m << ',' << row.result.member_count << ','
          << format_decimal(row.result.percentage, 2) << '\n';
    }
    files["overlap.csv"] = out.str();
  }

  auto coverage_csv = [](const CoverageReport& report) {
    std::ostringstream out;
    out << "term_id,tier\n";
    for (const auto& row : report.rows) {
      const char* tier = row.tier == CoverageTier::TopFirst    ? "top-first"
                         : row.tier == CoverageTier::TopSecond ? "top-second"
                                                               : "outside";
      out << csv_field(row.term_id) << ',' << tier << '\n';
    }
    out << "(summary) inside," << format_decimal(report.inside_percentage, 2) << '\n';
    out << "(summary) outside," << format_decimal(report.outside_percentage, 2) << '\n';
    return out.str();
  };
  if (bundle.source_coverage) files["coverage_source.csv"] = coverage_csv(*bundle.source_coverage);
  if (bundle.replication_coverage) {
    files["coverage_replication.csv"] = coverage_csv(*bundle.replication_coverage);
  }

  if (!bundle.orphan_widow.empty()) {
    std::ostringstream out;
    out << "slot_id,kind,term_id,segment_id,token_offset\n";
    for (const auto& entry : bundle.orphan_widow) {
      auto emit = [&](const char* kind, const std::vector<TermOccurrenceSite>& sites) {
        for (const auto& site : sites) {
          out << csv_field(entry.slot_id) << ',' << kind << ',' << csv_field(site.term_id) << ','
              << csv_field(site.segment_id) << ',' << site.token_offset << '\n';
        }
      };
      emit("orphan", entry.report.orphans);
      emit("widow", entry.report.widows);
      emit("unaligned", entry.report.unaligned);
    }
    files["orphans_widows.csv"] = out.str();
  }

  return files;
}

std::string render_report_tables(const ReportBundle& bundle, char sep) {
  std::ostringstream out;
  out << "Corpus comparability report (tool " << bundle.tool_version << ", manifest "
      << bundle.manifest_hash << ")\n";

  out << "\n== Corpus composition ==\n";
  for (const auto& pair : bundle.build.pairs) {
    out << "  " << pair.slot_id;
    if (pair.replication_company_id != pair.source_company_id) {
      out << " / " << pair.replication_company_id;
    }
    if (pair.original_company_id && *pair.original_company_id != pair.source_company_id) {
      out << " (for " << *pair.original_company_id << ")";
    }
    out << "  [" << to_string(pair.origin) << ", " << to_string(pair.label);
    if (pair.length_warning) out << ", length-warning";
    out << "]\n";
  }

  out << "\n== Corpus comparison ==\n";
  for (const auto& [comparison, report] : bundle.comparisons) {
    out << "  " << to_string(comparison) << " (" << report.total << " pairs):";
    for (ClassificationLabel label : kAllLabels) {
      out << "  " << to_string(label) << " "
          << format_decimal(report.percentages.at(label), report.decimals, sep) << "%";
    }
    out << '\n';
  }

  out << "\n== Temporal indicators ==\n";
  for (const auto& [corpus, months] : bundle.internal_consistency_months) {
    out << "  internal consistency (" << corpus << "): " << months << " months\n";
  }
  if (bundle.temporal_gap) {
    out << "  replication gap: " << format_decimal(bundle.temporal_gap->average_months, 1, sep)
        << " months over " << bundle.temporal_gap->included.size() << " pairs ("
        << bundle.temporal_gap->excluded.size() << " excluded)\n";
  } else {
    out << "  replication gap: skipped (" << bundle.temporal_gap_status.skipped_reason << ")\n";
  }
  for (const auto& event : bundle.events) {
    out << "  event " << to_string(event.date) << (event.flagged ? " [in interval] " : " ")
        << event.description << '\n';
  }

  if (bundle.rank_sources) {
    out << "\n== Rank sources ==\n";
    for (const auto& row : bundle.rank_sources->rows) {
      out << "  " << row.family << (row.homogeneous ? " (homogeneous)" : " (not homogeneous)")
          << ":";
      for (const auto& [corpus, cells] : row.per_corpus) {
        for (const auto& cell : cells) {
          out << "  " << corpus << "=" << cell.source_name << "@" << to_string(cell.snapshot_date);
        }
      }
      out << '\n';
    }
  }

  if (bundle.source_frequencies && bundle.replication_frequencies) {
    out << "\n== Top terms (replication corpus order) ==\n";
    out << "  rank-rep  rank-src  term                              freq-rep  freq-src\n";
    const auto& rep = *bundle.replication_frequencies;
    const auto& src = *bundle.source_frequencies;
    std::size_t limit = std::min<std::size_t>(rep.rows.size(), 22);
    for (std::size_t i = 0; i < limit; ++i) {
      const auto& row = rep.rows[i];
      auto src_rank = src.rank_of(row.term_id);
      long src_freq = 0;
      for (const auto& srow : src.rows) {
        if (srow.term_id == row.term_id) src_freq = srow.frequency;
      }
      char line[160];
      std::snprintf(line, sizeof(line), "  %7d  %8s  %-32s  %8ld  %8ld\n", row.rank,
                    src_rank ? std::to_string(*src_rank).c_str() : "-", row.term_id.c_str(),
                    row.frequency, src_freq);
      out << line;
    }
  }

  for (const auto& row : bundle.overlaps) {
    out << "  overlap source-top" << row.n << " vs replication-top" << row.m << ": "
        << row.result.member_count << " terms, "
        << format_decimal(row.result.percentage, 2, sep) << "%\n";
  }

  auto coverage_lines = [&](const char* name, const CoverageReport& report) {
    out << "  coverage vs " << name << ": " << report.in_first_tier << " in first tier, "
        << report.in_second_tier << " in second, " << report.outside << " outside ("
        << format_decimal(report.inside_percentage, 2, sep) << "% inside)\n";
  };
  if (bundle.source_coverage || bundle.replication_coverage) {
    out << "\n== Term-set coverage ==\n";
    if (bundle.source_coverage) coverage_lines("source ranking", *bundle.source_coverage);
    if (bundle.replication_coverage) {
      coverage_lines("replication ranking", *bundle.replication_coverage);
    }
  }

  if (!bundle.orphan_widow.empty()) {
    out << "\n== Orphans and widows ==\n";
    for (const auto& entry : bundle.orphan_widow) {
      out << "  " << entry.slot_id << ": " << entry.report.orphans.size() << " orphans, "
          << entry.report.widows.size() << " widows, " << entry.report.unaligned.size()
          << " unaligned occurrences\n";
    }
  }

  return out.str();
}

void write_report(const ReportBundle& bundle, const std::filesystem::path& out_dir,
                  char decimal_separator) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(out_dir / name, std::ios::binary);
    if (!f) throw LoadError("cannot write report file: " + (out_dir / name).string());
    f << content;
  };
  write("report.json", render_report_json(bundle));
  for (const auto& [name, content] : render_report_csv(bundle)) write(name, content);
  write("tables.txt", render_report_tables(bundle, decimal_separator));
}

}  // namespace ppcorpus
