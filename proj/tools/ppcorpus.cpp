#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ppcorpus/errors.hpp"
#include "ppcorpus/manifest_io.hpp"
#include "ppcorpus/report.hpp"
#include "ppcorpus/rounding.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 load error, 3 validation failure,
// 4 computation error.
enum ExitCode { kOk = 0, kUsage = 1, kLoadError = 2, kValidationError = 3, kComputationError = 4 };

struct CommonArgs {
  std::string manifest_path;
  std::optional<std::string> lexicon_path;
  std::optional<std::string> events_path;
  std::optional<std::string> term_set_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> comparison;
  std::vector<int> top_n;
  std::string locale = "point";
  bool no_timestamp = false;
};

char separator_for(const std::string& locale) {
  return locale == "comma" ? ',' : '.';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ppcorpus::LoadError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LoadedManifest {
  std::string bytes;
  ppcorpus::CorpusManifest manifest;
};

LoadedManifest load(const CommonArgs& args) {
  LoadedManifest lm;
  lm.bytes = read_file(args.manifest_path);
  lm.manifest = ppcorpus::parse_manifest(
      lm.bytes, std::filesystem::path(args.manifest_path).parent_path());
  if (!args.top_n.empty()) lm.manifest.config.top_n_sizes = args.top_n;
  return lm;
}

int require_valid(const ppcorpus::CorpusManifest& manifest) {
  auto report = ppcorpus::validate_manifest(manifest);
  if (!report.ok()) {
    for (const auto& v : report.violations) {
      std::cerr << "violation [" << v.code << "] " << v.message << "\n";
    }
    return kValidationError;
  }
  return kOk;
}

ppcorpus::ReportOptions options_for(const CommonArgs& args) {
  ppcorpus::ReportOptions options;
  options.decimal_separator = separator_for(args.locale);
  options.include_timestamp = !args.no_timestamp;
  if (args.lexicon_path) options.lexicon_path = *args.lexicon_path;
  if (args.events_path) options.events_path = *args.events_path;
  if (args.term_set_path) options.term_set_path = *args.term_set_path;
  return options;
}

int cmd_validate(const CommonArgs& args) {
  auto lm = load(args);
  auto report = ppcorpus::validate_manifest(lm.manifest);
  if (report.ok()) {
    std::cout << "manifest OK: 0 violations\n";
    return kOk;
  }
  for (const auto& v : report.violations) {
    std::cout << "violation [" << v.code << "] " << v.message << "\n";
  }
  std::cout << report.violations.size() << " violation(s)\n";
  return kValidationError;
}

int cmd_build(const CommonArgs& args) {
  auto lm = load(args);
  if (int rc = require_valid(lm.manifest); rc != kOk) return rc;
  auto docs = ppcorpus::ingest_all(lm.manifest);
  auto result = ppcorpus::build_corpora(lm.manifest, docs);
  for (const auto& pair : result.pairs) {
    std::cout << pair.slot_id;
    if (pair.replication_company_id != pair.source_company_id) {
      std::cout << "/" << pair.replication_company_id;
    }
    std::cout << "  origin=" << ppcorpus::to_string(pair.origin);
    for (ppcorpus::Comparison c : ppcorpus::kAllComparisons) {
      std::cout << "  " << ppcorpus::to_string(c) << "=" << ppcorpus::to_string(pair.labels.at(c));
    }
    if (pair.length_ratio) {
      std::cout << "  length-ratio=" << ppcorpus::format_decimal(*pair.length_ratio, 4);
      if (pair.length_warning) std::cout << " (over threshold)";
    }
    std::cout << "\n";
  }
  std::cout << result.pairs.size() << " pairs per comparison\n";
  return kOk;
}

int cmd_indicators(const CommonArgs& args) {
  auto lm = load(args);
  if (int rc = require_valid(lm.manifest); rc != kOk) return rc;
  auto bundle = ppcorpus::assemble_report(lm.manifest, lm.bytes, options_for(args));
  char sep = separator_for(args.locale);

  std::optional<ppcorpus::Comparison> only;
  if (args.comparison) {
    only = ppcorpus::parse_comparison(*args.comparison);
    if (!only) {
      std::cerr << "unknown comparison '" << *args.comparison << "'\n";
      return kUsage;
    }
  }
  for (const auto& [comparison, report] : bundle.comparisons) {
    if (only && comparison != *only) continue;
    std::cout << ppcorpus::to_string(comparison) << ":";
    for (ppcorpus::ClassificationLabel label :
         {ppcorpus::ClassificationLabel::Comparable, ppcorpus::ClassificationLabel::Complementary,
          ppcorpus::ClassificationLabel::Replacement,
          ppcorpus::ClassificationLabel::Destructured}) {
      std::cout << " " << ppcorpus::to_string(label) << " "
                << ppcorpus::format_decimal(report.percentages.at(label), report.decimals, sep);
    }
    std::cout << "\n";
  }
  for (const auto& [corpus, months] : bundle.internal_consistency_months) {
    std::cout << "internal-consistency " << corpus << ": " << months << " months\n";
  }
  if (bundle.temporal_gap) {
    std::cout << "replication-gap: "
              << ppcorpus::format_decimal(bundle.temporal_gap->average_months, 1, sep)
              << " months (included " << bundle.temporal_gap->included.size() << ", excluded "
              << bundle.temporal_gap->excluded.size() << ")\n";
  } else {
    std::cout << "replication-gap: skipped (" << bundle.temporal_gap_status.skipped_reason
              << ")\n";
  }
  for (const auto& event : bundle.events) {
    std::cout << "event " << ppcorpus::to_string(event.date)
              << (event.flagged ? " [in interval] " : " ") << event.description << "\n";
  }
  if (bundle.rank_sources) {
    for (const auto& row : bundle.rank_sources->rows) {
      std::cout << "rank-source " << row.family
                << (row.homogeneous ? " homogeneous" : " not-homogeneous") << "\n";
    }
  }
  return kOk;
}

int cmd_terms(const CommonArgs& args) {
  if (!args.lexicon_path) {
    std::cerr << "terms: --lexicon is required\n";
    return kUsage;
  }
  auto lm = load(args);
  if (int rc = require_valid(lm.manifest); rc != kOk) return rc;
  auto bundle = ppcorpus::assemble_report(lm.manifest, lm.bytes, options_for(args));
  char sep = separator_for(args.locale);

  auto print_table = [&](const char* name, const ppcorpus::FrequencyTable& table) {
    std::cout << name << " (" << table.language.code << "):\n";
    for (const auto& row : table.rows) {
      std::cout << "  " << row.rank << "\t" << row.term_id << "\t" << row.frequency << "\n";
    }
  };
  if (bundle.source_frequencies) print_table("source corpus terms", *bundle.source_frequencies);
  if (bundle.replication_frequencies) {
    print_table("replication corpus terms", *bundle.replication_frequencies);
  }
  for (const auto& row : bundle.overlaps) {
    std::cout << "overlap top" << row.n << "/top" << row.m << ": " << row.result.member_count
              << " terms, " << ppcorpus::format_decimal(row.result.percentage, 2, sep) << "%\n";
  }
  auto print_coverage = [&](const char* name, const ppcorpus::CoverageReport& report) {
    std::cout << "coverage vs " << name << ": first-tier " << report.in_first_tier
              << ", second-tier " << report.in_second_tier << ", outside " << report.outside
              << ", inside " << ppcorpus::format_decimal(report.inside_percentage, 2, sep)
              << "%\n";
  };
  if (bundle.source_coverage) print_coverage("source", *bundle.source_coverage);
  if (bundle.replication_coverage) print_coverage("replication", *bundle.replication_coverage);
  for (const auto& entry : bundle.orphan_widow) {
    std::cout << "orphans/widows " << entry.slot_id << ": " << entry.report.orphans.size()
              << " orphans, " << entry.report.widows.size() << " widows, "
              << entry.report.unaligned.size() << " unaligned\n";
  }
  return kOk;
}

int cmd_report(const CommonArgs& args) {
  if (!args.out_dir) {
    std::cerr << "report: --out is required\n";
    return kUsage;
  }
  auto lm = load(args);
  if (int rc = require_valid(lm.manifest); rc != kOk) return rc;
  auto bundle = ppcorpus::assemble_report(lm.manifest, lm.bytes, options_for(args));
  ppcorpus::write_report(bundle, *args.out_dir, separator_for(args.locale));
  std::cout << "report written to " << *args.out_dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-language privacy-policy corpus comparability toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd, bool needs_lexicon_opt = true) {
    cmd->add_option("--manifest", args.manifest_path, "Corpus manifest file")->required();
    if (needs_lexicon_opt) {
      cmd->add_option("--lexicon", args.lexicon_path, "Term lexicon file");
      cmd->add_option("--events", args.events_path, "Qualitative event log");
      cmd->add_option("--term-set", args.term_set_path, "Term-set file for coverage");
      cmd->add_option("--top-n", args.top_n, "Top-N tier sizes (overrides manifest config)");
      cmd->add_option("--locale", args.locale, "Decimal separator: point or comma")
          ->check(CLI::IsMember({"point", "comma"}));
    }
  };

  auto* validate = app.add_subcommand("validate", "Check a manifest and list violations");
  add_common(validate, false);

  auto* build = app.add_subcommand("build", "Derive policy pairs and classification labels");
  add_common(build, false);

  auto* indicators = app.add_subcommand("indicators", "Compute comparability indicators");
  add_common(indicators);
  indicators->add_option("--comparison", args.comparison,
                         "Restrict to one comparison: orig-vs-source, orig-vs-replication, "
                         "source-vs-replication");

  auto* terms = app.add_subcommand("terms", "Cross-language term frequency analysis");
  add_common(terms);

  auto* report = app.add_subcommand("report", "Full pipeline; writes a report bundle");
  add_common(report);
  report->add_option("--out", args.out_dir, "Output directory")->required();
  report->add_flag("--no-timestamp", args.no_timestamp, "Suppress the metadata timestamp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(args);
    if (build->parsed()) return cmd_build(args);
    if (indicators->parsed()) return cmd_indicators(args);
    if (terms->parsed()) return cmd_terms(args);
    if (report->parsed()) return cmd_report(args);
  } catch (const ppcorpus::LoadError& e) {
    std::cerr << "load error: " << e.what() << "\n";
    return kLoadError;
  } catch (const ppcorpus::IngestError& e) {
    std::cerr << "ingest error: " << e.what() << "\n";
    return kLoadError;
  } catch (const ppcorpus::ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kComputationError;
  }
  return kUsage;
}
