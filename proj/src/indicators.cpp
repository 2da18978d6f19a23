#include "ppcorpus/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "ppcorpus/errors.hpp"
#include "ppcorpus/rounding.hpp"

namespace ppcorpus {

CorpusComparisonReport corpus_comparison(const LabelCounts& labels, const ToolkitConfig& config) {
  CorpusComparisonReport report;
  report.decimals = config.percent_decimals;
  for (const auto& [label, count] : labels) {
    if (count < 0) throw ComputationError("negative label count");
    report.total += count;
  }
  if (report.total == 0) {
    throw ComputationError("corpus comparison undefined for an empty label multiset");
  }
  for (ClassificationLabel label :
       {ClassificationLabel::Comparable, ClassificationLabel::Complementary,
        ClassificationLabel::Replacement, ClassificationLabel::Destructured}) {
    int count = labels.contains(label) ? labels.at(label) : 0;
    report.counts[label] = count;
    report.percentages[label] =
        round_half_up(100.0 * count / report.total, config.percent_decimals);
  }
  return report;
}

int temporal_internal_consistency(const std::vector<YearMonth>& dates) {
  if (dates.empty()) {
    throw ComputationError("temporal internal consistency undefined for an empty corpus");
  }
  auto [min_it, max_it] = std::minmax_element(dates.begin(), dates.end());
  return months_between(*min_it, *max_it);
}

TemporalGapReport temporal_replication_gap(const std::vector<GapPair>& pairs,
                                           const ToolkitConfig& config) {
  TemporalGapReport report;
  long total = 0;
  for (const auto& pair : pairs) {
    if (pair.excluded) {
      report.excluded.push_back({pair.slot_id, 0, pair.exclusion_reason});
      continue;
    }
    if (!pair.original_date || !pair.new_date) {
      report.excluded.push_back({pair.slot_id, 0, "date unavailable"});
      continue;
    }
    int gap = std::abs(months_between(*pair.original_date, *pair.new_date));
    report.included.push_back({pair.slot_id, gap, ""});
    total += gap;
  }
  if (report.included.empty()) {
    throw ComputationError("temporal replication gap: no includable pairs");
  }
  report.average_months = round_half_up(
      static_cast<double>(total) / static_cast<double>(report.included.size()),
      config.month_decimals);
  return report;
}

std::vector<QualitativeEvent> qualitative_replication_gap(
    const std::vector<QualitativeEvent>& events, YearMonth start, YearMonth end) {
  std::vector<QualitativeEvent> out = events;
  for (auto& event : out) {
    event.flagged = !(event.date < start) && !(end < event.date);
  }
  return out;
}

std::vector<QualitativeEvent> load_events(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open event log: " + path.string());
  std::vector<QualitativeEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LoadError("event log " + path.string() + ":" + std::to_string(line_no) +
                      ": expected YYYY-MM<TAB>description");
    }
    auto date = parse_year_month(line.substr(0, tab));
    if (!date) {
      throw LoadError("event log " + path.string() + ":" + std::to_string(line_no) +
                      ": unparsable date '" + line.substr(0, tab) + "'");
    }
    events.push_back({*date, line.substr(tab + 1), false});
  }
  return events;
}

std::string rank_source_family(std::string_view source_name) {
  std::string name(source_name);
  auto is_region_token = [](std::string_view tok) {
    return tok.size() == 2 && tok[0] >= 'A' && tok[0] <= 'Z' && tok[1] >= 'A' && tok[1] <= 'Z';
  };
  for (;;) {
    auto space = name.find_last_of(' ');
    if (space == std::string::npos) break;
    std::string_view last(name);
    last.remove_prefix(space + 1);
    if (!is_region_token(last)) break;
    name.resize(space);
    while (!name.empty() && name.back() == ' ') name.pop_back();
  }
  return name;
}

RankSourceComparison representativeness_table(const CorpusManifest& manifest) {
  RankSourceComparison table;

  struct Column {
    std::string name;
    const CorpusSection* section;
  };
  std::vector<Column> columns;
  for (auto [name, section] : {std::pair{"original", &manifest.original_corpus},
                               {"source", &manifest.source_corpus},
                               {"replication", &manifest.replication_corpus}}) {
    if (!section->policies.empty()) columns.push_back({name, section});
  }

  std::map<std::string, RankSourceRow> rows;
  for (const auto& column : columns) {
    std::set<std::string> seen;  // dedupe identical provenance per corpus
    bool any = false;
    for (const auto& policy : column.section->policies) {
      const CompanyEntry* company = manifest.find_company(policy.company_id);
      if (!company || company->provenance.source_name.empty()) continue;
      any = true;
      const auto& prov = company->provenance;
      if (!seen.insert(prov.source_name + "|" + to_string(prov.snapshot_date)).second) continue;
      std::string family = rank_source_family(prov.source_name);
      auto& row = rows[family];
      row.family = family;
      row.per_corpus[column.name].push_back({prov.source_name, prov.snapshot_date});
    }
    if (!any) {
      throw ComputationError("corpus '" + column.name + "' has no rank-source provenance");
    }
    table.corpus_names.push_back(column.name);
  }

  for (auto& [family, row] : rows) {
    row.homogeneous = true;
    for (const auto& column : columns) {
      if (!row.per_corpus.contains(column.name)) row.homogeneous = false;
    }
    for (auto& [name, cells] : row.per_corpus) {
      std::sort(cells.begin(), cells.end(), [](const RankSourceCell& a, const RankSourceCell& b) {
        if (a.source_name != b.source_name) return a.source_name < b.source_name;
        return a.snapshot_date < b.snapshot_date;
      });
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace ppcorpus
