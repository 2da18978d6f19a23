#include "ppcorpus/terms.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ppcorpus/errors.hpp"
#include "ppcorpus/rounding.hpp"

namespace ppcorpus {

namespace {

using Json = nlohmann::ordered_json;

std::string surface_key(const TermSurface& surface) {
  std::string key;
  for (const auto& tok : surface) {
    key += tok;
    key += '\x1f';
  }
  return key;
}

}  // namespace

TermLexicon TermLexicon::from_entries(std::vector<TermEntry> entries) {
  TermLexicon lexicon;
  lexicon.entries_ = std::move(entries);

  for (std::size_t i = 0; i < lexicon.entries_.size(); ++i) {
    auto& entry = lexicon.entries_[i];
    if (entry.id.empty()) throw LoadError("lexicon: term with empty id");
    if (!lexicon.index_.emplace(entry.id, i).second) {
      throw LoadError("lexicon: duplicate term id '" + entry.id + "'");
    }
    for (auto& [lang, variants] : entry.surfaces) {
      // Dedupe variants; keep first occurrence order otherwise.
      std::set<std::string> seen;
      std::vector<TermSurface> unique;
      for (auto& surface : variants) {
        if (surface.empty()) {
          throw LoadError("lexicon: term '" + entry.id + "' has an empty " + lang + " surface");
        }
        if (seen.insert(surface_key(surface)).second) unique.push_back(std::move(surface));
      }
      variants = std::move(unique);
    }
  }

  // One surface must resolve to one term: ambiguous ownership would make
  // longest-match arbitration order-dependent.
  std::map<std::string, std::string> owners;
  for (const auto& entry : lexicon.entries_) {
    for (const auto& [lang, variants] : entry.surfaces) {
      for (const auto& surface : variants) {
        auto [it, inserted] = owners.emplace(lang + "|" + surface_key(surface), entry.id);
        if (!inserted && it->second != entry.id) {
          throw LoadError("lexicon: surface shared by terms '" + it->second + "' and '" +
                          entry.id + "'");
        }
      }
    }
  }

  for (const auto& entry : lexicon.entries_) {
    for (const auto& target : entry.maps_to) {
      if (!lexicon.index_.contains(target)) {
        throw LoadError("lexicon: term '" + entry.id + "' maps_to unknown id '" + target + "'");
      }
    }
  }
  return lexicon;
}

TermLexicon TermLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open lexicon file: " + path.string());
  Json root;
  try {
    root = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw LoadError(std::string("lexicon is not well-formed JSON: ") + e.what());
  }

  std::vector<TermEntry> entries;
  try {
    for (const auto& tj : root.at("terms")) {
      TermEntry entry;
      entry.id = tj.at("id").get<std::string>();
      entry.category = tj.value("category", "");
      entry.notes = tj.value("notes", "");
      if (tj.contains("maps_to")) entry.maps_to = tj["maps_to"].get<std::vector<std::string>>();
      for (const auto& [lang, variants] : tj.at("surfaces").items()) {
        for (const auto& vj : variants) {
          // Surfaces pass through the same normalization as document text,
          // so lexicon authors can write them naturally.
          entry.surfaces[lang].push_back(tokenize(normalize_text(vj.get<std::string>())));
        }
      }
      entries.push_back(std::move(entry));
    }
  } catch (const Json::exception& e) {
    throw LoadError(std::string("lexicon has an unexpected shape: ") + e.what());
  }
  return from_entries(std::move(entries));
}

const TermEntry* TermLexicon::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

bool TermLexicon::has_language(const LanguageTag& language) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const TermEntry& e) {
    return e.surfaces.contains(language.code);
  });
}

std::set<std::string> TermLexicon::equivalence_class(const std::string& id) const {
  std::set<std::string> out{id};
  std::vector<std::string> frontier{id};
  while (!frontier.empty()) {
    std::string current = std::move(frontier.back());
    frontier.pop_back();
    const TermEntry* entry = find(current);
    if (entry) {
      for (const auto& target : entry->maps_to) {
        if (out.insert(target).second) frontier.push_back(target);
      }
    }
    for (const auto& other : entries_) {
      if (out.contains(other.id)) continue;
      if (std::find(other.maps_to.begin(), other.maps_to.end(), current) != other.maps_to.end()) {
        out.insert(other.id);
        frontier.push_back(other.id);
      }
    }
  }
  return out;
}

namespace {

// Token-level trie over the surfaces of one language. A terminal node owns
// exactly one term id (enforced at lexicon construction).
struct TrieNode {
  std::map<std::string, std::size_t> children;
  std::optional<std::string> term_id;
};

struct SurfaceTrie {
  std::vector<TrieNode> nodes{1};

  void add(const TermSurface& surface, const std::string& term_id) {
    std::size_t at = 0;
    for (const auto& token : surface) {
      auto [it, inserted] = nodes[at].children.try_emplace(token, nodes.size());
      if (inserted) nodes.emplace_back();
      at = it->second;
    }
    nodes[at].term_id = term_id;
  }
};

SurfaceTrie build_trie(const TermLexicon& lexicon, const LanguageTag& language) {
  SurfaceTrie trie;
  for (const auto& entry : lexicon.entries()) {
    auto it = entry.surfaces.find(language.code);
    if (it == entry.surfaces.end()) continue;
    for (const auto& surface : it->second) trie.add(surface, entry.id);
  }
  return trie;
}

}  // namespace

std::vector<TermMatch> find_term_matches(const std::vector<std::string>& tokens,
                                         std::size_t begin, std::size_t end,
                                         const TermLexicon& lexicon,
                                         const LanguageTag& language) {
  SurfaceTrie trie = build_trie(lexicon, language);
  std::vector<TermMatch> matches;

  std::size_t pos = begin;
  while (pos < end) {
    std::size_t at = 0;
    std::size_t best_length = 0;
    const std::string* best_term = nullptr;
    for (std::size_t k = pos; k < end; ++k) {
      auto it = trie.nodes[at].children.find(tokens[k]);
      if (it == trie.nodes[at].children.end()) break;
      at = it->second;
      if (trie.nodes[at].term_id) {
        best_length = k - pos + 1;
        best_term = &*trie.nodes[at].term_id;
      }
    }
    if (best_term) {
      matches.push_back({*best_term, pos, best_length});
      pos += best_length;  // matches never overlap
    } else {
      ++pos;
    }
  }
  return matches;
}

TermCounts count_term_occurrences(const NormalizedDocument& doc, const TermLexicon& lexicon,
                                  const LanguageTag& language) {
  if (!lexicon.has_language(language)) {
    throw ComputationError("lexicon has no surfaces for language '" + language.code + "'");
  }
  TermCounts counts;
  for (const auto& match :
       find_term_matches(doc.tokens, 0, doc.tokens.size(), lexicon, language)) {
    counts[match.term_id] += 1;
  }
  return counts;
}

std::optional<int> FrequencyTable::rank_of(const std::string& term_id) const {
  for (const auto& row : rows) {
    if (row.term_id == term_id) return row.rank;
  }
  return std::nullopt;
}

FrequencyTable rank_terms(const LanguageTag& language,
                          const std::map<std::string, TermCounts>& per_document) {
  FrequencyTable table;
  table.language = language;
  table.per_document = per_document;

  std::map<std::string, long> totals;
  for (const auto& [doc_id, counts] : per_document) {
    for (const auto& [term, count] : counts) totals[term] += count;
  }
  for (const auto& [term, total] : totals) table.rows.push_back({term, total, 0});

  std::sort(table.rows.begin(), table.rows.end(), [](const RankedTerm& a, const RankedTerm& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.term_id < b.term_id;
  });
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.rows[i].rank = static_cast<int>(i) + 1;
  }
  return table;
}

FrequencyTable load_frequency_table(const std::filesystem::path& path,
                                    const LanguageTag& language) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open frequency table: " + path.string());
  TermCounts counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LoadError("frequency table " + path.string() + ":" + std::to_string(line_no) +
                      ": expected term_id<TAB>frequency");
    }
    try {
      counts[line.substr(0, tab)] = std::stol(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw LoadError("frequency table " + path.string() + ":" + std::to_string(line_no) +
                      ": unparsable frequency");
    }
  }
  return rank_terms(language, {{"(transcribed)", counts}});
}

namespace {

bool classes_intersect(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& id) { return b.contains(id); });
}

}  // namespace

OverlapResult top_n_overlap(const FrequencyTable& rank_a, const FrequencyTable& rank_b,
                            int n, int m, const TermLexicon& lexicon, int percent_decimals) {
  if (n <= 0 || m <= 0) throw ComputationError("top-n sizes must be positive");
  if (static_cast<std::size_t>(n) > rank_a.rows.size()) {
    throw ComputationError("table A has " + std::to_string(rank_a.rows.size()) +
                           " terms, top-" + std::to_string(n) + " requested");
  }
  if (static_cast<std::size_t>(m) > rank_b.rows.size()) {
    throw ComputationError("table B has " + std::to_string(rank_b.rows.size()) +
                           " terms, top-" + std::to_string(m) + " requested");
  }

  std::vector<std::set<std::string>> b_classes;
  for (int i = 0; i < m; ++i) {
    b_classes.push_back(lexicon.equivalence_class(rank_b.rows[i].term_id));
  }

  OverlapResult result;
  for (int i = 0; i < n; ++i) {
    auto a_class = lexicon.equivalence_class(rank_a.rows[i].term_id);
    bool member = std::any_of(b_classes.begin(), b_classes.end(), [&](const auto& b_class) {
      return classes_intersect(a_class, b_class);
    });
    if (member) result.member_count += 1;
  }
  result.percentage =
      round_half_up(100.0 * result.member_count / n, percent_decimals);
  return result;
}

CoverageReport term_coverage(const std::vector<std::string>& term_set,
                             const FrequencyTable& table, const std::vector<int>& tiers,
                             const TermLexicon& lexicon, int percent_decimals) {
  if (term_set.empty()) throw ComputationError("term coverage: empty term set");
  if (tiers.empty()) throw ComputationError("term coverage: no tier sizes configured");
  int first_cut = tiers[0];
  int second_cut = tiers.size() > 1 ? tiers[1] : tiers[0];

  CoverageReport report;
  for (const auto& term_id : term_set) {
    if (!lexicon.find(term_id)) {
      throw ComputationError("term coverage: unknown term id '" + term_id + "'");
    }
    // Best (smallest) rank over the term's equivalence class.
    std::optional<int> best_rank;
    for (const auto& eq : lexicon.equivalence_class(term_id)) {
      if (auto rank = table.rank_of(eq); rank && (!best_rank || *rank < *best_rank)) {
        best_rank = rank;
      }
    }
    CoverageTier tier = CoverageTier::Outside;
    if (best_rank && *best_rank <= first_cut) {
      tier = CoverageTier::TopFirst;
    } else if (best_rank && *best_rank <= second_cut) {
      tier = CoverageTier::TopSecond;
    }
    report.rows.push_back({term_id, tier});
    switch (tier) {
      case CoverageTier::TopFirst: report.in_first_tier += 1; break;
      case CoverageTier::TopSecond: report.in_second_tier += 1; break;
      case CoverageTier::Outside: report.outside += 1; break;
    }
  }

  auto size = static_cast<double>(term_set.size());
  report.first_tier_percentage =
      round_half_up(100.0 * report.in_first_tier / size, percent_decimals);
  report.second_tier_percentage =
      round_half_up(100.0 * report.in_second_tier / size, percent_decimals);
  // Tier shares are rounded individually and summed, so the printed pieces
  // always add up; the complement keeps inside + outside at 100.
  report.inside_percentage =
      round_half_up(report.first_tier_percentage + report.second_tier_percentage,
                    percent_decimals);
  report.outside_percentage = round_half_up(100.0 - report.inside_percentage, percent_decimals);
  return report;
}

OrphanWidowReport detect_orphans_widows(const NormalizedDocument& source_doc,
                                        const NormalizedDocument& replication_doc,
                                        const TermLexicon& lexicon,
                                        const std::set<std::string>& term_filter) {
  std::map<std::string, const Segment*> source_segments;
  std::map<std::string, const Segment*> replication_segments;
  for (const auto& seg : source_doc.segments) source_segments[seg.id] = &seg;
  for (const auto& seg : replication_doc.segments) replication_segments[seg.id] = &seg;

  std::vector<std::string> shared;
  for (const auto& [id, seg] : source_segments) {
    if (replication_segments.contains(id)) shared.push_back(id);
  }
  if (shared.empty()) {
    throw ComputationError("orphan/widow detection: documents share no segment ids");
  }

  // Expand the filter across maps_to links so a term and its counterpart
  // are always filtered together.
  std::set<std::string> effective_filter;
  for (const auto& id : term_filter) {
    auto eq = lexicon.equivalence_class(id);
    effective_filter.insert(eq.begin(), eq.end());
  }
  auto admitted = [&](const std::string& term_id) {
    return term_filter.empty() || effective_filter.contains(term_id);
  };

  auto segment_matches = [&](const NormalizedDocument& doc, const Segment& seg) {
    std::vector<TermMatch> out;
    for (auto& match : find_term_matches(doc.tokens, seg.begin, seg.end, lexicon, doc.language)) {
      if (admitted(match.term_id)) out.push_back(std::move(match));
    }
    return out;
  };

  OrphanWidowReport report;

  auto has_counterpart = [&](const std::string& term_id, const std::vector<TermMatch>& other) {
    auto eq = lexicon.equivalence_class(term_id);
    return std::any_of(other.begin(), other.end(),
                       [&](const TermMatch& m) { return eq.contains(m.term_id); });
  };

  for (const auto& id : shared) {
    auto src_matches = segment_matches(source_doc, *source_segments[id]);
    auto rep_matches = segment_matches(replication_doc, *replication_segments[id]);
    for (const auto& match : rep_matches) {
      if (!has_counterpart(match.term_id, src_matches)) {
        report.orphans.push_back({match.term_id, id, match.token_begin});
      }
    }
    for (const auto& match : src_matches) {
      if (!has_counterpart(match.term_id, rep_matches)) {
        report.widows.push_back({match.term_id, id, match.token_begin});
      }
    }
  }

  for (const auto& [id, seg] : source_segments) {
    if (replication_segments.contains(id)) continue;
    for (const auto& match : segment_matches(source_doc, *seg)) {
      report.unaligned.push_back({match.term_id, id, match.token_begin});
    }
  }
  for (const auto& [id, seg] : replication_segments) {
    if (source_segments.contains(id)) continue;
    for (const auto& match : segment_matches(replication_doc, *seg)) {
      report.unaligned.push_back({match.term_id, id, match.token_begin});
    }
  }
  return report;
}

std::vector<std::string> load_term_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open term set: " + path.string());
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    terms.push_back(line.substr(start));
  }
  return terms;
}

}  // namespace ppcorpus
