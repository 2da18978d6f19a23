#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "ppcorpus/errors.hpp"
#include "ppcorpus/terms.hpp"
#include "ppcorpus/text.hpp"

using namespace ppcorpus;

namespace {

const std::filesystem::path kFixtures = PPCORPUS_FIXTURES_DIR;
const LanguageTag kEn{"en"};
const LanguageTag kIt{"it"};

TermEntry entry(std::string id, std::vector<TermSurface> en_surfaces,
                std::vector<std::string> maps_to = {}) {
  TermEntry e;
  e.id = std::move(id);
  e.category = "test";
  e.surfaces["en"] = std::move(en_surfaces);
  e.maps_to = std::move(maps_to);
  return e;
}

// Brute-force oracle for the longest-match, non-overlapping, left-to-right
// scan: at each position try every surface directly, take the longest hit,
// jump past it.
std::vector<TermMatch> oracle_matches(const std::vector<std::string>& tokens, std::size_t begin,
                                      std::size_t end, const TermLexicon& lexicon,
                                      const LanguageTag& language) {
  std::vector<TermMatch> matches;
  std::size_t pos = begin;
  while (pos < end) {
    std::size_t best_len = 0;
    std::string best_term;
    for (const auto& term : lexicon.entries()) {
      auto it = term.surfaces.find(language.code);
      if (it == term.surfaces.end()) continue;
      for (const auto& surface : it->second) {
        if (surface.size() <= best_len) continue;
        if (pos + surface.size() > end) continue;
        bool hit = true;
        for (std::size_t k = 0; k < surface.size(); ++k) {
          if (tokens[pos + k] != surface[k]) {
            hit = false;
            break;
          }
        }
        if (hit) {
          best_len = surface.size();
          best_term = term.id;
        }
      }
    }
    if (best_len > 0) {
      matches.push_back({best_term, pos, best_len});
      pos += best_len;
    } else {
      ++pos;
    }
  }
  return matches;
}

bool same_matches(const std::vector<TermMatch>& a, const std::vector<TermMatch>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].term_id != b[i].term_id || a[i].token_begin != b[i].token_begin ||
        a[i].token_length != b[i].token_length) {
      return false;
    }
  }
  return true;
}

// The acceptance suite's 5-term lexicon with nested and overlapping
// surfaces over the alphabet {a, b, c, d, e, f}.
TermLexicon tricky_lexicon() {
  return TermLexicon::from_entries({
      entry("t-a", {{"a"}}),
      entry("t-ab", {{"a", "b"}}),
      entry("t-abc", {{"a", "b", "c"}, {"b", "c"}}),
      entry("t-cd", {{"c", "d"}, {"d", "e", "f"}}),
      entry("t-bde", {{"b", "d", "e"}, {"e"}}),
  });
}

}  // namespace

TEST_CASE("lexicon construction validates its invariants") {
  CHECK_THROWS_AS(TermLexicon::from_entries({entry("", {{"x"}})}), LoadError);
  CHECK_THROWS_AS(TermLexicon::from_entries({entry("dup", {{"x"}}), entry("dup", {{"y"}})}),
                  LoadError);
  CHECK_THROWS_AS(TermLexicon::from_entries({entry("a", {{}})}), LoadError);
  // One surface, two owners.
  CHECK_THROWS_AS(TermLexicon::from_entries({entry("a", {{"x"}}), entry("b", {{"x"}})}),
                  LoadError);
  // Unknown maps_to target.
  CHECK_THROWS_AS(TermLexicon::from_entries({entry("a", {{"x"}}, {"ghost"})}), LoadError);
  // Duplicate variants inside one term collapse silently.
  auto ok = TermLexicon::from_entries({entry("a", {{"x"}, {"x"}, {"y"}})});
  CHECK(ok.find("a")->surfaces.at("en").size() == 2);
}

TEST_CASE("equivalence classes close over maps_to in both directions") {
  auto lexicon = TermLexicon::from_entries({
      entry("pii", {{"pii"}}, {"pi"}),
      entry("pi", {{"pi"}}),
      entry("spi", {{"spi"}}),
      entry("chain", {{"chain"}}, {"pii"}),
  });
  auto from_pi = lexicon.equivalence_class("pi");
  CHECK(from_pi == std::set<std::string>{"chain", "pi", "pii"});
  auto from_chain = lexicon.equivalence_class("chain");
  CHECK(from_chain == from_pi);
  CHECK(lexicon.equivalence_class("spi") == std::set<std::string>{"spi"});
}

TEST_CASE("find_term_matches prefers the longest surface") {
  auto lexicon = tricky_lexicon();
  std::vector<std::string> tokens = {"a", "b", "c", "d", "e", "f"};
  auto matches = find_term_matches(tokens, 0, tokens.size(), lexicon, kEn);
  REQUIRE(matches.size() == 2);
  CHECK(matches[0].term_id == "t-abc");  // "a b c" beats "a" and "a b"
  CHECK(matches[0].token_length == 3);
  CHECK(matches[1].term_id == "t-cd");  // resumes at "d": "d e f"
  CHECK(matches[1].token_begin == 3);
  CHECK(matches[1].token_length == 3);
}

TEST_CASE("matches never overlap and stay in order") {
  auto lexicon = tricky_lexicon();
  std::mt19937 rng(53);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    std::uniform_int_distribution<int> len(0, 30);
    std::vector<std::string> tokens;
    int n = len(rng);
    for (int i = 0; i < n; ++i) tokens.push_back(alphabet[pick(rng)]);
    auto matches = find_term_matches(tokens, 0, tokens.size(), lexicon, kEn);
    std::size_t prev_end = 0;
    for (const auto& m : matches) {
      CHECK(m.token_begin >= prev_end);
      CHECK(m.token_length > 0);
      prev_end = m.token_begin + m.token_length;
      CHECK(prev_end <= tokens.size());
    }
  }
}

TEST_CASE("find_term_matches equals the brute-force oracle: exhaustive short inputs") {
  auto lexicon = tricky_lexicon();
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e", "f"};
  // Exhaustive over every sequence up to length 6 (6^0 + ... + 6^6 inputs).
  for (int n = 0; n <= 6; ++n) {
    std::vector<std::size_t> digits(n, 0);
    for (;;) {
      std::vector<std::string> tokens;
      for (int i = 0; i < n; ++i) tokens.push_back(alphabet[digits[i]]);
      auto fast = find_term_matches(tokens, 0, tokens.size(), lexicon, kEn);
      auto slow = oracle_matches(tokens, 0, tokens.size(), lexicon, kEn);
      REQUIRE(same_matches(fast, slow));
      int i = n - 1;
      while (i >= 0 && digits[i] == alphabet.size() - 1) digits[i--] = 0;
      if (i < 0) break;
      ++digits[i];
    }
  }
}

TEST_CASE("find_term_matches equals the brute-force oracle: sampled long inputs") {
  auto lexicon = tricky_lexicon();
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e", "f"};
  std::mt19937 rng(59);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int length = 7; length <= 30; ++length) {
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<std::string> tokens;
      for (int i = 0; i < length; ++i) tokens.push_back(alphabet[pick(rng)]);
      auto fast = find_term_matches(tokens, 0, tokens.size(), lexicon, kEn);
      auto slow = oracle_matches(tokens, 0, tokens.size(), lexicon, kEn);
      REQUIRE(same_matches(fast, slow));
    }
  }
}

TEST_CASE("count_term_occurrences aggregates matches per term") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto doc = ingest_text("We share personal information with third parties. Third party cookies "
                         "track your IP address. Personal information matters.",
                         "acme", kEn);
  auto counts = count_term_occurrences(doc, lexicon, kEn);
  CHECK(counts["personal-information"] == 2);
  CHECK(counts["third-parties"] == 2);  // both surface variants accumulate
  CHECK(counts["cookies"] == 1);
  CHECK(counts["ip-address"] == 1);
}

TEST_CASE("count_term_occurrences requires surfaces for the language") {
  auto lexicon = TermLexicon::from_entries({entry("only-en", {{"x"}})});
  auto doc = ingest_text("x", "acme", kIt);
  CHECK_THROWS_AS(count_term_occurrences(doc, lexicon, kIt), ComputationError);
}

TEST_CASE("nested surfaces count once: sensitive personal information") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto doc = ingest_text("sensitive personal information", "acme", kEn);
  auto counts = count_term_occurrences(doc, lexicon, kEn);
  CHECK(counts["sensitive-personal-information"] == 1);
  CHECK(counts.count("personal-information") == 0);
}

TEST_CASE("nested replication surface counts once: informativa sul trattamento") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto doc = ingest_text("l'informativa sul trattamento dei dati personali", "acme", kIt);
  auto counts = count_term_occurrences(doc, lexicon, kIt);
  CHECK(counts["privacy-policy"] == 1);
  CHECK(counts.count("personal-information") == 0);
}

TEST_CASE("rank_terms orders by descending frequency, ties by term id") {
  std::map<std::string, TermCounts> per_doc;
  per_doc["d1"] = {{"alpha", 3}, {"beta", 5}};
  per_doc["d2"] = {{"alpha", 2}, {"gamma", 5}, {"beta", 1}};
  auto table = rank_terms(kEn, per_doc);
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[0].term_id == "beta");  // 6
  CHECK(table.rows[0].rank == 1);
  CHECK(table.rows[1].term_id == "alpha");  // 5, tie with gamma, id order
  CHECK(table.rows[2].term_id == "gamma");
  CHECK(table.rows[2].rank == 3);
  CHECK(table.rank_of("gamma") == 3);
  CHECK_FALSE(table.rank_of("missing").has_value());
}

TEST_CASE("rank_terms is invariant to how counts are split across documents") {
  std::map<std::string, TermCounts> split;
  split["d1"] = {{"a", 1}, {"b", 4}};
  split["d2"] = {{"a", 2}};
  split["d3"] = {{"b", 1}, {"c", 9}};
  std::map<std::string, TermCounts> merged;
  merged["all"] = {{"a", 3}, {"b", 5}, {"c", 9}};
  auto t1 = rank_terms(kEn, split);
  auto t2 = rank_terms(kEn, merged);
  REQUIRE(t1.rows.size() == t2.rows.size());
  for (std::size_t i = 0; i < t1.rows.size(); ++i) {
    CHECK(t1.rows[i].term_id == t2.rows[i].term_id);
    CHECK(t1.rows[i].frequency == t2.rows[i].frequency);
    CHECK(t1.rows[i].rank == t2.rows[i].rank);
  }
}

TEST_CASE("load_frequency_table reads the transcribed fixtures") {
  auto us = load_frequency_table(kFixtures / "tables/freq_source.tsv", kEn);
  auto it = load_frequency_table(kFixtures / "tables/freq_replication.tsv", kIt);
  REQUIRE(us.rows.size() == 40);
  REQUIRE(it.rows.size() == 40);
  CHECK(us.rows[0].term_id == "personal-information");
  CHECK(us.rows[0].frequency == 1430);
  CHECK(it.rows[0].frequency == 1523);
  CHECK(it.rows[1].term_id == "personally-identifiable-information");
  CHECK(it.rows[1].frequency == 1012);
  CHECK(us.rank_of("cookies") == 2);
  CHECK(it.rank_of("cookies") == 3);
}

TEST_CASE("top_n_overlap uses equivalence classes") {
  auto lexicon = TermLexicon::from_entries({
      entry("pii", {{"pii"}}, {"pi"}),
      entry("pi", {{"pi"}}),
      entry("other", {{"other"}}),
      entry("lone", {{"lone"}}),
  });
  FrequencyTable a{kEn, {{"pii", 10, 1}, {"lone", 5, 2}}, {}};
  FrequencyTable b{kIt, {{"pi", 9, 1}, {"other", 2, 2}}, {}};
  auto overlap = top_n_overlap(a, b, 2, 2, lexicon);
  CHECK(overlap.member_count == 1);  // pii ~ pi; lone has no counterpart
  CHECK(overlap.percentage == doctest::Approx(50.0));
}

TEST_CASE("top_n_overlap rejects cuts beyond the table") {
  auto lexicon = TermLexicon::from_entries({entry("a", {{"a"}})});
  FrequencyTable t{kEn, {{"a", 1, 1}}, {}};
  CHECK_THROWS_AS(top_n_overlap(t, t, 2, 1, lexicon), ComputationError);
  CHECK_THROWS_AS(top_n_overlap(t, t, 1, 2, lexicon), ComputationError);
  CHECK_THROWS_AS(top_n_overlap(t, t, 0, 1, lexicon), ComputationError);
}

TEST_CASE("top_n_overlap agrees with a set-intersection oracle on the fixtures") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto us = load_frequency_table(kFixtures / "tables/freq_source.tsv", kEn);
  auto it = load_frequency_table(kFixtures / "tables/freq_replication.tsv", kIt);
  for (int n : {5, 10, 22}) {
    for (int m : {5, 10, 22}) {
      auto fast = top_n_overlap(us, it, n, m, lexicon);
      // Oracle: expand both cuts to id sets via equivalence classes, then
      // count A-terms whose class hits the expanded B set.
      std::set<std::string> b_ids;
      for (int i = 0; i < m; ++i) {
        auto eq = lexicon.equivalence_class(it.rows[i].term_id);
        b_ids.insert(eq.begin(), eq.end());
      }
      int expected = 0;
      for (int i = 0; i < n; ++i) {
        for (const auto& id : lexicon.equivalence_class(us.rows[i].term_id)) {
          if (b_ids.contains(id)) {
            ++expected;
            break;
          }
        }
      }
      CHECK(fast.member_count == expected);
    }
  }
}

TEST_CASE("term_coverage tiers and percentage composition") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto us = load_frequency_table(kFixtures / "tables/freq_source.tsv", kEn);
  auto tang = load_term_set(kFixtures / "tang22.txt");
  REQUIRE(tang.size() == 22);
  auto coverage = term_coverage(tang, us, {10, 22}, lexicon);
  CHECK(coverage.in_first_tier + coverage.in_second_tier + coverage.outside == 22);
  CHECK(coverage.inside_percentage ==
        doctest::Approx(coverage.first_tier_percentage + coverage.second_tier_percentage));
  CHECK(coverage.outside_percentage == doctest::Approx(100.0 - coverage.inside_percentage));
  // The nested reference term is pulled into the first tier through its
  // equivalence class.
  auto row = std::find_if(coverage.rows.begin(), coverage.rows.end(),
                          [](const CoverageRow& r) { return r.term_id == "personal-information"; });
  REQUIRE(row != coverage.rows.end());
  CHECK(row->tier == CoverageTier::TopFirst);
}

TEST_CASE("term_coverage rejects unknown term ids and empty sets") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto us = load_frequency_table(kFixtures / "tables/freq_source.tsv", kEn);
  CHECK_THROWS_AS(term_coverage({"no-such-term"}, us, {10, 22}, lexicon), ComputationError);
  CHECK_THROWS_AS(term_coverage({}, us, {10, 22}, lexicon), ComputationError);
  CHECK_THROWS_AS(term_coverage({"cookies"}, us, {}, lexicon), ComputationError);
}

TEST_CASE("detect_orphans_widows on the fixture facebook pair") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto en = ingest_file(kFixtures / "policies/src/facebook.txt", "facebook", kEn);
  auto it = ingest_file(kFixtures / "policies/rep/facebook.txt", "facebook", kIt);
  auto report = detect_orphans_widows(en, it, lexicon);
  // The reference-language data-collection segment mentions personally
  // identifiable information; the replication segment never says dati
  // personali: one widow.
  REQUIRE(report.widows.size() == 1);
  CHECK(report.widows[0].term_id == "personally-identifiable-information");
  CHECK(report.widows[0].segment_id == "data-collection");
  CHECK(report.orphans.empty());
  CHECK(report.unaligned.empty());
}

TEST_CASE("detect_orphans_widows role swap swaps orphans and widows") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto en = ingest_file(kFixtures / "policies/src/facebook.txt", "facebook", kEn);
  auto it = ingest_file(kFixtures / "policies/rep/facebook.txt", "facebook", kIt);
  auto forward = detect_orphans_widows(en, it, lexicon);
  auto swapped = detect_orphans_widows(it, en, lexicon);
  CHECK(swapped.orphans.size() == forward.widows.size());
  CHECK(swapped.widows.size() == forward.orphans.size());
  CHECK(swapped.unaligned.size() == forward.unaligned.size());
}

TEST_CASE("detect_orphans_widows reports unaligned segments and needs shared ids") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto en = ingest_text("@@segment a\npersonal information\n@@segment only-en\ncookies\n",
                        "x", kEn);
  auto it = ingest_text("@@segment a\ndati personali\n", "x", kIt);
  auto report = detect_orphans_widows(en, it, lexicon);
  CHECK(report.orphans.empty());
  CHECK(report.widows.empty());
  REQUIRE(report.unaligned.size() == 1);
  CHECK(report.unaligned[0].term_id == "cookies");
  CHECK(report.unaligned[0].segment_id == "only-en");

  auto disjoint = ingest_text("@@segment z\ndati personali\n", "x", kIt);
  CHECK_THROWS_AS(detect_orphans_widows(en, disjoint, lexicon), ComputationError);
}

TEST_CASE("detect_orphans_widows honors the term filter via equivalence classes") {
  auto lexicon = TermLexicon::load(kFixtures / "lexicon.json");
  auto en = ingest_text("@@segment a\npersonally identifiable information and cookies\n", "x", kEn);
  auto it = ingest_text("@@segment a\nniente qui\n", "x", kIt);
  // Filtering on the replication-side id still admits the mapped
  // reference-side term.
  auto filtered = detect_orphans_widows(en, it, lexicon, {"personal-information"});
  REQUIRE(filtered.widows.size() == 1);
  CHECK(filtered.widows[0].term_id == "personally-identifiable-information");
}

TEST_CASE("load_term_set skips comments and blank lines") {
  auto terms = load_term_set(kFixtures / "tang22.txt");
  CHECK(terms.size() == 22);
  CHECK(std::find(terms.begin(), terms.end(), "personal-information") != terms.end());
  CHECK(std::set<std::string>(terms.begin(), terms.end()).size() == 22);
}
