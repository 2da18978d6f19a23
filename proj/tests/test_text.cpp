#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "ppcorpus/errors.hpp"
#include "ppcorpus/text.hpp"

using namespace ppcorpus;

TEST_CASE("normalize_text lowercases, folds case, and collapses whitespace") {
  CHECK(normalize_text("Hello   World") == "hello world");
  CHECK(normalize_text("  leading and trailing \t ") == "leading and trailing");
  CHECK(normalize_text("Tabs\tand\nnewlines") == "tabs and newlines");
  CHECK(normalize_text("") == "");
  CHECK(normalize_text("   ") == "");
}

TEST_CASE("normalize_text keeps diacritics and applies NFC") {
  // "è" as precomposed U+00E8 vs "e" + combining grave U+0300 must agree.
  std::string precomposed = "perch\xC3\xA8";
  std::string decomposed = "perche\xCC\x80";
  CHECK(normalize_text(precomposed) == normalize_text(decomposed));
  CHECK(normalize_text("PUBBLICIT\xC3\x80") == "pubblicit\xC3\xA0");
}

TEST_CASE("normalize_text applies full case folding") {
  // U+00DF LATIN SMALL LETTER SHARP S folds to "ss".
  CHECK(normalize_text("stra\xC3\x9F" "e") == "strasse");
}

TEST_CASE("normalize_text is idempotent") {
  std::vector<std::string> samples = {
      "Hello   World", "perch\xC3\xA8 PUBBLICIT\xC3\x80", "stra\xC3\x9F" "e",
      "dell'utente e-mail  multi\tspace", "", "Informativa sulla PRIVACY"};
  for (const auto& s : samples) {
    auto once = normalize_text(s);
    CHECK(normalize_text(once) == once);
  }
}

TEST_CASE("normalize_text reports invalid UTF-8 with a byte offset") {
  std::string bad = "abc\xFFxyz";
  try {
    normalize_text(bad);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(e.byte_offset() == 3);
  }
  // Truncated multi-byte sequence.
  std::string truncated = "ok \xC3";
  CHECK_THROWS_AS(normalize_text(truncated), IngestError);
}

TEST_CASE("tokenize splits on non-alphanumeric characters") {
  CHECK(tokenize("hello world") == std::vector<std::string>{"hello", "world"});
  CHECK(tokenize("dell'utente") == std::vector<std::string>{"dell", "utente"});
  CHECK(tokenize("e-mail") == std::vector<std::string>{"e", "mail"});
  CHECK(tokenize("top10 in 2021") == std::vector<std::string>{"top10", "in", "2021"});
  CHECK(tokenize("...") == std::vector<std::string>{});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("pubblicit\xC3\xA0 mirata") ==
        std::vector<std::string>{"pubblicit\xC3\xA0", "mirata"});
}

TEST_CASE("tokenize never yields empty tokens") {
  std::mt19937 rng(13);
  const std::string alphabet = "ab c.'-1\xC3\xA0";  // mixes letters, digit, separators
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 40);
    int n = len(rng);
    for (int i = 0; i < n; ++i) s += alphabet[pick(rng)];
    std::string norm;
    try {
      norm = normalize_text(s);
    } catch (const IngestError&) {
      continue;  // random byte salad may break a UTF-8 sequence
    }
    for (const auto& tok : tokenize(norm)) CHECK_FALSE(tok.empty());
  }
}

TEST_CASE("word count of a concatenation is the sum of the parts") {
  std::vector<std::string> parts = {"we collect data", "terze parti", "cookie policy text",
                                    "one", ""};
  std::size_t total = 0;
  std::string joined;
  for (const auto& p : parts) {
    total += tokenize(normalize_text(p)).size();
    joined += p;
    joined += " ";
  }
  CHECK(tokenize(normalize_text(joined)).size() == total);
}

TEST_CASE("tokenize agrees with a character-class re-split oracle") {
  std::vector<std::string> samples = {
      "we use cookies and ip addresses", "l'informativa sulla privacy 2021",
      "a1 b2 c3 --- x", "pubblicit\xC3\xA0 mirata e-mail dell'utente"};
  for (const auto& raw : samples) {
    std::string norm = normalize_text(raw);
    // Oracle: split on ASCII space only (normalization already collapsed
    // whitespace), then strip ASCII punctuation at word edges and inside.
    std::vector<std::string> expected;
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) expected.push_back(cur);
      cur.clear();
    };
    for (char c : norm) {
      bool ascii_sep = (static_cast<unsigned char>(c) < 0x80) &&
                       !(std::isalnum(static_cast<unsigned char>(c)));
      if (ascii_sep) {
        flush();
      } else {
        cur += c;
      }
    }
    flush();
    CHECK(tokenize(norm) == expected);
  }
}

TEST_CASE("ingest_text honors segment markers") {
  std::string raw =
      "@@segment intro\n"
      "Hello there reader\n"
      "@@segment body\n"
      "We use cookies\n"
      "and more words\n";
  auto doc = ingest_text(raw, "acme", LanguageTag{"en"});
  CHECK(doc.company_id == "acme");
  CHECK(doc.language.code == "en");
  REQUIRE(doc.segments.size() == 2);
  CHECK(doc.segments[0].id == "intro");
  CHECK(doc.segments[1].id == "body");
  CHECK(doc.tokens.size() == 9);
  // Marker lines contribute no tokens; ranges tile the document.
  CHECK(doc.segments[0].begin == 0);
  CHECK(doc.segments[0].end == 3);
  CHECK(doc.segments[1].begin == 3);
  CHECK(doc.segments[1].end == 9);
  std::vector<std::string> body(doc.tokens.begin() + doc.segments[1].begin,
                                doc.tokens.begin() + doc.segments[1].end);
  CHECK(body == std::vector<std::string>{"we", "use", "cookies", "and", "more", "words"});
}

TEST_CASE("ingest_text without markers yields no segments") {
  auto doc = ingest_text("plain text only", "x", LanguageTag{"en"});
  CHECK(doc.segments.empty());
  CHECK(doc.word_count() == 3);
}

TEST_CASE("ingest_file reads fixture policies") {
  auto doc = ingest_file(std::filesystem::path(PPCORPUS_FIXTURES_DIR) / "policies/src/facebook.txt",
                         "facebook", LanguageTag{"en"});
  REQUIRE(doc.segments.size() == 3);
  CHECK(doc.segments[0].id == "intro");
  CHECK(doc.segments[1].id == "data-collection");
  CHECK(doc.segments[2].id == "contact");
  CHECK(doc.word_count() > 20);
}
