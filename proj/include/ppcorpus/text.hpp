#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ppcorpus/model.hpp"

namespace ppcorpus {

// Half-open token range [begin, end) within a document's token list.
struct Segment {
  std::string id;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct NormalizedDocument {
  std::string company_id;
  LanguageTag language;
  std::vector<std::string> tokens;
  std::vector<Segment> segments;  // empty unless the file carries markers

  std::size_t word_count() const { return tokens.size(); }
};

// NFC composition, full Unicode case folding to lowercase, whitespace runs
// collapsed to single spaces, ends trimmed. Diacritics survive. Idempotent.
// Throws IngestError (with the byte offset) on invalid UTF-8.
std::string normalize_text(std::string_view utf8);

// Splits normalized text into word tokens. Letters and digits are token
// characters; everything else separates, so apostrophes and intra-word
// hyphens split ("dell'utente" -> "dell", "utente"). Never yields an empty
// token.
std::vector<std::string> tokenize(std::string_view normalized);

// Normalizes and tokenizes raw text, honoring `@@segment <id>` marker lines:
// a marker starts a named segment and is itself excluded from the tokens.
NormalizedDocument ingest_text(std::string_view raw, std::string company_id,
                               LanguageTag language);

NormalizedDocument ingest_file(const std::filesystem::path& path,
                               std::string company_id, LanguageTag language);

}  // namespace ppcorpus
