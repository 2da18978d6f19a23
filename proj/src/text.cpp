#include "ppcorpus/text.hpp"

#include <fstream>
#include <sstream>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "ppcorpus/errors.hpp"

namespace ppcorpus {

namespace {

// Rejects malformed UTF-8 up front; ICU would silently substitute U+FFFD.
void require_valid_utf8(std::string_view bytes) {
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  int32_t length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < length) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw IngestError("invalid UTF-8 byte sequence at offset " + std::to_string(start),
                        static_cast<std::size_t>(start));
    }
  }
}

std::string collapse_whitespace(const icu::UnicodeString& us) {
  icu::UnicodeString out;
  bool pending_space = false;
  bool seen_content = false;
  for (int32_t i = 0; i < us.length();) {
    UChar32 c = us.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = seen_content;
      continue;
    }
    if (pending_space) {
      out.append(static_cast<UChar32>(' '));
      pending_space = false;
    }
    out.append(c);
    seen_content = true;
  }
  std::string utf8;
  out.toUTF8String(utf8);
  return utf8;
}

}  // namespace

std::string normalize_text(std::string_view utf8) {
  require_valid_utf8(utf8);

  icu::UnicodeString us = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  us.foldCase(U_FOLD_CASE_DEFAULT);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString composed = nfc->normalize(us, status);
  if (U_FAILURE(status)) {
    throw IngestError(std::string("unicode normalization failed: ") + u_errorName(status), 0);
  }
  return collapse_whitespace(composed);
}

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  const auto* s = reinterpret_cast<const uint8_t*>(normalized.data());
  int32_t length = static_cast<int32_t>(normalized.size());
  int32_t i = 0;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  while (i < length) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c >= 0 && u_isalnum(c)) {
      current.append(normalized.substr(static_cast<std::size_t>(start),
                                       static_cast<std::size_t>(i - start)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

NormalizedDocument ingest_text(std::string_view raw, std::string company_id,
                               LanguageTag language) {
  static constexpr std::string_view kMarker = "@@segment ";

  NormalizedDocument doc;
  doc.company_id = std::move(company_id);
  doc.language = std::move(language);

  auto close_segment = [&](const std::string& chunk) {
    std::size_t begin = doc.tokens.size();
    for (auto& tok : tokenize(normalize_text(chunk))) doc.tokens.push_back(std::move(tok));
    return std::pair{begin, doc.tokens.size()};
  };

  std::string chunk;
  std::optional<std::string> open_id;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    std::string_view line = raw.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    bool is_marker = line.starts_with(kMarker);
    if (is_marker) {
      auto [begin, end] = close_segment(chunk);
      if (open_id) doc.segments.push_back({*open_id, begin, end});
      chunk.clear();
      std::string id(line.substr(kMarker.size()));
      while (!id.empty() && (id.back() == ' ' || id.back() == '\r' || id.back() == '\t')) id.pop_back();
      open_id = id;
    } else {
      chunk.append(line);
      chunk.push_back('\n');
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  auto [begin, end] = close_segment(chunk);
  if (open_id) doc.segments.push_back({*open_id, begin, end});
  return doc;
}

NormalizedDocument ingest_file(const std::filesystem::path& path,
                               std::string company_id, LanguageTag language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open policy text: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_text(buf.str(), std::move(company_id), std::move(language));
}

}  // namespace ppcorpus
