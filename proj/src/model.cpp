#include "ppcorpus/model.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace ppcorpus {

std::optional<LanguageTag> LanguageTag::parse(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  for (char c : text) {
    if (c < 'a' || c > 'z') return std::nullopt;
  }
  return LanguageTag{std::string(text)};
}

std::string_view to_string(ClassificationLabel label) {
  switch (label) {
    case ClassificationLabel::Comparable: return "comparable";
    case ClassificationLabel::Complementary: return "complementary";
    case ClassificationLabel::Replacement: return "replacement";
    case ClassificationLabel::Destructured: return "destructured";
  }
  return "?";
}

const CompanyEntry* CorpusManifest::find_company(std::string_view id) const {
  auto it = std::find_if(companies.begin(), companies.end(),
                         [&](const CompanyEntry& c) { return c.id == id; });
  return it == companies.end() ? nullptr : &*it;
}

namespace {

void check_corpus(const CorpusManifest& m, const CorpusSection& corpus,
                  const std::string& name, std::vector<Violation>& out) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& policy : corpus.policies) {
    if (!m.find_company(policy.company_id)) {
      out.push_back({"dangling-reference",
                     name + ": policy references unknown company '" + policy.company_id + "'"});
    }
    if (policy.language != corpus.language) {
      out.push_back({"language-mismatch",
                     name + ": policy for '" + policy.company_id + "' is tagged '" +
                         policy.language.code + "', corpus language is '" +
                         corpus.language.code + "'"});
    }
    if (!seen.insert({policy.company_id, policy.language.code}).second) {
      out.push_back({"duplicate-policy",
                     name + ": duplicate policy for (" + policy.company_id + ", " +
                         policy.language.code + ")"});
    }
    if (policy.text_path.empty()) {
      out.push_back({"missing-file", name + ": policy for '" + policy.company_id +
                                         "' has no text_path"});
    } else {
      auto resolved = policy.text_path.is_absolute() ? policy.text_path
                                                     : m.base_dir / policy.text_path;
      if (!std::filesystem::exists(resolved)) {
        out.push_back({"missing-file", name + ": text file not found: " + resolved.string()});
      }
    }
  }
}

void check_reference(const CorpusManifest& m, const std::optional<std::string>& id,
                     const std::string& context, std::vector<Violation>& out) {
  if (id && !m.find_company(*id)) {
    out.push_back({"dangling-reference", context + " references unknown company '" + *id + "'"});
  }
}

}  // namespace

ValidationReport validate_manifest(const CorpusManifest& manifest) {
  ValidationReport report;
  auto& v = report.violations;
  v = manifest.load_violations;

  // Language layout across the three corpora.
  if (!LanguageTag::parse(manifest.original_corpus.language.code) ||
      !LanguageTag::parse(manifest.source_corpus.language.code) ||
      !LanguageTag::parse(manifest.replication_corpus.language.code)) {
    v.push_back({"bad-language", "corpus language tags must be two lowercase ASCII letters"});
  }
  if (manifest.source_corpus.language != manifest.original_corpus.language) {
    v.push_back({"language-mismatch",
                 "source corpus language must equal the original corpus language"});
  }
  if (manifest.replication_corpus.language == manifest.source_corpus.language) {
    v.push_back({"language-collision",
                 "replication corpus shares its language with the source corpus"});
  }

  std::set<std::string> company_ids;
  for (const auto& company : manifest.companies) {
    if (company.id.empty()) {
      v.push_back({"empty-id", "company with empty id"});
    } else if (!company_ids.insert(company.id).second) {
      v.push_back({"duplicate-id", "duplicate company id '" + company.id + "'"});
    }
    if (company.sector.empty()) {
      v.push_back({"empty-sector", "company '" + company.id + "' has an empty sector"});
    }
    const auto& sd = company.provenance.snapshot_date;
    if (sd.month < 1 || sd.month > 12) {
      v.push_back({"invalid-date", "company '" + company.id + "' has an invalid snapshot date"});
    }
  }

  check_corpus(manifest, manifest.original_corpus, "original_corpus", v);
  check_corpus(manifest, manifest.source_corpus, "source_corpus", v);
  check_corpus(manifest, manifest.replication_corpus, "replication_corpus", v);

  std::set<std::pair<std::string, std::string>> slots;
  for (const auto& ann : manifest.annotations) {
    std::string context = "annotation for '" + ann.company_id + "'";
    check_reference(manifest, ann.company_id, "annotation", v);
    check_reference(manifest, ann.replacement_company_id, context, v);
    check_reference(manifest, ann.substitute_company_id, context, v);
    check_reference(manifest, ann.sector_pair_company_id, context, v);

    if (ann.replacement_company_id.has_value() == ann.company_exists_in_replication_country) {
      v.push_back({"annotation-inconsistent",
                   context + ": replacement_company_id must be present exactly when "
                             "company_exists_in_replication_country is false"});
    }
    if (ann.exclusion_from_gap && ann.exclusion_reason.empty()) {
      v.push_back({"missing-exclusion-reason",
                   context + ": exclusion_from_gap set without a reason"});
    }
    if (!slots.insert({ann.company_id, ann.substitute_company_id.value_or("")}).second) {
      v.push_back({"duplicate-annotation", "duplicate " + context});
    }
  }

  const auto& cfg = manifest.config;
  if (!(cfg.length_ratio_threshold > 0.0 && cfg.length_ratio_threshold < 1.0)) {
    v.push_back({"bad-config", "length_ratio_threshold must lie strictly between 0 and 1"});
  }
  bool strictly_increasing =
      std::adjacent_find(cfg.top_n_sizes.begin(), cfg.top_n_sizes.end(),
                         [](int a, int b) { return a >= b; }) == cfg.top_n_sizes.end();
  if (cfg.top_n_sizes.empty() || !strictly_increasing || cfg.top_n_sizes.front() <= 0) {
    v.push_back({"bad-config", "top_n_sizes must be strictly increasing positives"});
  }

  return report;
}

}  // namespace ppcorpus
