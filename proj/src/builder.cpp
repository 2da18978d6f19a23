#include "ppcorpus/builder.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ppcorpus/errors.hpp"

namespace ppcorpus {

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::OriginalVsSource: return "orig-vs-source";
    case Comparison::OriginalVsReplication: return "orig-vs-replication";
    case Comparison::SourceVsReplication: return "source-vs-replication";
  }
  return "?";
}

std::optional<Comparison> parse_comparison(std::string_view flag) {
  for (Comparison c : kAllComparisons) {
    if (to_string(c) == flag) return c;
  }
  return std::nullopt;
}

std::string_view to_string(PairOrigin origin) {
  switch (origin) {
    case PairOrigin::RetainedFromOriginal: return "retained-from-original";
    case PairOrigin::Replacement: return "replacement";
    case PairOrigin::ComplementaryAdded: return "complementary-added";
  }
  return "?";
}

LengthCheck length_comparability(std::size_t count_a, std::size_t count_b, double threshold) {
  if (count_a == 0 && count_b == 0) {
    throw ComputationError("length comparability undefined: both word counts are zero");
  }
  auto longer = static_cast<double>(std::max(count_a, count_b));
  double diff = std::fabs(static_cast<double>(count_a) - static_cast<double>(count_b));
  double ratio = diff / longer;
  return {ratio, ratio < threshold};
}

ClassificationLabel classify_pair(const PairAnnotation& annotation, DocsPresence docs,
                                  std::optional<bool> /*length_ok*/) {
  // Length failures never change the label; they surface as warnings on the
  // pair, matching how the methodology retains its length outliers.
  if (!annotation.company_exists_in_replication_country) {
    return ClassificationLabel::Replacement;
  }
  if (!annotation.policy_exists_in_replication_language || annotation.added_as_complementary) {
    return ClassificationLabel::Complementary;
  }
  if (annotation.structure_judged_destructured) {
    if (!docs.source_language_doc || !docs.replication_language_doc) {
      throw ComputationError("annotation for '" + annotation.company_id +
                             "' judges structure destructured but a policy text is missing");
    }
    return ClassificationLabel::Destructured;
  }
  return ClassificationLabel::Comparable;
}

DocumentSet ingest_all(const CorpusManifest& manifest) {
  DocumentSet docs;
  auto ingest_section = [&](const CorpusSection& section,
                            std::map<std::string, NormalizedDocument>& out) {
    for (const auto& policy : section.policies) {
      auto path = policy.text_path.is_absolute() ? policy.text_path
                                                 : manifest.base_dir / policy.text_path;
      out.emplace(policy.company_id, ingest_file(path, policy.company_id, policy.language));
    }
  };
  ingest_section(manifest.original_corpus, docs.original);
  ingest_section(manifest.source_corpus, docs.source);
  ingest_section(manifest.replication_corpus, docs.replication);
  return docs;
}

namespace {

bool has_policy(const CorpusSection& section, const std::string& company_id) {
  return std::any_of(section.policies.begin(), section.policies.end(),
                     [&](const PolicyRecord& p) { return p.company_id == company_id; });
}

// Picks whichever of the two sector-paired companies has a policy in the
// given corpus section.
std::string pick_for_section(const CorpusSection& section, const std::string& a,
                             const std::string& b) {
  if (has_policy(section, a)) return a;
  if (has_policy(section, b)) return b;
  throw ComputationError("sector pairing (" + a + ", " + b + ") matches no policy in corpus '" +
                         section.study_name + "'");
}

}  // namespace

BuildResult build_corpora(const CorpusManifest& manifest, const DocumentSet& ingested) {
  BuildResult result;
  std::set<std::string> claimed_source;
  std::set<std::string> claimed_replication;

  auto make_pair_from = [&](const PairAnnotation& ann) {
    PolicyPair pair;
    pair.annotation = &ann;

    if (ann.replacement_company_id) {
      pair.source_company_id = *ann.replacement_company_id;
      pair.replication_company_id = *ann.replacement_company_id;
      pair.origin = PairOrigin::Replacement;
    } else if (ann.substitute_company_id) {
      pair.source_company_id = *ann.substitute_company_id;
      pair.replication_company_id = *ann.substitute_company_id;
      pair.origin = PairOrigin::ComplementaryAdded;
    } else if (ann.sector_pair_company_id) {
      pair.source_company_id =
          pick_for_section(manifest.source_corpus, ann.company_id, *ann.sector_pair_company_id);
      pair.replication_company_id = pick_for_section(manifest.replication_corpus, ann.company_id,
                                                     *ann.sector_pair_company_id);
      pair.origin = PairOrigin::ComplementaryAdded;
    } else {
      pair.source_company_id = ann.company_id;
      pair.replication_company_id = ann.company_id;
      pair.origin = ann.added_as_complementary ? PairOrigin::ComplementaryAdded
                                               : PairOrigin::RetainedFromOriginal;
    }

    if (has_policy(manifest.original_corpus, ann.company_id)) {
      pair.original_company_id = ann.company_id;
    }
    pair.slot_id = pair.source_company_id;

    if (!has_policy(manifest.source_corpus, pair.source_company_id)) {
      throw ComputationError("cannot pair company '" + pair.source_company_id +
                             "': no policy in the source corpus");
    }
    if (!has_policy(manifest.replication_corpus, pair.replication_company_id)) {
      throw ComputationError("cannot pair company '" + pair.replication_company_id +
                             "': no policy in the replication corpus");
    }
    claimed_source.insert(pair.source_company_id);
    claimed_replication.insert(pair.replication_company_id);
    return pair;
  };

  std::vector<PolicyPair> pairs;
  for (const auto& ann : manifest.annotations) {
    pairs.push_back(make_pair_from(ann));
  }

  // Companies present in both new corpora but never annotated form default
  // retained pairs; a one-sided unannotated policy has no counterpart.
  for (const auto& policy : manifest.source_corpus.policies) {
    if (claimed_source.contains(policy.company_id)) continue;
    if (!has_policy(manifest.replication_corpus, policy.company_id)) {
      throw ComputationError("unresolvable pairing for company '" + policy.company_id +
                             "': no replication counterpart and no annotation");
    }
    PolicyPair pair;
    pair.slot_id = policy.company_id;
    pair.source_company_id = policy.company_id;
    pair.replication_company_id = policy.company_id;
    if (has_policy(manifest.original_corpus, policy.company_id)) {
      pair.original_company_id = policy.company_id;
    }
    pair.origin = PairOrigin::RetainedFromOriginal;
    claimed_source.insert(policy.company_id);
    claimed_replication.insert(policy.company_id);
    pairs.push_back(std::move(pair));
  }
  for (const auto& policy : manifest.replication_corpus.policies) {
    if (!claimed_replication.contains(policy.company_id)) {
      throw ComputationError("unresolvable pairing for company '" + policy.company_id +
                             "': no source counterpart and no annotation");
    }
  }

  static const PairAnnotation kDefaultAnnotation{};
  for (auto& pair : pairs) {
    const PairAnnotation& ann = pair.annotation ? *pair.annotation : kDefaultAnnotation;

    DocsPresence docs{ingested.source.contains(pair.source_company_id),
                      ingested.replication.contains(pair.replication_company_id)};

    // Comparison against the new source corpus happens in the reference
    // language; the destructured judgment concerns the replication-language
    // text and is suppressed there.
    PairAnnotation same_language = ann;
    same_language.structure_judged_destructured = false;
    pair.labels[Comparison::OriginalVsSource] = classify_pair(same_language, docs);

    pair.labels[Comparison::OriginalVsReplication] = classify_pair(ann, docs);

    // Between the two new corpora every slot carries both texts; only the
    // sector-paired slots (one-language companies) stay complementary.
    PairAnnotation cross = ann;
    cross.company_exists_in_replication_country = true;
    cross.replacement_company_id.reset();
    cross.added_as_complementary = false;
    cross.policy_exists_in_replication_language = !ann.sector_pair_company_id.has_value();
    pair.labels[Comparison::SourceVsReplication] = classify_pair(cross, docs);
    pair.label = pair.labels[Comparison::SourceVsReplication];

    auto src_doc = ingested.source.find(pair.source_company_id);
    auto rep_doc = ingested.replication.find(pair.replication_company_id);
    if (src_doc != ingested.source.end() && rep_doc != ingested.replication.end()) {
      auto check = length_comparability(src_doc->second.word_count(),
                                        rep_doc->second.word_count(),
                                        manifest.config.length_ratio_threshold);
      pair.length_ratio = check.ratio;
      pair.length_warning = !check.comparable_length;
    }
  }

  std::sort(pairs.begin(), pairs.end(),
            [](const PolicyPair& a, const PolicyPair& b) { return a.slot_id < b.slot_id; });

  for (Comparison c : kAllComparisons) {
    LabelCounts counts;
    for (const auto& pair : pairs) counts[pair.labels.at(c)] += 1;
    result.classification[c] = std::move(counts);
  }
  result.pairs = std::move(pairs);
  return result;
}

}  // namespace ppcorpus
