#include "ppcorpus/manifest_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ppcorpus/errors.hpp"

namespace ppcorpus {

namespace {

using Json = nlohmann::ordered_json;

std::string get_string(const Json& j, const char* key, const std::string& fallback = "") {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw LoadError(std::string("manifest: field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::optional<YearMonth> get_date(const Json& j, const char* key, const std::string& context,
                                  std::vector<Violation>& violations) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  std::string raw = j[key].is_string() ? j[key].get<std::string>() : j[key].dump();
  auto ym = parse_year_month(raw);
  if (!ym) {
    violations.push_back({"invalid-date", context + ": unparsable date '" + raw + "'"});
  }
  return ym;
}

LanguageTag get_language(const Json& j, const char* key, const std::string& context,
                         std::vector<Violation>& violations) {
  std::string raw = get_string(j, key);
  if (!LanguageTag::parse(raw)) {
    violations.push_back({"bad-language", context + ": invalid language tag '" + raw + "'"});
  }
  return LanguageTag{raw};
}

PolicyRecord parse_policy(const Json& j, std::vector<Violation>& violations) {
  PolicyRecord p;
  p.company_id = get_string(j, "company_id");
  std::string context = "policy '" + p.company_id + "'";
  p.language = get_language(j, "language", context, violations);
  p.source_url = get_string(j, "source_url");
  p.version_date = get_date(j, "version_date", context, violations);
  p.text_path = get_string(j, "text_path");
  if (j.contains("segment_ids")) {
    for (const auto& s : j["segment_ids"]) p.segment_ids.push_back(s.get<std::string>());
  }
  return p;
}

CorpusSection parse_section(const Json& j, const char* name, std::vector<Violation>& violations) {
  CorpusSection s;
  s.study_name = get_string(j, "study_name");
  s.language = get_language(j, "language", name, violations);
  s.build_date = get_date(j, "build_date", name, violations);
  if (j.contains("policies")) {
    for (const auto& pj : j["policies"]) s.policies.push_back(parse_policy(pj, violations));
  }
  return s;
}

std::optional<std::string> opt_string(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

Json policy_to_json(const PolicyRecord& p) {
  Json j;
  j["company_id"] = p.company_id;
  j["language"] = p.language.code;
  j["source_url"] = p.source_url;
  j["version_date"] = p.version_date ? Json(to_string(*p.version_date)) : Json(nullptr);
  j["text_path"] = p.text_path.generic_string();
  if (!p.segment_ids.empty()) j["segment_ids"] = p.segment_ids;
  return j;
}

Json section_to_json(const CorpusSection& s) {
  Json j;
  j["study_name"] = s.study_name;
  j["language"] = s.language.code;
  j["build_date"] = s.build_date ? Json(to_string(*s.build_date)) : Json(nullptr);
  j["policies"] = Json::array();
  for (const auto& p : s.policies) j["policies"].push_back(policy_to_json(p));
  return j;
}

}  // namespace

CorpusManifest parse_manifest(const std::string& json_text,
                              const std::filesystem::path& base_dir) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw LoadError(std::string("manifest is not well-formed JSON: ") + e.what());
  }
  if (!root.is_object()) throw LoadError("manifest root must be a JSON object");

  CorpusManifest m;
  m.base_dir = base_dir;
  auto& violations = m.load_violations;

  try {
    for (const char* name : {"original_corpus", "source_corpus", "replication_corpus"}) {
      if (!root.contains(name)) throw LoadError(std::string("manifest: missing section '") + name + "'");
    }
    m.original_corpus = parse_section(root["original_corpus"], "original_corpus", violations);
    m.source_corpus = parse_section(root["source_corpus"], "source_corpus", violations);
    m.replication_corpus = parse_section(root["replication_corpus"], "replication_corpus", violations);

    for (const auto& cj : root.value("companies", Json::array())) {
      CompanyEntry c;
      c.id = get_string(cj, "id");
      c.display_name = get_string(cj, "display_name");
      c.sector = get_string(cj, "sector");
      c.role_notes = get_string(cj, "role_notes");
      if (cj.contains("provenance")) {
        const auto& pj = cj["provenance"];
        c.provenance.source_name = get_string(pj, "source_name");
        auto date = get_date(pj, "snapshot_date", "company '" + c.id + "' provenance", violations);
        if (date) c.provenance.snapshot_date = *date;
        if (pj.contains("rank_position") && !pj["rank_position"].is_null()) {
          c.provenance.rank_position = pj["rank_position"].get<int>();
        }
      }
      m.companies.push_back(std::move(c));
    }

    for (const auto& aj : root.value("annotations", Json::array())) {
      PairAnnotation a;
      a.company_id = get_string(aj, "company_id");
      a.company_exists_in_replication_country =
          aj.value("company_exists_in_replication_country", true);
      a.policy_exists_in_replication_language =
          aj.value("policy_exists_in_replication_language", true);
      a.structure_judged_destructured = aj.value("structure_judged_destructured", false);
      a.replacement_company_id = opt_string(aj, "replacement_company_id");
      a.substitute_company_id = opt_string(aj, "substitute_company_id");
      a.sector_pair_company_id = opt_string(aj, "sector_pair_company_id");
      a.added_as_complementary = aj.value("added_as_complementary", false);
      a.exclusion_from_gap = aj.value("exclusion_from_gap", false);
      a.exclusion_reason = get_string(aj, "exclusion_reason");
      a.notes = get_string(aj, "notes");
      m.annotations.push_back(std::move(a));
    }

    if (root.contains("config")) {
      const auto& cj = root["config"];
      m.config.length_ratio_threshold =
          cj.value("length_ratio_threshold", m.config.length_ratio_threshold);
      m.config.percent_decimals = cj.value("percent_decimals", m.config.percent_decimals);
      m.config.month_decimals = cj.value("month_decimals", m.config.month_decimals);
      if (cj.contains("top_n_sizes")) {
        m.config.top_n_sizes = cj["top_n_sizes"].get<std::vector<int>>();
      }
    }
  } catch (const Json::exception& e) {
    throw LoadError(std::string("manifest has an unexpected shape: ") + e.what());
  }

  return m;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open manifest file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

std::string serialize_manifest(const CorpusManifest& m) {
  Json root;
  root["original_corpus"] = section_to_json(m.original_corpus);
  root["source_corpus"] = section_to_json(m.source_corpus);
  root["replication_corpus"] = section_to_json(m.replication_corpus);

  root["companies"] = Json::array();
  for (const auto& c : m.companies) {
    Json cj;
    cj["id"] = c.id;
    cj["display_name"] = c.display_name;
    cj["sector"] = c.sector;
    cj["provenance"] = {
        {"source_name", c.provenance.source_name},
        {"snapshot_date", to_string(c.provenance.snapshot_date)},
        {"rank_position", c.provenance.rank_position ? Json(*c.provenance.rank_position) : Json(nullptr)},
    };
    cj["role_notes"] = c.role_notes;
    root["companies"].push_back(std::move(cj));
  }

  root["annotations"] = Json::array();
  for (const auto& a : m.annotations) {
    Json aj;
    aj["company_id"] = a.company_id;
    aj["company_exists_in_replication_country"] = a.company_exists_in_replication_country;
    aj["policy_exists_in_replication_language"] = a.policy_exists_in_replication_language;
    aj["structure_judged_destructured"] = a.structure_judged_destructured;
    aj["replacement_company_id"] = a.replacement_company_id ? Json(*a.replacement_company_id) : Json(nullptr);
    aj["substitute_company_id"] = a.substitute_company_id ? Json(*a.substitute_company_id) : Json(nullptr);
    aj["sector_pair_company_id"] = a.sector_pair_company_id ? Json(*a.sector_pair_company_id) : Json(nullptr);
    aj["added_as_complementary"] = a.added_as_complementary;
    aj["exclusion_from_gap"] = a.exclusion_from_gap;
    aj["exclusion_reason"] = a.exclusion_reason;
    aj["notes"] = a.notes;
    root["annotations"].push_back(std::move(aj));
  }

  root["config"] = {
      {"length_ratio_threshold", m.config.length_ratio_threshold},
      {"percent_decimals", m.config.percent_decimals},
      {"month_decimals", m.config.month_decimals},
      {"top_n_sizes", m.config.top_n_sizes},
  };

  return root.dump(2) + "\n";
}

void save_manifest(const CorpusManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write manifest file: " + path.string());
  out << serialize_manifest(manifest);
}

}  // namespace ppcorpus
