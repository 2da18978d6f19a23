#pragma once

#include <filesystem>
#include <string>

#include "ppcorpus/model.hpp"

namespace ppcorpus {

// Reads a manifest file (UTF-8 JSON, schema in README). Throws LoadError if
// the file is unreadable or not well-formed JSON of the expected shape.
// Field-level problems (bad dates, bad language tags) are recorded in
// load_violations and reported by validate_manifest instead.
CorpusManifest load_manifest(const std::filesystem::path& path);

// Parses manifest JSON from a string; base_dir resolves relative text paths.
CorpusManifest parse_manifest(const std::string& json_text,
                              const std::filesystem::path& base_dir);

// Canonical serialization: fixed field order, two-space indent, trailing
// newline. parse_manifest(serialize_manifest(m)) reproduces m exactly.
std::string serialize_manifest(const CorpusManifest& manifest);

void save_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);

}  // namespace ppcorpus
