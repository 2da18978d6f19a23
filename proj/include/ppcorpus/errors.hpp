#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppcorpus {

// Input file could not be read or parsed at all. Distinct from a
// validation failure, which is reported, not thrown.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed text input (invalid UTF-8). Carries the offending byte offset.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& msg, std::size_t byte_offset)
      : std::runtime_error(msg), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Degenerate or contradictory inputs to a computation (both word counts
// zero, empty label multiset, conflicting annotation flags, ...).
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ppcorpus
