#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace betaot {

/// Result of one CLI command: a flat, key-sorted record.
///
/// Text form is one `key=value` line per field in key order; strings are
/// written bare, everything else as compact JSON (so lists look like
/// `[0,4,7]`). The JSON sidecar holds the same object. Keys under
/// `timing.` carry wall-clock times and are the only fields that differ
/// between identical runs.
class RunReport {
 public:
  explicit RunReport(std::string command);

  void set(const std::string& key, nlohmann::json value);
  bool has(const std::string& key) const { return fields_.contains(key); }
  const nlohmann::json& at(const std::string& key) const { return fields_.at(key); }
  const nlohmann::json& fields() const noexcept { return fields_; }

  std::string to_text() const;
  std::string to_json() const;
  /// Writes the text form to `path` and the JSON form to `path` + ".json".
  void write(const std::filesystem::path& path) const;

  /// Copy without the timing.* keys, for determinism comparisons.
  nlohmann::json deterministic_fields() const;

 private:
  nlohmann::json fields_ = nlohmann::json::object();
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace betaot
