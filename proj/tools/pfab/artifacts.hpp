// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "photon_fabric/io/csv.hpp"

namespace pfab {

using ojson = nlohmann::ordered_json;

// Hex SHA-256 of a byte string.
[[nodiscard]] std::string sha256_hex(const std::string& bytes);

// Effective configuration of one command; its canonical dump is hashed into every artifact.
struct RunContext {
  ojson config;
  std::filesystem::path out_dir;
  int jobs = 1;

  [[nodiscard]] std::string config_hash() const { return sha256_hex(config.dump()); }
  [[nodiscard]] pf::io::ArtifactHeader header() const { return {pf::io::toolkit_version(), config_hash()}; }
  [[nodiscard]] std::string path(const std::string& name) const { return (out_dir / name).string(); }
  // Writes {"version", "config_sha256", "config", ...payload} with a trailing newline.
  void write_json(const std::string& name, const ojson& payload) const;
};

[[nodiscard]] nlohmann::json read_json_file(const std::string& path);

// Directory named by PHOTON_FABRIC_CACHE, created on demand; empty when unset.
[[nodiscard]] std::optional<std::filesystem::path> cache_dir();

}  // namespace pfab
