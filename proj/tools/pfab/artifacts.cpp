// SPDX-License-Identifier: Apache-2.0
#include "artifacts.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "photon_fabric/errors.hpp"

namespace pfab {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[k]};
  return os.str();
}

void RunContext::write_json(const std::string& name, const ojson& payload) const {
  ojson doc;
  doc["version"] = pf::io::toolkit_version();
  doc["config_sha256"] = config_hash();
  doc["config"] = config;
  for (const auto& [k, v] : payload.items()) doc[k] = v;
  std::ofstream out(path(name));
  if (!out) throw pf::InvalidArgument("cannot write " + path(name));
  out << doc.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pf::InvalidArgument("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw pf::InvalidArgument(path + ": " + e.what());
  }
}

std::optional<std::filesystem::path> cache_dir() {
  const char* env = std::getenv("PHOTON_FABRIC_CACHE");
  if (env == nullptr || *env == '\0') return std::nullopt;
  std::filesystem::path p(env);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace pfab
