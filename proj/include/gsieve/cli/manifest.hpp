#pragma once

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#include "gsieve/errors.hpp"
#include "gsieve/version.hpp"

namespace gsieve::cli {

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) == 1,
          Errc::verification_failure, "SHA-256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4U]);
    out.push_back(hex[md[i] & 15U]);
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::config_error, "cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct OutputFile {
  std::string name;
  std::string content;
};

struct StageTiming {
  std::string name;
  double seconds = 0.0;
};

/// Provenance of one run: what was asked for, how long each stage took, and
/// a digest of every file written.
struct RunManifest {
  std::string artifact_version = kVersion;
  std::string command;
  std::string config_hash;
  nlohmann::ordered_json config;
  double wall_time = 0.0;
  std::vector<StageTiming> stages;
  std::vector<std::pair<std::string, std::string>> outputs;  ///< file name, sha256

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["artifact_version"] = artifact_version;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["config"] = config;
    j["wall_time_s"] = wall_time;
    j["stages"] = nlohmann::ordered_json::array();
    for (const auto& s : stages) j["stages"].push_back({{"name", s.name}, {"seconds", s.seconds}});
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [file, digest] : outputs) j["outputs"].push_back({{"file", file}, {"sha256", digest}});
    return j;
  }

  static RunManifest from_json(const nlohmann::ordered_json& j) {
    RunManifest m;
    try {
      m.artifact_version = j.at("artifact_version").get<std::string>();
      m.command = j.at("command").get<std::string>();
      m.config_hash = j.at("config_hash").get<std::string>();
      m.config = j.at("config");
      m.wall_time = j.at("wall_time_s").get<double>();
      for (const auto& s : j.at("stages")) m.stages.push_back({s.at("name"), s.at("seconds")});
      for (const auto& o : j.at("outputs")) m.outputs.emplace_back(o.at("file"), o.at("sha256"));
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::config_error, std::string("malformed manifest: ") + e.what());
    }
    return m;
  }
};

inline std::string config_hash(const nlohmann::ordered_json& canonical) { return sha256_hex(canonical.dump()); }

/// Writes every output, then manifest.json listing their digests.
inline RunManifest write_outputs(const std::filesystem::path& dir, RunManifest manifest,
                                 const std::vector<OutputFile>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    require(out.good(), Errc::config_error, "cannot write '" + (dir / f.name).string() + "'");
    out << f.content;
    manifest.outputs.emplace_back(f.name, sha256_hex(f.content));
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.to_json().dump(2) << '\n';
  return manifest;
}

struct DigestCheck {
  std::string file;
  bool ok = false;
  std::string detail;
};

/// Recomputes the digest of every output listed in a manifest.
inline std::vector<DigestCheck> verify_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  std::vector<DigestCheck> out;
  for (const auto& [file, digest] : m.outputs) {
    DigestCheck c{file, false, ""};
    std::ifstream in(dir / file, std::ios::binary);
    if (!in.good()) {
      c.detail = "missing";
    } else {
      std::stringstream ss;
      ss << in.rdbuf();
      const auto actual = sha256_hex(ss.str());
      c.ok = actual == digest;
      c.detail = c.ok ? "ok" : "digest " + actual + " != " + digest;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace gsieve::cli
