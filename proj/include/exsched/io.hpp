#pragma once
// Config loading, deterministic CSV/JSON emission, digests and the run
// manifest. Outputs use the shortest round-trip decimal representation so
// that identical (config, seed) pairs produce byte-identical files.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "exsched/mc.hpp"

namespace exsched {

inline constexpr const char* kCodeVersion = "exsched 0.1.0";

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& s);
std::string sha256_file(const std::filesystem::path& path);

// Canonical JSON form of a resolved config; also the hashing input.
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

// Parses a config tree; every key is optional and defaults to the shipped
// experiment. Unknown keys and malformed values raise std::invalid_argument
// with the offending key (parse errors carry the byte position).
ExperimentConfig parse_config(const nlohmann::json& root);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunManifest {
  std::string config_hash;
  std::string code_version = kCodeVersion;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs; // path, sha256
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

// Writes content and records (relative name, digest) in the manifest.
void emit_file(RunManifest& manifest, const std::filesystem::path& dir,
               const std::string& name, const std::string& content);

} // namespace exsched
