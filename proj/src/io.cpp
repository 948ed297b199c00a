#include "exsched/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace exsched {

std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4), self-contained.

namespace {

constexpr std::array<std::uint32_t, 64> kSha256K = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

constexpr std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

struct Sha256 {
  std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::array<unsigned char, 64> block{};
  std::size_t block_len = 0;
  std::uint64_t total = 0;

  void compress(const unsigned char* p) {
    std::array<std::uint32_t, 64> w;
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto [a, b, c, d, e, f, g, hh] = h;
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = hh + s1 + ch + kSha256K[i] + w[i];
      const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = s0 + maj;
      hh = g; g = f; f = e; e = d + t1;
      d = c; c = b; b = a; a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
  }

  void update(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    total += size;
    while (size > 0) {
      const std::size_t take = std::min(size, block.size() - block_len);
      std::memcpy(block.data() + block_len, p, take);
      block_len += take;
      p += take;
      size -= take;
      if (block_len == block.size()) {
        compress(block.data());
        block_len = 0;
      }
    }
  }

  std::string hex_digest() {
    const std::uint64_t bits = total * 8;
    const unsigned char one = 0x80;
    update(&one, 1);
    const unsigned char zero = 0;
    while (block_len != 56) update(&zero, 1);
    std::array<unsigned char, 8> len;
    for (int i = 0; i < 8; ++i) len[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
    update(len.data(), len.size());
    static const char* hexd = "0123456789abcdef";
    std::string out(64, '0');
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 4; ++j) {
        const unsigned char byte = static_cast<unsigned char>(h[i] >> (24 - 8 * j));
        out[8 * i + 2 * j] = hexd[byte >> 4];
        out[8 * i + 2 * j + 1] = hexd[byte & 0xf];
      }
    return out;
  }
};

} // namespace

std::string sha256_hex(const void* data, std::size_t size) {
  Sha256 sha;
  sha.update(data, size);
  return sha.hex_digest();
}

std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256_file: cannot open " + path.string());
  Sha256 sha;
  std::array<char, 65536> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    sha.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return sha.hex_digest();
}

// ---------------------------------------------------------------------------
// Config serialization.

namespace {

const char* design_mode_name(DesignMode m) {
  switch (m) {
    case DesignMode::bound_a: return "a";
    case DesignMode::empirical_b: return "b";
    case DesignMode::both: return "both";
  }
  return "both";
}

DesignMode parse_design_mode(const std::string& s) {
  if (s == "a") return DesignMode::bound_a;
  if (s == "b") return DesignMode::empirical_b;
  if (s == "both") return DesignMode::both;
  throw std::invalid_argument("config.design_mode: expected \"a\", \"b\" or \"both\"");
}

const char* design_info_name(DesignInfo d) {
  return d == DesignInfo::full ? "full" : "exploration_only";
}

DesignInfo parse_design_info(const std::string& s) {
  if (s == "exploration_only") return DesignInfo::exploration_only;
  if (s == "full") return DesignInfo::full;
  throw std::invalid_argument("config.design_info: expected \"exploration_only\" or \"full\"");
}

} // namespace

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["theta0_list"] = c.theta0_list;
  j["horizon"] = c.horizon;
  j["sigma2"] = c.sigma2;
  j["n_mc"] = c.n_mc;
  j["constants_grid"] = {{"count", c.constants_grid.count},
                         {"lo", c.constants_grid.lo},
                         {"hi", c.constants_grid.hi}};
  j["exponent_grid"] = {{"count", c.exponent_grid.count},
                        {"lo", c.exponent_grid.lo},
                        {"hi", c.exponent_grid.hi}};
  j["master_seed"] = c.master_seed;
  j["design_mode"] = design_mode_name(c.design_mode);
  j["oracle_design"] = c.oracle_design;
  j["design_info"] = design_info_name(c.design_info);
  j["init_input"] = c.init_input;
  if (c.i0_override)
    j["i0_override"] = *c.i0_override;
  else
    j["i0_override"] = nullptr;
  j["fig_trajectory_index"] = c.fig_trajectory_index;
  j["max_replicate_runs"] = c.max_replicate_runs;
  j["brute_force_budget"] = c.brute_force_budget;
  return j;
}

std::string config_hash(const ExperimentConfig& config) {
  return sha256_hex(config_to_json(config).dump());
}

namespace {

template <typename T>
T require_number(const nlohmann::json& j, const char* key) {
  if (!j.is_number())
    throw std::invalid_argument(std::string("config.") + key + ": expected a number");
  return j.get<T>();
}

} // namespace

ExperimentConfig parse_config(const nlohmann::json& root) {
  if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
  ExperimentConfig c;
  for (const auto& [key, value] : root.items()) {
    if (key == "theta0_list") {
      if (!value.is_array() || value.empty())
        throw std::invalid_argument("config.theta0_list: expected a nonempty array");
      c.theta0_list = value.get<std::vector<double>>();
    } else if (key == "horizon") {
      c.horizon = require_number<std::size_t>(value, "horizon");
    } else if (key == "sigma2") {
      c.sigma2 = require_number<double>(value, "sigma2");
    } else if (key == "n_mc") {
      c.n_mc = require_number<std::size_t>(value, "n_mc");
    } else if (key == "constants_grid" || key == "exponent_grid") {
      if (!value.is_object())
        throw std::invalid_argument("config." + key + ": expected an object");
      for (const auto& [gk, gv] : value.items()) {
        double* slot = nullptr;
        if (key == "constants_grid") {
          if (gk == "count") { c.constants_grid.count = require_number<std::size_t>(gv, "constants_grid.count"); continue; }
          if (gk == "lo") slot = &c.constants_grid.lo;
          if (gk == "hi") slot = &c.constants_grid.hi;
        } else {
          if (gk == "count") { c.exponent_grid.count = require_number<std::size_t>(gv, "exponent_grid.count"); continue; }
          if (gk == "lo") slot = &c.exponent_grid.lo;
          if (gk == "hi") slot = &c.exponent_grid.hi;
        }
        if (!slot) throw std::invalid_argument("config." + key + "." + gk + ": unknown key");
        *slot = require_number<double>(gv, gk.c_str());
      }
    } else if (key == "master_seed") {
      c.master_seed = require_number<std::uint64_t>(value, "master_seed");
    } else if (key == "design_mode") {
      if (!value.is_string()) throw std::invalid_argument("config.design_mode: expected a string");
      c.design_mode = parse_design_mode(value.get<std::string>());
    } else if (key == "oracle_design") {
      if (!value.is_boolean()) throw std::invalid_argument("config.oracle_design: expected a boolean");
      c.oracle_design = value.get<bool>();
    } else if (key == "design_info") {
      if (!value.is_string()) throw std::invalid_argument("config.design_info: expected a string");
      c.design_info = parse_design_info(value.get<std::string>());
    } else if (key == "init_input") {
      c.init_input = require_number<double>(value, "init_input");
    } else if (key == "i0_override") {
      if (value.is_null())
        c.i0_override.reset();
      else
        c.i0_override = require_number<double>(value, "i0_override");
    } else if (key == "fig_trajectory_index") {
      c.fig_trajectory_index = require_number<std::size_t>(value, "fig_trajectory_index");
    } else if (key == "max_replicate_runs") {
      c.max_replicate_runs = require_number<std::size_t>(value, "max_replicate_runs");
    } else if (key == "brute_force_budget") {
      c.brute_force_budget = require_number<std::size_t>(value, "brute_force_budget");
    } else {
      throw std::invalid_argument("config." + key + ": unknown key");
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: " + std::string(e.what()));
  }
  return parse_config(root);
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["config_hash"] = manifest.config_hash;
  j["code_version"] = manifest.code_version;
  j["seed"] = manifest.seed;
  j["wall_time_seconds"] = manifest.wall_time_seconds;
  auto outs = nlohmann::ordered_json::array();
  for (const auto& [name, digest] : manifest.outputs)
    outs.push_back({{"path", name}, {"sha256", digest}});
  j["outputs"] = outs;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path.string());
  out << j.dump(2) << '\n';
}

void emit_file(RunManifest& manifest, const std::filesystem::path& dir,
               const std::string& name, const std::string& content) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_file: cannot open " + path.string());
  out << content;
  out.close();
  if (!out) throw std::runtime_error("emit_file: write failed for " + path.string());
  manifest.outputs.emplace_back(name, sha256_hex(content));
}

} // namespace exsched
