#pragma once

// JSON form of RunConfig and the run manifest written next to every CSV.
// nlohmann::json stores doubles with round-trip precision, so a config read
// back from a manifest reproduces the original run exactly.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sweep.hpp"

namespace spinbell {

inline nlohmann::json grid_to_json(const Grid& g) { return {{"min", g.min}, {"max", g.max}, {"steps", g.steps}}; }

inline Grid grid_from_json(const nlohmann::json& j) {
  return {j.at("min").get<double>(), j.at("max").get<double>(), j.at("steps").get<int>()};
}

inline nlohmann::json config_to_json(const RunConfig& c) {
  return {{"command", c.command}, {"L", c.L},         {"gamma", c.gamma},   {"h", grid_to_json(c.h)},
          {"T", grid_to_json(c.T)}, {"alpha", grid_to_json(c.alpha)},     {"h_cut", c.h_cut},
          {"T_cut", c.T_cut},     {"kind", c.kind},   {"dist", c.dist},     {"V", c.V},
          {"samples", c.samples}, {"seed", c.seed},   {"threads", c.threads}, {"out", c.out},
          {"suite", c.suite},     {"tol_scale", c.tol_scale}};
}

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.L = j.at("L").get<std::vector<int>>();
  c.gamma = j.at("gamma").get<std::vector<double>>();
  c.h = grid_from_json(j.at("h"));
  c.T = grid_from_json(j.at("T"));
  c.alpha = grid_from_json(j.at("alpha"));
  c.h_cut = j.at("h_cut").get<double>();
  c.T_cut = j.at("T_cut").get<double>();
  c.kind = j.at("kind").get<std::vector<std::string>>();
  c.dist = j.at("dist").get<std::vector<std::string>>();
  c.V = j.at("V").get<std::vector<double>>();
  c.samples = j.at("samples").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<unsigned>();
  c.out = j.at("out").get<std::string>();
  c.suite = j.value("suite", std::string("all"));
  c.tol_scale = j.value("tol_scale", 1.0);
  return c;
}

inline std::string csv_name(const std::string& command) { return command + ".csv"; }

inline nlohmann::json make_manifest(const RunConfig& c) {
  return {{"command", c.command},          {"config", config_to_json(c)},   {"seed", c.seed},
          {"schema_version", kSchemaVersion}, {"tool_version", kToolVersion}, {"output", csv_name(c.command)}};
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
}

/// Config stored in a manifest. Rejects manifests from a newer schema.
inline RunConfig config_from_manifest(const nlohmann::json& m) {
  const int schema = m.at("schema_version").get<int>();
  if (schema > kSchemaVersion)
    throw std::runtime_error("manifest schema " + std::to_string(schema) + " is newer than this tool (" +
                             std::to_string(kSchemaVersion) + ")");
  return config_from_json(m.at("config"));
}

}  // namespace spinbell
