#include "attractorlab/manifest.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace attractorlab {

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "attractorlab";
  j["version"] = version;
  j["command"] = command;
  j["parameters"] = parameters;
  j["precision"] = precision;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["wall_clock_seconds"] = wall_clock_seconds;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RunManifest m;
  m.version = j.at("version").get<std::string>();
  m.command = j.at("command").get<std::string>();
  m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  m.precision = j.at("precision").get<long>();
  m.inputs = j.at("inputs").get<std::vector<std::string>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  return m;
}

std::string RunManifest::stamp() const {
  std::string s = "attractorlab " + version + " " + command;
  if (precision > 0) s += " prec=" + std::to_string(precision);
  for (const auto& [k, v] : parameters) s += " " + k + "=" + v;
  for (const auto& in : inputs) s += " in=" + in;
  return s;
}

void write_manifest_sidecar(const std::string& path, const RunManifest& m) {
  const std::string out_path = path + ".manifest.json";
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << m.to_json();
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

}  // namespace attractorlab
