// Provenance record written next to every output file.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace attractorlab {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  long precision = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0;
  std::string version = kToolVersion;

  // Pretty-printed JSON with every field.
  std::string to_json() const;
  static RunManifest from_json(const std::string& text);

  // One line without timing data, identical across re-runs with the same
  // command and parameters. Used as the CSV comment and the SVG XML comment.
  std::string stamp() const;
};

// Writes `<path>.manifest.json`.
void write_manifest_sidecar(const std::string& path, const RunManifest& m);

}  // namespace attractorlab
