#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "melonet/ingest.hpp"

namespace fixtures {

inline std::filesystem::path dir() { return MELONET_FIXTURE_DIR; }

inline std::string read(const std::string& name) {
  std::ifstream in(dir() / name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline melonet::ParsedScore mel(const std::string& text) {
  std::istringstream in(text);
  return melonet::parse_mel_text(in);
}

inline melonet::ParsedScore musicxml(const std::string& text) {
  std::istringstream in(text);
  return melonet::parse_musicxml(in);
}

inline melonet::MelodyNetwork edges(const std::string& text) {
  std::istringstream in(text);
  return melonet::parse_edge_list(in, "edges");
}

inline melonet::MelodyNetwork example() {
  return melonet::build_network(mel(read("example.mel")).events, "example");
}

// Labels of the worked example as produced by example.mel.
inline const std::string kC = "C4:1/8";
inline const std::string kD = "D4:1/8";
inline const std::string kG8 = "G4:1/8";
inline const std::string kRest = "R:1/8";
inline const std::string kG4 = "G4:1/4";
inline const std::string kG2 = "G5:1/4";

}  // namespace fixtures
