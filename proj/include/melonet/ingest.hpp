#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "melonet/network.hpp"
#include "melonet/score.hpp"

namespace melonet {

/// Reads the line-oriented `.mel` format:
///
///     note <PITCH> <OCTAVE> <NUM>/<DEN>
///     rest <NUM>/<DEN>
///     chord <PITCH>/<OCT>[,<PITCH>/<OCT>...] <NUM>/<DEN>
///
/// `#` starts a comment, blank lines are skipped, keywords and pitch names
/// are case-insensitive. Errors carry the 1-based line number.
ParsedScore parse_mel_text(std::istream& in);

/// Writes events back in `.mel` form, sharps only, one event per line.
std::string serialize_mel(std::span<const MelodyEvent> events);

/// Reads the first part of a score-partwise MusicXML document.
///
/// Notes tagged `<chord/>` merge into the preceding event. Grace and cue
/// notes are skipped with a warning; ties are not merged.
ParsedScore parse_musicxml(std::istream& in);

/// Reads whitespace-separated `source target weight` triples. Repeated
/// pairs accumulate. The returned network has no stored sequence.
MelodyNetwork parse_edge_list(std::istream& in, std::string name = {});

/// Network read from a score or edge-list file.
struct LoadedNetwork {
  MelodyNetwork network;
  std::vector<std::string> warnings;
};

enum class InputFormat { Mel, MusicXml, EdgeList };

/// By extension: .mel, .xml/.musicxml, .edges/.el. Nullopt otherwise.
std::optional<InputFormat> detect_format(const std::filesystem::path& path);

/// Parses `path` and builds its network, named after the file stem.
/// Throws ParseError, DomainError, or std::runtime_error when unreadable.
LoadedNetwork load_network(const std::filesystem::path& path, std::optional<InputFormat> format = std::nullopt);

}  // namespace melonet
