#include "melonet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "melonet/errors.hpp"

namespace melonet {

namespace {

// Whitespace tokens up to the first token that starts with '#'. A '#' inside
// a token is a sharp sign, not a comment.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

Duration mel_duration(std::string_view token, std::size_t line) {
  auto d = Duration::parse(token);
  if (!d) throw ParseError("invalid duration '" + std::string(token) + "' (expected NUM/DEN, 0 < value <= 8)", line);
  return *d;
}

Pitch mel_pitch(std::string_view name, std::string_view octave_text, std::size_t line) {
  auto pc = PitchClass::parse(name);
  if (!pc) throw ParseError("unknown pitch '" + std::string(name) + "'", line);
  int octave = -1;
  auto [ptr, ec] = std::from_chars(octave_text.data(), octave_text.data() + octave_text.size(), octave);
  if (ec != std::errc{} || ptr != octave_text.data() + octave_text.size() || octave < 0 || octave > 9)
    throw ParseError("invalid octave '" + std::string(octave_text) + "'", line);
  const int natural = pc->first.index() - pc->second;
  try {
    return Pitch::from_step(natural, pc->second, octave);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

ParsedScore parse_mel_text(std::istream& in) {
  ParsedScore out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const auto keyword = lower(tokens[0]);
    const std::size_t position = out.events.size();
    if (keyword == "note") {
      if (tokens.size() != 4) throw ParseError("expected 'note <PITCH> <OCTAVE> <NUM>/<DEN>'", line_no);
      out.events.push_back(
          MelodyEvent::note(mel_pitch(tokens[1], tokens[2], line_no), mel_duration(tokens[3], line_no), position));
    } else if (keyword == "rest") {
      if (tokens.size() != 2) throw ParseError("expected 'rest <NUM>/<DEN>'", line_no);
      out.events.push_back(MelodyEvent::rest(mel_duration(tokens[1], line_no), position));
    } else if (keyword == "chord") {
      if (tokens.size() != 3) throw ParseError("expected 'chord <PITCH>/<OCT>,... <NUM>/<DEN>'", line_no);
      std::vector<Pitch> pitches;
      std::string_view list = tokens[1];
      while (!list.empty()) {
        const auto comma = list.find(',');
        const auto item = list.substr(0, comma);
        const auto slash = item.find('/');
        if (slash == std::string_view::npos) throw ParseError("chord pitch '" + std::string(item) + "' lacks '/<OCT>'", line_no);
        pitches.push_back(mel_pitch(item.substr(0, slash), item.substr(slash + 1), line_no));
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
      }
      try {
        out.events.push_back(MelodyEvent::chord(std::move(pitches), mel_duration(tokens[2], line_no), position));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), line_no);
      }
    } else {
      throw ParseError("unknown event keyword '" + std::string(tokens[0]) + "'", line_no);
    }
  }
  return out;
}

std::string serialize_mel(std::span<const MelodyEvent> events) {
  std::ostringstream out;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::Note:
        out << "note " << e.pitches.front().pitch_class.name() << ' ' << e.pitches.front().octave;
        break;
      case EventKind::Rest:
        out << "rest";
        break;
      case EventKind::Chord:
        out << "chord ";
        for (std::size_t i = 0; i < e.pitches.size(); ++i) {
          if (i != 0) out << ',';
          out << e.pitches[i].pitch_class.name() << '/' << e.pitches[i].octave;
        }
        break;
    }
    out << ' ' << e.duration.to_string() << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// MusicXML
// ---------------------------------------------------------------------------

namespace {

namespace pt = boost::property_tree;

// Note value of a <type> name in whole notes: {numerator, denominator}.
std::optional<std::pair<int, int>> type_fraction(const std::string& type) {
  static const std::pair<const char*, std::pair<int, int>> kTypes[] = {
      {"maxima", {8, 1}}, {"long", {4, 1}},   {"breve", {2, 1}},  {"whole", {1, 1}},
      {"half", {1, 2}},   {"quarter", {1, 4}}, {"eighth", {1, 8}}, {"16th", {1, 16}},
      {"32nd", {1, 32}},  {"64th", {1, 64}},  {"128th", {1, 128}}};
  for (const auto& [name, frac] : kTypes) {
    if (type == name) return frac;
  }
  return std::nullopt;
}

int parse_int(const std::string& text, const char* what) {
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  trimmed.erase(trimmed.find_last_not_of(" \t\r\n") + 1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size())
    throw ParseError(std::string("non-integer <") + what + "> value '" + text + "'");
  return value;
}

Duration note_duration(const pt::ptree& note, std::optional<int> divisions) {
  std::int64_t num = 0;
  std::int64_t den = 1;
  if (auto type = note.get_optional<std::string>("type")) {
    auto frac = type_fraction(*type);
    if (!frac) throw ParseError("unsupported <type> value '" + *type + "'");
    num = frac->first;
    den = frac->second;
    const auto dots = static_cast<int>(note.count("dot"));
    // Each dot adds half of the previous increment: d * (2^(k+1) - 1) / 2^k.
    num *= (std::int64_t{1} << (dots + 1)) - 1;
    den <<= dots;
  } else if (auto ticks = note.get_optional<std::string>("duration"); ticks && divisions) {
    num = parse_int(*ticks, "duration");
    den = std::int64_t{4} * *divisions;
  } else {
    throw ParseError("note has neither <type> nor a usable <duration>");
  }
  if (auto tm = note.get_child_optional("time-modification")) {
    num *= parse_int(tm->get<std::string>("normal-notes", "1"), "normal-notes");
    den *= parse_int(tm->get<std::string>("actual-notes", "1"), "actual-notes");
  }
  try {
    return Duration(num, den);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Pitch note_pitch(const pt::ptree& pitch) {
  const auto step = pitch.get<std::string>("step", "");
  const auto natural = step.size() == 1 ? PitchClass::parse(step) : std::nullopt;
  if (!natural) throw ParseError("invalid <step> '" + step + "'");
  const auto alter_text = pitch.get<std::string>("alter", "0");
  double alter = 0.0;
  try {
    alter = std::stod(alter_text);
  } catch (const std::exception&) {
    throw ParseError("invalid <alter> '" + alter_text + "'");
  }
  if (alter != std::round(alter)) throw ParseError("microtonal <alter> '" + alter_text + "' not supported");
  const int octave = parse_int(pitch.get<std::string>("octave", ""), "octave");
  try {
    return Pitch::from_step(natural->first.index(), static_cast<int>(alter), octave);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

ParsedScore parse_musicxml(std::istream& in) {
  pt::ptree doc;
  try {
    pt::read_xml(in, doc, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("XML: " + e.message(), e.line());
  }
  auto root = doc.get_child_optional("score-partwise");
  if (!root) throw ParseError("not a score-partwise MusicXML document");

  ParsedScore out;
  const pt::ptree* part = nullptr;
  std::size_t parts = 0;
  for (const auto& [tag, child] : *root) {
    if (tag != "part") continue;
    if (parts++ == 0) part = &child;
  }
  if (!part) throw ParseError("document has no <part>");
  if (parts > 1) out.warnings.push_back(std::to_string(parts) + " parts found; only the first is read");

  std::optional<int> divisions;
  bool warned_backup = false;
  std::size_t measure_no = 0;
  for (const auto& [mtag, measure] : *part) {
    if (mtag != "measure") continue;
    ++measure_no;
    for (const auto& [tag, node] : measure) {
      if (tag == "attributes") {
        if (auto d = node.get_optional<std::string>("divisions")) divisions = parse_int(*d, "divisions");
        continue;
      }
      if (tag == "backup" && !warned_backup) {
        out.warnings.push_back("measure " + std::to_string(measure_no) + ": <backup> found; voices are read in document order");
        warned_backup = true;
      }
      if (tag != "note") continue;
      const auto where = "measure " + std::to_string(measure_no) + ": ";
      if (node.count("grace") || node.count("cue")) {
        out.warnings.push_back(where + "grace/cue note skipped");
        continue;
      }
      Duration duration = [&] {
        try {
          return note_duration(node, divisions);
        } catch (const ParseError& e) {
          throw ParseError(where + e.what());
        }
      }();
      const bool is_chord_member = node.count("chord") > 0;
      if (node.count("rest")) {
        if (is_chord_member) throw ParseError(where + "rest marked as <chord/> member");
        out.events.push_back(MelodyEvent::rest(duration, out.events.size()));
        continue;
      }
      auto pitch_node = node.get_child_optional("pitch");
      if (!pitch_node) throw ParseError(where + "note without <pitch>");
      const Pitch pitch = [&] {
        try {
          return note_pitch(*pitch_node);
        } catch (const ParseError& e) {
          throw ParseError(where + e.what());
        }
      }();
      if (!is_chord_member) {
        out.events.push_back(MelodyEvent::note(pitch, duration, out.events.size()));
        continue;
      }
      if (out.events.empty() || out.events.back().kind == EventKind::Rest)
        throw ParseError(where + "<chord/> note has no preceding note");
      auto& prev = out.events.back();
      if (prev.duration != duration)
        throw ParseError(where + "chord notes with differing durations " + prev.duration.to_string() + " and " +
                         duration.to_string());
      if (std::find(prev.pitches.begin(), prev.pitches.end(), pitch) != prev.pitches.end()) {
        out.warnings.push_back(where + "duplicate chord pitch " + pitch.to_string() + " dropped");
        continue;
      }
      auto pitches = prev.pitches;
      pitches.push_back(pitch);
      prev = MelodyEvent::chord(std::move(pitches), duration, prev.position);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge list
// ---------------------------------------------------------------------------

MelodyNetwork parse_edge_list(std::istream& in, std::string name) {
  MelodyNetwork net(std::move(name), true);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const auto tokens = tokenize(std::string_view(raw).substr(0, hash));
    if (tokens.empty()) continue;
    if (tokens.size() != 3) throw ParseError("expected 'source target weight'", line_no);
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), w);
    if (ec != std::errc{} || ptr != tokens[2].data() + tokens[2].size())
      throw ParseError("non-numeric weight '" + std::string(tokens[2]) + "'", line_no);
    if (!(w > 0.0) || !std::isfinite(w))
      throw ParseError("weight must be positive, got '" + std::string(tokens[2]) + "'", line_no);
    const NodeId u = net.add_node(std::string(tokens[0]));
    const NodeId v = net.add_node(std::string(tokens[1]));
    net.add_edge(u, v, w);
  }
  return net;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

std::optional<InputFormat> detect_format(const std::filesystem::path& path) {
  const auto ext = lower(path.extension().string());
  if (ext == ".mel") return InputFormat::Mel;
  if (ext == ".xml" || ext == ".musicxml") return InputFormat::MusicXml;
  if (ext == ".edges" || ext == ".el") return InputFormat::EdgeList;
  return std::nullopt;
}

LoadedNetwork load_network(const std::filesystem::path& path, std::optional<InputFormat> format) {
  if (!format) format = detect_format(path);
  if (!format) throw ParseError("unrecognized input extension '" + path.extension().string() + "' for " + path.string());
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const auto name = path.stem().string();
  if (*format == InputFormat::EdgeList) return {parse_edge_list(in, name), {}};
  auto score = *format == InputFormat::Mel ? parse_mel_text(in) : parse_musicxml(in);
  return {build_network(score.events, name), std::move(score.warnings)};
}

}  // namespace melonet
