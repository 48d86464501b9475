#include "melonet/score.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <numeric>

#include "melonet/errors.hpp"

namespace melonet {

namespace {

constexpr std::array<std::string_view, 12> kSharpNames = {"C",  "C#", "D",  "D#", "E",  "F",
                                                          "F#", "G",  "G#", "A",  "A#", "B"};

// Natural letters in semitones above C.
int natural_index(char letter) {
  switch (std::toupper(static_cast<unsigned char>(letter))) {
    case 'C': return 0;
    case 'D': return 2;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 7;
    case 'A': return 9;
    case 'B': return 11;
    default: return -1;
  }
}

int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

}  // namespace

PitchClass::PitchClass(int index) : index_(index) {
  if (index < 0 || index > 11) throw DomainError("pitch class index out of range");
}

std::string_view PitchClass::name() const noexcept { return kSharpNames[static_cast<std::size_t>(index_)]; }

std::optional<std::pair<PitchClass, int>> PitchClass::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const int natural = natural_index(text.front());
  if (natural < 0) return std::nullopt;
  int alter = 0;
  for (char c : text.substr(1)) {
    if (c == '#')
      ++alter;
    else if (c == 'b' || c == 'B')
      --alter;
    else
      return std::nullopt;
  }
  const int semis = natural + alter;
  return std::pair{PitchClass(semis - 12 * floor_div(semis, 12)), alter};
}

Pitch Pitch::from_step(int natural, int alter, int octave) {
  const int absolute = 12 * octave + natural + alter;
  const int oct = floor_div(absolute, 12);
  if (oct < 0 || oct > 9) throw DomainError("octave " + std::to_string(oct) + " outside 0..9");
  return Pitch{PitchClass(absolute - 12 * oct), oct};
}

std::string Pitch::to_string() const {
  return std::string(pitch_class.name()) + std::to_string(octave);
}

Duration::Duration(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw DomainError("duration must be positive");
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ > kMaxWholeNotes * den_) throw DomainError("duration " + to_string() + " exceeds 8 whole notes");
}

std::string Duration::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::optional<Duration> Duration::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto read = [](std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  std::int64_t num = 0, den = 0;
  if (!read(text.substr(0, slash), num) || !read(text.substr(slash + 1), den)) return std::nullopt;
  if (num <= 0 || den <= 0 || num > kMaxWholeNotes * den) return std::nullopt;
  return Duration(num, den);
}

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Note: return "note";
    case EventKind::Rest: return "rest";
    case EventKind::Chord: return "chord";
  }
  return "?";
}

MelodyEvent MelodyEvent::note(Pitch p, Duration d, std::size_t position) {
  return MelodyEvent{EventKind::Note, {p}, d, position};
}

MelodyEvent MelodyEvent::rest(Duration d, std::size_t position) {
  return MelodyEvent{EventKind::Rest, {}, d, position};
}

MelodyEvent MelodyEvent::chord(std::vector<Pitch> pitches, Duration d, std::size_t position) {
  std::sort(pitches.begin(), pitches.end());
  if (std::adjacent_find(pitches.begin(), pitches.end()) != pitches.end())
    throw DomainError("chord contains a duplicate pitch");
  if (pitches.size() < 2) throw DomainError("chord needs at least two pitches");
  return MelodyEvent{EventKind::Chord, std::move(pitches), d, position};
}

}  // namespace melonet
