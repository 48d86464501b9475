#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace melonet {

/// One of the twelve Western pitch classes, C = 0 ... B = 11. Names are
/// always spelled with sharps.
class PitchClass {
 public:
  constexpr PitchClass() = default;
  explicit PitchClass(int index);

  constexpr int index() const noexcept { return index_; }
  std::string_view name() const noexcept;

  /// Natural letter (case-insensitive) followed by any number of `#` or `b`
  /// accidentals. Returns the class and the semitone offset the accidentals
  /// applied, so callers can carry an octave wrap (Cb, B#).
  static std::optional<std::pair<PitchClass, int>> parse(std::string_view text);

  friend constexpr auto operator<=>(PitchClass, PitchClass) = default;

 private:
  int index_ = 0;
};

struct Pitch {
  PitchClass pitch_class;
  int octave = 4;

  /// Builds a pitch from a natural step, an alteration in semitones and an
  /// octave. The result is normalized, so `from_step(B, +1, 4)` is C5.
  /// Throws DomainError when the normalized octave leaves 0..9.
  static Pitch from_step(int natural_index, int alter, int octave);

  std::string to_string() const;  // "C#4"

  friend constexpr auto operator<=>(const Pitch& a, const Pitch& b) {
    if (auto c = a.octave <=> b.octave; c != 0) return c;
    return a.pitch_class <=> b.pitch_class;
  }
  friend constexpr bool operator==(const Pitch&, const Pitch&) = default;
};

/// Exact note length as a fraction of a whole note, kept in lowest terms.
class Duration {
 public:
  static constexpr std::int64_t kMaxWholeNotes = 8;

  /// Throws DomainError unless 0 < num/den <= 8.
  Duration(std::int64_t num, std::int64_t den);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;  // "3/8"

  /// Parses "NUM/DEN". Returns nullopt on malformed text or an out-of-range value.
  static std::optional<Duration> parse(std::string_view text);

  friend bool operator==(const Duration&, const Duration&) = default;
  friend std::strong_ordering operator<=>(const Duration& a, const Duration& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

enum class EventKind { Note, Rest, Chord };

std::string_view to_string(EventKind kind) noexcept;

/// One element of a melodic line: a single note, a rest, or a chord.
///
/// Pitches are empty for rests, exactly one for notes, and two or more for
/// chords, sorted ascending with no duplicates.
struct MelodyEvent {
  EventKind kind = EventKind::Rest;
  std::vector<Pitch> pitches;
  Duration duration{1, 4};
  std::size_t position = 0;

  static MelodyEvent note(Pitch p, Duration d, std::size_t position = 0);
  static MelodyEvent rest(Duration d, std::size_t position = 0);
  /// Sorts the pitches. Throws DomainError on duplicates or fewer than two.
  static MelodyEvent chord(std::vector<Pitch> pitches, Duration d, std::size_t position = 0);

  friend bool operator==(const MelodyEvent&, const MelodyEvent&) = default;
};

/// Events plus the non-fatal diagnostics produced while reading them.
struct ParsedScore {
  std::vector<MelodyEvent> events;
  std::vector<std::string> warnings;
};

}  // namespace melonet
