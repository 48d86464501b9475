#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace fixtures {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("melonet-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// A seeded random melody in .mel form.
inline std::string random_mel(std::uint32_t seed, std::size_t length) {
  static const char* kPitches[] = {"C", "D", "E", "F", "G", "A", "B", "C#", "F#"};
  static const char* kDurations[] = {"1/4", "1/8", "1/8", "1/2", "3/8"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pitch(0, 8), octave(3, 5), dur(0, 4), rest(0, 11);
  std::string out;
  for (std::size_t i = 0; i < length; ++i) {
    if (rest(rng) == 0)
      out += std::string("rest ") + kDurations[dur(rng)] + "\n";
    else
      out += std::string("note ") + kPitches[pitch(rng)] + " " + std::to_string(octave(rng)) + " " + kDurations[dur(rng)] + "\n";
  }
  return out;
}

}  // namespace fixtures
