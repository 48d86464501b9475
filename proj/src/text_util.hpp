#pragma once

#include <locale>
#include <sstream>
#include <string>

namespace melonet::detail {

/// Shortest round-trip text of a double in the C locale.
inline std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

/// RFC 4180 quoting, applied only when the field needs it.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace melonet::detail
