#include <array>
#include <charconv>
#include <cstdio>

#include "pgs/cli.hpp"

namespace pgs::cli {

std::string format_text(double x) {
  std::array<char, 32> buf;
  const int n = std::snprintf(buf.data(), buf.size(), "%.6g", x);
  std::string s(buf.data(), static_cast<std::size_t>(n));
  if (s == "-0") s = "0";
  return s;
}

std::string format_exact(double x) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

}  // namespace pgs::cli
