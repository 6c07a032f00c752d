#ifndef SCHOLNET_CSV_HPP_
#define SCHOLNET_CSV_HPP_

#include <cstdio>
#include <string>
#include <string_view>

namespace scholnet {

// Formats a real with 12 significant digits so that emitted files are
// byte-comparable across runs.
inline std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return std::string(buf);
}

// Quotes a CSV field when it contains a delimiter, quote or newline.
// Ids are opaque UTF-8 strings, so this cannot be skipped.
inline std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace scholnet

#endif  // SCHOLNET_CSV_HPP_
