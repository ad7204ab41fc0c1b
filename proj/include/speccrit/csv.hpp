#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace speccrit::csv {

// Shortest text that parses back to the same double; "inf"/"-inf"/"nan"
// for non-finite values.
std::string format_double(double v);
double parse_double(std::string_view s);

std::vector<std::string> split(std::string_view line, char sep = ',');

template <typename... Ts>
std::string row(const Ts&... fields);

}  // namespace speccrit::csv

#include <sstream>

namespace speccrit::csv {

namespace detail {
inline void put(std::ostringstream& os, double v) { os << format_double(v); }
inline void put(std::ostringstream& os, const std::string& v) { os << v; }
inline void put(std::ostringstream& os, const char* v) { os << v; }
template <typename T>
void put(std::ostringstream& os, const T& v) {
  os << v;
}
}  // namespace detail

template <typename... Ts>
std::string row(const Ts&... fields) {
  std::ostringstream os;
  bool first = true;
  ((os << (first ? "" : ","), detail::put(os, fields), first = false), ...);
  return os.str();
}

}  // namespace speccrit::csv
