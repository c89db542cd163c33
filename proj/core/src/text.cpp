#include "mgal/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "mgal/error.hpp"

namespace mgal::text {

std::string format_exact(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw NumericError("cannot format value");
  return std::string(buf, end);
}

std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

double parse_double(std::string_view token, std::string_view what) {
  token = trim(token);
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ValidationError("cannot parse '" + std::string(token) + "' as a number (" +
                          std::string(what) + ")");
  }
  return value;
}

std::size_t parse_index(std::string_view token, std::string_view what) {
  token = trim(token);
  std::size_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ValidationError("cannot parse '" + std::string(token) +
                          "' as a non-negative integer (" + std::string(what) + ")");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find_first_of(delims, pos);
    const auto end = next == std::string_view::npos ? s.size() : next;
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace mgal::text
