#include "topicsim/parsing.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>

namespace topicsim {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Token {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Locates the first run of digits, extended by a leading '-' and (if
// allow_decimal) one fractional part.
std::optional<Token> first_number(std::string_view s, bool allow_decimal) {
  std::size_t i = 0;
  while (i < s.size() && !is_digit(s[i])) ++i;
  if (i == s.size()) return std::nullopt;
  Token t{i, i};
  if (i > 0 && s[i - 1] == '-') t.begin = i - 1;
  while (t.end < s.size() && is_digit(s[t.end])) ++t.end;
  if (allow_decimal && t.end + 1 < s.size() && s[t.end] == '.' && is_digit(s[t.end + 1])) {
    ++t.end;
    while (t.end < s.size() && is_digit(s[t.end])) ++t.end;
  }
  return t;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

std::optional<std::size_t> parse_choice(std::string_view text, std::size_t n_options) {
  const auto tok = first_number(text, false);
  if (!tok) return std::nullopt;
  std::int64_t value = 0;
  const char* first = text.data() + tok->begin;
  const char* last = text.data() + tok->end;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  if (value < 0 || static_cast<std::uint64_t>(value) >= n_options) return std::nullopt;
  return static_cast<std::size_t>(value);
}

std::optional<double> parse_fraction(std::string_view text) {
  const auto tok = first_number(text, true);
  if (!tok) return std::nullopt;
  double value = 0.0;
  const char* first = text.data() + tok->begin;
  const char* last = text.data() + tok->end;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ptr != last || (ec != std::errc() && ec != std::errc::result_out_of_range)) return std::nullopt;
  if (ec == std::errc::result_out_of_range) {
    // Overflow of the integer part, or underflow of a long zero fraction.
    const std::string_view digits = text.substr(tok->begin, tok->end - tok->begin);
    const auto dot = digits.find('.');
    const bool big = digits.substr(0, dot).find_first_of("123456789") != std::string_view::npos;
    value = big ? (digits.front() == '-' ? -1e300 : 1e300) : 0.0;
  }

  std::size_t j = tok->end;
  while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
  const bool percent = j < text.size() && text[j] == '%';
  if (percent || value > 1.0) value /= 100.0;
  return clamp01(value);
}

std::optional<double> parse_score_100(std::string_view text) {
  const auto tok = first_number(text, false);
  if (!tok) return std::nullopt;
  std::int64_t value = 0;
  const char* first = text.data() + tok->begin;
  const char* last = text.data() + tok->end;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ptr != last) return std::nullopt;
  if (ec == std::errc::result_out_of_range) return text[tok->begin] == '-' ? 0.0 : 1.0;
  if (ec != std::errc()) return std::nullopt;
  return clamp01(static_cast<double>(value) / 100.0);
}

}  // namespace topicsim
