#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace topicsim {

// Parsers for model output. All are total: any input yields a value or
// nullopt, never an exception.

// First integer token, accepted iff 0 <= value < n_options.
std::optional<std::size_t> parse_choice(std::string_view text, std::size_t n_options);

// First number token. "NN%" is a percentage; a bare number in [0, 1] is taken
// as a fraction; a bare number above 1 is read as a percentage. The result is
// clamped to [0, 1].
std::optional<double> parse_fraction(std::string_view text);

// First integer token divided by 100, clamped to [0, 1].
std::optional<double> parse_score_100(std::string_view text);

}  // namespace topicsim
