#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace topicsim {

// Seed for a named sub-stream. Stable across platforms and releases: only the
// label and the master seed matter, so adding a new stream never shifts an
// existing one.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

// mt19937_64 with hand-rolled conversions. The std distributions are
// implementation-defined, which would break byte-identical logs across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::string_view label) : engine_(derive_seed(master, label)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace topicsim
