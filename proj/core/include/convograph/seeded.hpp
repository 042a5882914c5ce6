#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace convograph {

// std::shuffle and std::uniform_int_distribution are implementation-defined,
// so every seeded decision in the library goes through these helpers to keep
// outputs identical across standard libraries.

/// Uniform integer in [0, bound) by rejection sampling. bound must be > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void seeded_shuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace convograph
