#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace moslice {

using Rng = std::mt19937_64;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Counter-based stream derivation: the same (base, keys...) always yields the
// same seed, and distinct key tuples give statistically independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = detail::splitmix64(base);
  for (std::uint64_t k : keys) {
    h = detail::splitmix64(h ^ detail::splitmix64(k + 0x632be59bd9b4e019ULL));
  }
  return h;
}

inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> keys = {}) {
  return Rng{derive_seed(base, keys)};
}

}  // namespace moslice
