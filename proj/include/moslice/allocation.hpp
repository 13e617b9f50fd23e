#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace moslice {

// Bit l set means RB-l belongs to the slice set. Instances have at most 64 RBs.
using SliceMask = std::uint64_t;

inline std::vector<std::size_t> slices_in(SliceMask mask) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

// RB-to-MNO assignment. owner[l] is an MNO id or kUnassigned; storing one
// owner per RB makes C1 (at most one MNO per slice) hold structurally.
struct Matching {
  static constexpr int kUnassigned = -1;

  std::size_t num_mnos = 0;
  std::vector<int> owner;

  Matching() = default;
  Matching(std::size_t mnos, std::size_t slices)
      : num_mnos(mnos), owner(slices, kUnassigned) {}

  std::size_t num_slices() const { return owner.size(); }

  bool x(std::size_t l, std::size_t k) const { return owner.at(l) == static_cast<int>(k); }

  SliceMask slices_of(std::size_t k) const {
    SliceMask m = 0;
    for (std::size_t l = 0; l < owner.size(); ++l)
      if (owner[l] == static_cast<int>(k)) m |= SliceMask{1} << l;
    return m;
  }

  std::size_t count(std::size_t k) const {
    return static_cast<std::size_t>(std::popcount(slices_of(k)));
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

// C1 (owner range) and C2 (per-MNO capacity).
inline bool validate_matching(const Matching& m, std::span<const std::size_t> capacities) {
  if (capacities.size() != m.num_mnos || m.num_slices() > 64) return false;
  std::vector<std::size_t> held(m.num_mnos, 0);
  for (int o : m.owner) {
    if (o == Matching::kUnassigned) continue;
    if (o < 0 || static_cast<std::size_t>(o) >= m.num_mnos) return false;
    if (++held[static_cast<std::size_t>(o)] > capacities[static_cast<std::size_t>(o)])
      return false;
  }
  return true;
}

inline void require_valid(const Matching& m, std::span<const std::size_t> capacities) {
  if (!validate_matching(m, capacities))
    throw std::invalid_argument("matching violates the exclusivity or capacity constraints");
}

}  // namespace moslice
