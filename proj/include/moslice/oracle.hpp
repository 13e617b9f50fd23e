#pragma once

// Ground-truth baselines: exhaustive matching enumeration, swap-stability
// certification and the uniform power baseline.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "moslice/allocation.hpp"
#include "moslice/exact_rates.hpp"
#include "moslice/radio.hpp"
#include "moslice/welfare.hpp"

namespace moslice {

inline constexpr std::size_t kOracleMaxSlices = 8;
inline constexpr std::size_t kOracleMaxMnos = 3;

struct OracleResult {
  double optimal_welfare = 0.0;
  Matching optimal_matching;
  std::size_t num_enumerated = 0;  // matchings satisfying C1 and C2
};

// Walks all (K+1)^L ownership vectors, keeps those within capacity and
// returns the first one reaching the maximum welfare.
template <MnoRateSource Source>
OracleResult exhaustive_matching(std::size_t num_slices, std::span<const std::size_t> capacities,
                                 Source& source,
                                 WelfareReading reading = WelfareReading::at_least_one) {
  const std::size_t K = capacities.size();
  if (num_slices > kOracleMaxSlices || K > kOracleMaxMnos)
    throw std::length_error("exhaustive_matching: instance exceeds the enumeration bound");

  Matching m(K, num_slices);
  OracleResult res;
  bool have = false;
  const std::size_t base = K + 1;  // digit K means unassigned
  std::vector<std::size_t> digit(num_slices, K);
  std::size_t states = 1;
  for (std::size_t l = 0; l < num_slices; ++l) states *= base;

  for (std::size_t c = 0; c < states; ++c) {
    for (std::size_t l = 0; l < num_slices; ++l)
      m.owner[l] = digit[l] == K ? Matching::kUnassigned : static_cast<int>(digit[l]);
    if (validate_matching(m, capacities)) {
      ++res.num_enumerated;
      const double w = social_welfare(m, source, reading);
      if (!have || w > res.optimal_welfare) {
        res.optimal_welfare = w;
        res.optimal_matching = m;
        have = true;
      }
    }
    for (std::size_t l = 0; l < num_slices; ++l) {
      digit[l] = (digit[l] + 1) % base;
      if (digit[l] != K) break;  // carry once the digit wraps back to "unassigned"
    }
  }
  return res;
}

// Exact-rate oracle for a fixed power mode.
inline OracleResult exhaustive_matching(const NetworkTopology& topo,
                                        std::span<const std::size_t> capacities, PowerMode mode,
                                        WelfareReading reading = WelfareReading::at_least_one) {
  RateSourceOptions opt;
  opt.mode = mode;
  opt.exact = true;
  auto source = make_rate_source(topo, opt, 0);
  return exhaustive_matching(topo.num_slices(), capacities, source, reading);
}

struct StabilityReport {
  bool stable = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // improving RB pair
  double improvement = 0.0;
};

// Stable iff no exchange of two RBs' owners (the unassigned pool included)
// strictly raises welfare. Exchanges keep slice counts, so C2 is respected.
template <MnoRateSource Source>
StabilityReport check_swap_stability(const Matching& m, Source& source,
                                     WelfareReading reading = WelfareReading::at_least_one,
                                     double rel_tol = 1e-12) {
  const double base = social_welfare(m, source, reading);
  const double tol = rel_tol * std::max(1.0, std::abs(base));
  StabilityReport rep;
  Matching alt = m;
  for (std::size_t a = 0; a < m.num_slices(); ++a) {
    for (std::size_t b = a + 1; b < m.num_slices(); ++b) {
      if (m.owner[a] == m.owner[b]) continue;
      std::swap(alt.owner[a], alt.owner[b]);
      const double w = social_welfare(alt, source, reading);
      std::swap(alt.owner[a], alt.owner[b]);
      if (w - base > tol && w - base > rep.improvement) {
        rep.stable = false;
        rep.witness = {a, b};
        rep.improvement = w - base;
      }
    }
  }
  return rep;
}

// Every SBS draws its power level uniformly from the action space on every
// transmission, independently of the channel.
inline RateReport uniform_power_baseline(const Matching& m, const NetworkTopology& topo,
                                         std::size_t num_draws, Rng& rng) {
  return rate_report(m, uniform_power_policy(topo), topo, num_draws, rng);
}

}  // namespace moslice
