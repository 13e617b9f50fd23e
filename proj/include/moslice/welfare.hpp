#pragma once

// Social welfare of a matching and the per-MNO rate evaluators that feed it.
// MNO-k's rate depends only on MNO-k's own slice set, so every evaluator is
// a memoized function of (k, slice mask).

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "moslice/allocation.hpp"
#include "moslice/exact_rates.hpp"
#include "moslice/qlearning.hpp"
#include "moslice/radio.hpp"
#include "moslice/rng.hpp"
#include "moslice/scenario.hpp"

namespace moslice {

enum class PowerMode {
  qlearning,       // greedy Q-learning policy, retrained per slice set
  uniform,    // every SBS draws its level uniformly from the action space per transmission
  max_power,  // every SBS at the top action-space level
};

enum class WelfareReading {
  at_least_one,  // sum of rates of MNOs holding >= 1 slice
  per_slice,     // sum_l sum_k x_lk R_k: each MNO counted once per slice held
};

inline std::string_view to_string(PowerMode m) {
  switch (m) {
    case PowerMode::qlearning: return "qlearning";
    case PowerMode::uniform: return "uniform";
    case PowerMode::max_power: return "max_power";
  }
  return "?";
}

inline PowerMode parse_power_mode(std::string_view s) {
  if (s == "qlearning") return PowerMode::qlearning;
  if (s == "uniform") return PowerMode::uniform;
  if (s == "max_power") return PowerMode::max_power;
  throw std::invalid_argument("unknown power mode '" + std::string(s) + "'");
}

inline std::string_view to_string(WelfareReading r) {
  return r == WelfareReading::at_least_one ? "at_least_one" : "per_slice";
}

inline WelfareReading parse_welfare_reading(std::string_view s) {
  if (s == "at_least_one") return WelfareReading::at_least_one;
  if (s == "per_slice") return WelfareReading::per_slice;
  throw std::invalid_argument("unknown welfare reading '" + std::string(s) + "'");
}

template <class E>
concept MnoRateSource = requires(E& e, std::size_t k, SliceMask m) {
  { e.mno_rate(k, m) } -> std::convertible_to<double>;
};

// Memoizing wrapper around a rate function. Evaluating the same slice set
// twice returns the same value, which makes the welfare landscape a fixed
// function of the matching for a given seed.
class MnoRateCache {
 public:
  using RateFn = std::function<double(std::size_t k, SliceMask slices)>;

  explicit MnoRateCache(RateFn fn) : fn_(std::move(fn)) {}

  double mno_rate(std::size_t k, SliceMask slices) {
    if (slices == 0) return 0.0;
    const Key key{k, slices};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const double r = fn_(k, slices);
    cache_.emplace(key, r);
    return r;
  }

  std::size_t evaluations() const { return cache_.size(); }

 private:
  struct Key {
    std::size_t k;
    SliceMask mask;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept {
      return static_cast<std::size_t>(derive_seed(key.mask, {key.k}));
    }
  };

  RateFn fn_;
  std::unordered_map<Key, double, KeyHash> cache_;
};

inline PowerPolicy max_power_policy(const NetworkTopology& topo) {
  return PowerPolicy::constant(topo.num_sbs(), action_space(topo.config()).back());
}

inline PowerPolicy uniform_power_policy(const NetworkTopology& topo) {
  return PowerPolicy::uniform_random(topo.num_sbs(), action_space(topo.config()));
}

inline MnoRateCache exact_rate_source(const NetworkTopology& topo, PowerPolicy policy) {
  return MnoRateCache([&topo, policy = std::move(policy)](std::size_t k, SliceMask s) {
    return exact_expected_rates(topo, k, s, policy).total;
  });
}

// Each (k, slice set) gets its own RNG stream derived from `seed`.
inline MnoRateCache monte_carlo_rate_source(const NetworkTopology& topo, PowerPolicy policy,
                                            std::size_t draws, std::uint64_t seed) {
  return MnoRateCache(
      [&topo, policy = std::move(policy), draws, seed](std::size_t k, SliceMask s) {
        Rng rng = make_rng(seed, {0x6d63, k, s});
        return expected_rates(topo, k, s, policy, draws, rng).total.mean;
      });
}

// Retrains MNO-k's agents for the given slice set and reports the expected
// rate of the learned greedy policies.
inline MnoRateCache qlearning_rate_source(const NetworkTopology& topo, QLearningConfig cfg,
                                          std::uint64_t seed) {
  cfg.validate();
  return MnoRateCache([&topo, cfg, seed](std::size_t k, SliceMask s) {
    Matching m(topo.num_mnos(), topo.num_slices());
    for (std::size_t l : slices_in(s)) m.owner[l] = static_cast<int>(k);
    Rng rng = make_rng(seed, {0x716c, k, s});
    const std::size_t only[] = {k};
    return run_qlearning(m, topo, cfg, rng, only).rates.rate_per_mno[k];
  });
}

struct RateSourceOptions {
  PowerMode mode = PowerMode::qlearning;
  bool exact = false;             // exact enumeration instead of Monte Carlo
  std::size_t draws = 200;        // Monte Carlo draws per evaluation
  QLearningConfig qlearning{};
};

inline MnoRateCache make_rate_source(const NetworkTopology& topo, const RateSourceOptions& opt,
                                     std::uint64_t seed) {
  if (opt.mode == PowerMode::qlearning) {
    if (opt.exact)
      throw std::invalid_argument("exact rates are not defined for learned power policies");
    return qlearning_rate_source(topo, opt.qlearning, seed);
  }
  PowerPolicy policy =
      opt.mode == PowerMode::uniform ? uniform_power_policy(topo) : max_power_policy(topo);
  if (opt.exact) return exact_rate_source(topo, std::move(policy));
  return monte_carlo_rate_source(topo, std::move(policy), opt.draws, seed);
}

template <MnoRateSource Source>
double social_welfare(const Matching& m, Source& source,
                      WelfareReading reading = WelfareReading::at_least_one) {
  double total = 0.0;
  for (std::size_t k = 0; k < m.num_mnos; ++k) {
    const SliceMask s = m.slices_of(k);
    if (s == 0) continue;
    const double r = source.mno_rate(k, s);
    total += reading == WelfareReading::per_slice
                 ? static_cast<double>(std::popcount(s)) * r
                 : r;
  }
  return total;
}

// Checked form: the matching must satisfy C1/C2 under `capacities`.
template <MnoRateSource Source>
double social_welfare(const Matching& m, std::span<const std::size_t> capacities, Source& source,
                      WelfareReading reading = WelfareReading::at_least_one) {
  require_valid(m, capacities);
  return social_welfare(m, source, reading);
}

}  // namespace moslice
