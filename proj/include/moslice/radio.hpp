#pragma once

// SINR and downlink rates. Slices are exclusive per MNO, so a UE only sees
// interference from SBSs of its own MNO that picked the same RB.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "moslice/allocation.hpp"
#include "moslice/rng.hpp"
#include "moslice/scenario.hpp"

namespace moslice {

// Instantaneous transmit state of every SBS. rb_choice is -1 for an SBS
// whose MNO holds no slice.
struct PowerAssignment {
  static constexpr int kIdle = -1;
  std::vector<double> power;  // mW
  std::vector<int> rb_choice;

  explicit PowerAssignment(std::size_t num_sbs = 0)
      : power(num_sbs, 0.0), rb_choice(num_sbs, kIdle) {}
};

struct RateReport {
  std::vector<double> rate_per_sbs;  // bits/s/Hz
  std::vector<double> rate_per_mno;
};

struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// State 0 means the SBS's QoS was violated on the previous draw, state 1 that
// it was met. A policy maps each SBS's state to a transmit power; a
// randomized policy instead draws a level uniformly on every transmission.
struct PowerPolicy {
  std::vector<std::array<double, 2>> power_by_state;  // mW, indexed by global SBS id
  std::vector<double> random_levels;

  static PowerPolicy constant(std::size_t num_sbs, double power_mw) {
    PowerPolicy p;
    p.power_by_state.assign(num_sbs, {power_mw, power_mw});
    return p;
  }

  static PowerPolicy uniform_random(std::size_t num_sbs, std::vector<double> levels) {
    if (levels.empty()) throw std::invalid_argument("uniform_random: no power levels");
    PowerPolicy p;
    p.power_by_state.assign(num_sbs, {0.0, 0.0});
    p.random_levels = std::move(levels);
    return p;
  }

  bool randomized() const { return !random_levels.empty(); }
  bool state_dependent() const {
    if (randomized()) return false;
    for (const auto& ps : power_by_state)
      if (ps[0] != ps[1]) return true;
    return false;
  }

  double power(std::size_t f, int state, Rng& rng) const {
    if (randomized()) {
      std::uniform_int_distribution<std::size_t> pick(0, random_levels.size() - 1);
      return random_levels[pick(rng)];
    }
    return power_by_state.at(f)[state != 0 ? 1 : 0];
  }
};

inline double sinr(std::size_t f, const PowerAssignment& pa, const NetworkTopology& topo) {
  const int rb = pa.rb_choice.at(f);
  const double p = pa.power.at(f);
  if (rb == PowerAssignment::kIdle || p <= 0.0) return 0.0;
  const auto l = static_cast<std::size_t>(rb);
  double interference = 0.0;
  for (std::size_t other : topo.sbs_of(topo.mno_of(f))) {
    if (other == f || pa.rb_choice[other] != rb) continue;
    interference += topo.gain(other, f, l) * pa.power[other];
  }
  return topo.gain(f, f, l) * p / (interference + topo.noise_mw());
}

// Checked variant: the RB used by SBS-f must belong to its MNO's slice set.
inline double sinr(std::size_t f, const PowerAssignment& pa, const NetworkTopology& topo,
                   const Matching& m) {
  const int rb = pa.rb_choice.at(f);
  if (rb != PowerAssignment::kIdle &&
      !m.x(static_cast<std::size_t>(rb), topo.mno_of(f)))
    throw std::invalid_argument("sinr: RB is not in the slice set of the SBS's MNO");
  return sinr(f, pa, topo);
}

inline double rate_from_sinr(double s) { return std::log2(1.0 + s); }

inline double rate_fixed(std::size_t f, const PowerAssignment& pa, const NetworkTopology& topo) {
  return rate_from_sinr(sinr(f, pa, topo));
}

inline double rate_fixed(std::size_t f, const PowerAssignment& pa, const NetworkTopology& topo,
                         const Matching& m) {
  return rate_from_sinr(sinr(f, pa, topo, m));
}

namespace detail {

// SINR for a group of co-MNO SBSs given their local RB choices and powers.
inline void group_sinr(const NetworkTopology& topo, std::span<const std::size_t> sbs,
                       std::span<const std::size_t> rb, std::span<const double> power,
                       std::span<double> out) {
  const double noise = topo.noise_mw();
  for (std::size_t i = 0; i < sbs.size(); ++i) {
    if (power[i] <= 0.0) {
      out[i] = 0.0;
      continue;
    }
    double interference = 0.0;
    for (std::size_t j = 0; j < sbs.size(); ++j) {
      if (j == i || rb[j] != rb[i]) continue;
      interference += topo.gain(sbs[j], sbs[i], rb[i]) * power[j];
    }
    out[i] = topo.gain(sbs[i], sbs[i], rb[i]) * power[i] / (interference + noise);
  }
}

}  // namespace detail

struct MnoRateEstimate {
  std::vector<RateEstimate> per_sbs;  // in topo.sbs_of(k) order
  RateEstimate total;
};

// Monte Carlo estimate of the slice-averaged rate of every SBS of MNO-k:
// on each draw all SBSs independently pick an RB uniformly from `slices`, and
// the rates are evaluated jointly. State-dependent policies carry each SBS's
// QoS state from one draw to the next, starting from `initial_states`
// (default: all satisfied).
inline MnoRateEstimate expected_rates(const NetworkTopology& topo, std::size_t k,
                                      SliceMask slices, const PowerPolicy& policy,
                                      std::size_t num_draws, Rng& rng,
                                      std::span<const int> initial_states = {}) {
  const auto& sbs = topo.sbs_of(k);
  const std::size_t n = sbs.size();
  MnoRateEstimate est;
  est.per_sbs.assign(n, {});
  const auto rbs = slices_in(slices);
  if (rbs.empty() || num_draws == 0) return est;

  const double th = topo.config().sinr_threshold();
  std::vector<int> state(n, 1);
  if (!initial_states.empty()) state.assign(initial_states.begin(), initial_states.end());

  std::vector<std::size_t> rb(n);
  std::vector<double> power(n), s(n), sum(n, 0.0), sum_sq(n, 0.0);
  double tot = 0.0, tot_sq = 0.0;
  std::uniform_int_distribution<std::size_t> pick(0, rbs.size() - 1);

  for (std::size_t d = 0; d < num_draws; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      rb[i] = rbs[pick(rng)];
      power[i] = policy.power(sbs[i], state[i], rng);
    }
    detail::group_sinr(topo, sbs, rb, power, s);
    double draw_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = rate_from_sinr(s[i]);
      sum[i] += r;
      sum_sq[i] += r * r;
      draw_total += r;
      state[i] = s[i] >= th ? 1 : 0;
    }
    tot += draw_total;
    tot_sq += draw_total * draw_total;
  }

  const auto dn = static_cast<double>(num_draws);
  auto finish = [dn](double s1, double s2) {
    RateEstimate e;
    e.mean = s1 / dn;
    if (dn > 1.0) {
      const double var = std::max(0.0, (s2 - s1 * s1 / dn) / (dn - 1.0));
      e.std_error = std::sqrt(var / dn);
    }
    return e;
  };
  for (std::size_t i = 0; i < n; ++i) est.per_sbs[i] = finish(sum[i], sum_sq[i]);
  est.total = finish(tot, tot_sq);
  return est;
}

inline RateEstimate rate_expected(std::size_t f, const Matching& m, const PowerPolicy& policy,
                                  const NetworkTopology& topo, std::size_t num_draws, Rng& rng) {
  const std::size_t k = topo.mno_of(f);
  const auto est = expected_rates(topo, k, m.slices_of(k), policy, num_draws, rng);
  const auto& sbs = topo.sbs_of(k);
  for (std::size_t i = 0; i < sbs.size(); ++i)
    if (sbs[i] == f) return est.per_sbs[i];
  return {};
}

inline double mno_rate(std::size_t k, const Matching& m, const PowerPolicy& policy,
                       const NetworkTopology& topo, std::size_t num_draws, Rng& rng) {
  return expected_rates(topo, k, m.slices_of(k), policy, num_draws, rng).total.mean;
}

inline RateReport rate_report(const Matching& m, const PowerPolicy& policy,
                              const NetworkTopology& topo, std::size_t num_draws, Rng& rng) {
  RateReport rep;
  rep.rate_per_sbs.assign(topo.num_sbs(), 0.0);
  rep.rate_per_mno.assign(topo.num_mnos(), 0.0);
  for (std::size_t k = 0; k < topo.num_mnos(); ++k) {
    const auto est = expected_rates(topo, k, m.slices_of(k), policy, num_draws, rng);
    const auto& sbs = topo.sbs_of(k);
    for (std::size_t i = 0; i < sbs.size(); ++i) {
      rep.rate_per_sbs[sbs[i]] = est.per_sbs[i].mean;
      rep.rate_per_mno[k] += est.per_sbs[i].mean;
    }
  }
  return rep;
}

}  // namespace moslice
