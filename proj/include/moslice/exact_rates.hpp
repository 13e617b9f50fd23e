#pragma once

// Exact slice-averaged rates by enumerating every joint RB choice of an
// MNO's SBSs. Used as ground truth for the Monte Carlo estimator; only
// feasible on small instances.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "moslice/allocation.hpp"
#include "moslice/radio.hpp"
#include "moslice/scenario.hpp"

namespace moslice {

inline constexpr std::size_t kMaxJointChoices = 1'000'000;

struct ExactMnoRates {
  std::vector<double> per_sbs;  // in topo.sbs_of(k) order
  double total = 0.0;
  std::size_t num_joint_choices = 0;
};

// Interference is confined to an MNO, so only MNO-k's own joint choices
// matter for its rates. A randomized policy multiplies each SBS's choice set
// by its power levels. State-dependent policies have no closed form here.
inline ExactMnoRates exact_expected_rates(const NetworkTopology& topo, std::size_t k,
                                          SliceMask slices, const PowerPolicy& policy) {
  if (policy.state_dependent())
    throw std::invalid_argument("exact_expected_rates: policy must not depend on QoS state");
  const auto& sbs = topo.sbs_of(k);
  const std::size_t n = sbs.size();
  ExactMnoRates out;
  out.per_sbs.assign(n, 0.0);
  const auto rbs = slices_in(slices);
  if (rbs.empty()) return out;

  const std::size_t levels = policy.randomized() ? policy.random_levels.size() : 1;
  const std::size_t per_sbs_choices = rbs.size() * levels;
  std::size_t joint = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (joint > kMaxJointChoices / per_sbs_choices)
      throw std::length_error("exact_expected_rates: too many joint RB choices to enumerate");
    joint *= per_sbs_choices;
  }

  std::vector<std::size_t> digit(n, 0), rb(n);
  std::vector<double> power(n), s(n);
  for (std::size_t c = 0; c < joint; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      rb[i] = rbs[digit[i] % rbs.size()];
      power[i] = policy.randomized() ? policy.random_levels[digit[i] / rbs.size()]
                                     : policy.power_by_state[sbs[i]][1];
    }
    detail::group_sinr(topo, sbs, rb, power, s);
    for (std::size_t i = 0; i < n; ++i) out.per_sbs[i] += rate_from_sinr(s[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (++digit[i] < per_sbs_choices) break;
      digit[i] = 0;
    }
  }
  for (double& r : out.per_sbs) {
    r /= static_cast<double>(joint);
    out.total += r;
  }
  out.num_joint_choices = joint;
  return out;
}

inline double exact_expected_rate(std::size_t f, const Matching& m, const PowerPolicy& policy,
                                  const NetworkTopology& topo) {
  const std::size_t k = topo.mno_of(f);
  const auto ex = exact_expected_rates(topo, k, m.slices_of(k), policy);
  const auto& sbs = topo.sbs_of(k);
  for (std::size_t i = 0; i < sbs.size(); ++i)
    if (sbs[i] == f) return ex.per_sbs[i];
  return 0.0;
}

}  // namespace moslice
