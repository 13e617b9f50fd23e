#pragma once

// MCMC swap search over RB-to-MNO matchings maximizing social welfare.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "moslice/allocation.hpp"
#include "moslice/rng.hpp"
#include "moslice/welfare.hpp"

namespace moslice {

struct MatchingConfig {
  std::size_t iterations = 2500;
  double temperature = 100.0;  // T_b
  PowerMode power_mode = PowerMode::qlearning;
  WelfareReading reading = WelfareReading::at_least_one;
  // Also accept when the current welfare beats the previous proposal's,
  // on top of the sigmoid draw.
  bool literal_acceptance = false;
  // Share of proposals that move a single RB to another owner (or to the
  // unassigned pool) instead of exchanging two RBs' owners. Exchanges alone
  // preserve every MNO's slice count.
  double reassign_probability = 0.5;
  // Restart from a fresh random matching after this many iterations without
  // an uphill step (0 disables); the best-so-far record survives restarts.
  std::size_t restart_after = 300;
  std::size_t rate_draws = 200;
  bool exact_rates = false;

  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("matching: " + what); };
    if (iterations < 1) fail("iterations must be >= 1");
    if (!(temperature > 0.0)) fail("temperature must be positive");
    if (!(reassign_probability >= 0.0 && reassign_probability <= 1.0))
      fail("reassign_probability must lie in [0, 1]");
  }
};

struct TraceRow {
  std::size_t iteration = 0;
  double welfare = 0.0;       // welfare of the chain's state after this step
  double best_welfare = 0.0;  // best seen so far
  bool accepted = false;
};

using WelfareTrace = std::vector<TraceRow>;

struct McmcResult {
  Matching best;
  double best_welfare = 0.0;
  double initial_welfare = 0.0;
  Matching final_state;
  WelfareTrace trace;
};

// Logistic acceptance 1 / (1 + exp(-t_b (s_new - s_old))).
inline double swap_probability(double s_new, double s_old, double t_b) {
  const double x = t_b * (s_new - s_old);
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct SwapProposal {
  Matching next;
  std::size_t l1 = 0, l2 = 0;
  int k1 = Matching::kUnassigned, k2 = Matching::kUnassigned;  // owners before the swap
};

// Picks two distinct RBs uniformly and exchanges their owners (the
// unassigned pool counts as an owner). Slice counts are preserved, so the
// result satisfies C2 whenever the input does.
inline SwapProposal propose_swap(const Matching& m, Rng& rng) {
  const std::size_t L = m.num_slices();
  if (L < 2) throw std::invalid_argument("propose_swap: need at least two RBs");
  SwapProposal p;
  p.l1 = std::uniform_int_distribution<std::size_t>(0, L - 1)(rng);
  p.l2 = std::uniform_int_distribution<std::size_t>(0, L - 2)(rng);
  if (p.l2 >= p.l1) ++p.l2;
  p.k1 = m.owner[p.l1];
  p.k2 = m.owner[p.l2];
  p.next = m;
  std::swap(p.next.owner[p.l1], p.next.owner[p.l2]);
  return p;
}

// Moves one RB to a different owner chosen uniformly among the remaining
// K MNOs and the unassigned pool. Returns nullopt when the target MNO is
// already at capacity.
inline std::optional<SwapProposal> propose_reassign(const Matching& m,
                                                    std::span<const std::size_t> capacities,
                                                    Rng& rng) {
  SwapProposal p;
  p.l1 = p.l2 = std::uniform_int_distribution<std::size_t>(0, m.num_slices() - 1)(rng);
  p.k1 = m.owner[p.l1];
  // Owners encoded as 0..K with K meaning unassigned; skip the current one.
  const auto K = static_cast<int>(m.num_mnos);
  const int current = p.k1 == Matching::kUnassigned ? K : p.k1;
  int pick = std::uniform_int_distribution<int>(0, K - 1)(rng);
  if (pick >= current) ++pick;
  p.k2 = pick == K ? Matching::kUnassigned : pick;
  if (p.k2 != Matching::kUnassigned &&
      m.count(static_cast<std::size_t>(p.k2)) >= capacities[static_cast<std::size_t>(p.k2)])
    return std::nullopt;
  p.next = m;
  p.next.owner[p.l1] = p.k2;
  return p;
}

// Random feasible start: RBs are shuffled and each MNO in turn takes
// min(c_k, ceil(L/K)) of them while any remain.
inline Matching initial_matching(std::size_t num_slices, std::span<const std::size_t> capacities,
                                 Rng& rng) {
  const std::size_t K = capacities.size();
  Matching m(K, num_slices);
  std::vector<std::size_t> order(num_slices);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t share = (num_slices + K - 1) / K;
  std::size_t next = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t take = std::min({capacities[k], share, num_slices - next});
    for (std::size_t i = 0; i < take; ++i) m.owner[order[next++]] = static_cast<int>(k);
  }
  return m;
}

template <MnoRateSource Source>
McmcResult mcmc_swap(std::size_t num_slices, std::span<const std::size_t> capacities,
                     const MatchingConfig& cfg, Source& source, Rng& rng,
                     std::optional<Matching> start = std::nullopt) {
  cfg.validate();
  const std::size_t K = capacities.size();
  Matching current = start ? *start : initial_matching(num_slices, capacities, rng);
  require_valid(current, capacities);

  auto contribution = [&](std::size_t k, SliceMask s) {
    if (s == 0) return 0.0;
    const double r = source.mno_rate(k, s);
    return cfg.reading == WelfareReading::per_slice ? static_cast<double>(std::popcount(s)) * r : r;
  };

  std::vector<double> part(K);
  for (std::size_t k = 0; k < K; ++k) part[k] = contribution(k, current.slices_of(k));
  auto welfare_of = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
  };

  McmcResult res;
  double welfare = welfare_of(part);
  res.initial_welfare = welfare;
  res.best = current;
  res.best_welfare = welfare;
  res.trace.reserve(cfg.iterations);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::optional<double> previous_proposal;
  std::vector<double> cand = part;
  std::size_t stall = 0;

  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    std::optional<SwapProposal> prop;
    if (num_slices >= 2 && unit(rng) >= cfg.reassign_probability)
      prop = propose_swap(current, rng);
    else
      prop = propose_reassign(current, capacities, rng);

    bool accepted = false;
    if (prop) {
      cand = part;
      for (std::size_t k = 0; k < K; ++k) {
        const SliceMask s = prop->next.slices_of(k);
        if (s != current.slices_of(k)) cand[k] = contribution(k, s);
      }
      const double proposed = welfare_of(cand);
      const double p = swap_probability(proposed, welfare, cfg.temperature);
      accepted = unit(rng) < p;
      if (!accepted && cfg.literal_acceptance && previous_proposal &&
          welfare > *previous_proposal)
        accepted = true;
      previous_proposal = proposed;
      if (accepted) {
        if (proposed > welfare) stall = 0;
        current = std::move(prop->next);
        part = cand;
        welfare = proposed;
        assert(validate_matching(current, capacities));
        if (welfare > res.best_welfare) {
          res.best_welfare = welfare;
          res.best = current;
        }
      }
    }
    ++stall;
    if (cfg.restart_after > 0 && stall >= cfg.restart_after) {
      current = initial_matching(num_slices, capacities, rng);
      for (std::size_t k = 0; k < K; ++k) part[k] = contribution(k, current.slices_of(k));
      welfare = welfare_of(part);
      previous_proposal.reset();
      stall = 0;
      if (welfare > res.best_welfare) {
        res.best_welfare = welfare;
        res.best = current;
      }
    }
    res.trace.push_back({t, welfare, res.best_welfare, accepted});
  }
  res.final_state = std::move(current);
  return res;
}

}  // namespace moslice
