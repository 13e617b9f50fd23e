#pragma once

// Tabular Q-learning for per-SBS transmit power selection. Each SBS is an
// independent agent with a binary QoS state and one action per power level.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "moslice/allocation.hpp"
#include "moslice/radio.hpp"
#include "moslice/rng.hpp"
#include "moslice/scenario.hpp"

namespace moslice {

enum class PolicyKind { epsilon_greedy, boltzmann };

struct QLearningConfig {
  double discount = 0.95;
  double learning_rate = 0.5;
  double epsilon_explore = 0.2;
  double boltzmann_temp = 0.5;
  std::size_t episodes = 2000;
  PolicyKind policy = PolicyKind::epsilon_greedy;
  // Explore with probability `discount` instead of `epsilon_explore`.
  bool literal_exploration = false;
  // Bootstrap from max over a' != a rather than over all a'.
  bool max_excludes_taken_action = true;
  // Draws used to evaluate the learned policy's expected rates.
  std::size_t eval_draws = 200;

  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("qlearning: " + what); };
    if (!(discount >= 0.0 && discount <= 1.0)) fail("discount must lie in [0, 1]");
    if (!(learning_rate >= 0.0 && learning_rate < 1.0)) fail("learning_rate must lie in [0, 1)");
    if (!(epsilon_explore >= 0.0 && epsilon_explore <= 1.0))
      fail("epsilon_explore must lie in [0, 1]");
    if (!(boltzmann_temp > 0.0)) fail("boltzmann_temp must be positive");
  }
};

// {0, d, 2d, ..., (N-1)d} with d = p_tot / N.
inline std::vector<double> action_space(double p_tot, std::size_t num_levels) {
  if (num_levels < 2) throw std::invalid_argument("action_space: need at least two power levels");
  if (!(p_tot > 0.0)) throw std::invalid_argument("action_space: total power must be positive");
  const double delta = p_tot / static_cast<double>(num_levels);
  std::vector<double> levels(num_levels);
  for (std::size_t n = 0; n < num_levels; ++n) levels[n] = static_cast<double>(n) * delta;
  return levels;
}

inline std::vector<double> action_space(const ScenarioConfig& cfg) {
  return action_space(cfg.max_power_mw(), cfg.num_power_levels);
}

class QTable {
 public:
  static constexpr std::size_t kStates = 2;

  explicit QTable(std::size_t num_actions = 2) : actions_(num_actions), q_(kStates * num_actions, 0.0) {}

  std::size_t num_actions() const { return actions_; }
  double& at(int s, std::size_t a) { return q_.at(index(s, a)); }
  double at(int s, std::size_t a) const { return q_.at(index(s, a)); }
  std::span<const double> row(int s) const {
    return std::span<const double>(q_).subspan(index(s, 0), actions_);
  }
  std::span<const double> values() const { return q_; }

  // Ties resolve to the lowest action index.
  std::size_t argmax(int s) const {
    auto r = row(s);
    return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
  }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t index(int s, std::size_t a) const {
    return static_cast<std::size_t>(s != 0 ? 1 : 0) * actions_ + a;
  }

  std::size_t actions_;
  std::vector<double> q_;
};

inline int state_from_sinr(double s, double sinr_th) { return s >= sinr_th ? 1 : 0; }
inline double reward_from_sinr(double s, double sinr_th) {
  return s >= sinr_th ? rate_from_sinr(s) : 0.0;
}

inline int observe_state(std::size_t f, const PowerAssignment& pa, const NetworkTopology& topo,
                         double sinr_th) {
  return state_from_sinr(sinr(f, pa, topo), sinr_th);
}

inline double reward(std::size_t f, const PowerAssignment& pa, const NetworkTopology& topo,
                     double sinr_th) {
  return reward_from_sinr(sinr(f, pa, topo), sinr_th);
}

// Q(s,a) <- (1-b) Q(s,a) + b (w + g * max_{a'} Q(s,a')). Only cell (s,a) changes.
inline void q_update(QTable& q, int s, std::size_t a, double w, const QLearningConfig& cfg) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < q.num_actions(); ++b) {
    if (cfg.max_excludes_taken_action && b == a) continue;
    best = std::max(best, q.at(s, b));
  }
  q.at(s, a) = (1.0 - cfg.learning_rate) * q.at(s, a) +
               cfg.learning_rate * (w + cfg.discount * best);
}

inline std::size_t select_action(const QTable& q, int s, const QLearningConfig& cfg, Rng& rng) {
  const std::size_t n = q.num_actions();
  if (cfg.policy == PolicyKind::boltzmann) {
    auto r = q.row(s);
    const double top = *std::max_element(r.begin(), r.end());
    std::vector<double> w(n);
    for (std::size_t a = 0; a < n; ++a) w[a] = std::exp((r[a] - top) / cfg.boltzmann_temp);
    return std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng);
  }
  const double explore = cfg.literal_exploration ? cfg.discount : cfg.epsilon_explore;
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const bool random_move = cfg.literal_exploration ? u <= explore : u < explore;
  if (random_move) return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  return q.argmax(s);
}

struct QLearningResult {
  std::vector<QTable> tables;                         // per global SBS id
  std::vector<std::array<std::size_t, 2>> greedy;     // greedy action per state
  std::vector<int> final_state;
  PowerPolicy policy;                                 // greedy powers per state
  RateReport rates;
};

// Called after every episode with the tables of the MNO being trained.
using QObserver = std::function<void(std::size_t episode, std::span<const QTable> tables)>;

namespace detail {

struct MnoLearning {
  std::vector<QTable> tables;
  std::vector<int> state;
};

inline MnoLearning learn_mno(const NetworkTopology& topo, std::size_t k, SliceMask slices,
                             const std::vector<double>& levels, const QLearningConfig& cfg,
                             Rng& rng, const QObserver& observer) {
  const auto& sbs = topo.sbs_of(k);
  const std::size_t n = sbs.size();
  MnoLearning out{std::vector<QTable>(n, QTable(levels.size())), std::vector<int>(n, 0)};
  const auto rbs = slices_in(slices);
  if (rbs.empty()) return out;

  const double th = topo.config().sinr_threshold();
  std::uniform_int_distribution<std::size_t> pick(0, rbs.size() - 1);
  std::vector<std::size_t> rb(n), action(n);
  std::vector<double> power(n), s(n);

  for (std::size_t t = 0; t < cfg.episodes; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      rb[i] = rbs[pick(rng)];
      action[i] = select_action(out.tables[i], out.state[i], cfg, rng);
      power[i] = levels[action[i]];
    }
    detail::group_sinr(topo, sbs, rb, power, s);
    for (std::size_t i = 0; i < n; ++i) {
      q_update(out.tables[i], out.state[i], action[i], reward_from_sinr(s[i], th), cfg);
      out.state[i] = state_from_sinr(s[i], th);
    }
    if (observer) observer(t, out.tables);
  }
  return out;
}

}  // namespace detail

// Trains the SBS agents of the MNOs selected by `mnos` (all when empty) with
// the matching held fixed, then evaluates the greedy policies. SBSs of MNOs
// without slices, or not selected, keep zero tables and report rate 0.
inline QLearningResult run_qlearning(const Matching& m, const NetworkTopology& topo,
                                     const QLearningConfig& cfg, Rng& rng,
                                     std::span<const std::size_t> mnos = {},
                                     const QObserver& observer = {}) {
  cfg.validate();
  const auto levels = action_space(topo.config());
  const std::size_t F = topo.num_sbs();
  QLearningResult res;
  res.tables.assign(F, QTable(levels.size()));
  res.greedy.assign(F, {0, 0});
  res.final_state.assign(F, 0);
  res.policy = PowerPolicy::constant(F, levels.front());
  res.rates.rate_per_sbs.assign(F, 0.0);
  res.rates.rate_per_mno.assign(topo.num_mnos(), 0.0);

  std::vector<std::size_t> selected(mnos.begin(), mnos.end());
  if (selected.empty())
    for (std::size_t k = 0; k < topo.num_mnos(); ++k) selected.push_back(k);

  for (std::size_t k : selected) {
    const SliceMask slices = m.slices_of(k);
    auto learned = detail::learn_mno(topo, k, slices, levels, cfg, rng, observer);
    const auto& sbs = topo.sbs_of(k);
    for (std::size_t i = 0; i < sbs.size(); ++i) {
      const std::size_t f = sbs[i];
      res.tables[f] = learned.tables[i];
      res.final_state[f] = learned.state[i];
      for (int s = 0; s < 2; ++s) {
        res.greedy[f][static_cast<std::size_t>(s)] = learned.tables[i].argmax(s);
        res.policy.power_by_state[f][static_cast<std::size_t>(s)] =
            levels[res.greedy[f][static_cast<std::size_t>(s)]];
      }
    }
    const auto est = expected_rates(topo, k, slices, res.policy, cfg.eval_draws, rng,
                                    learned.state);
    for (std::size_t i = 0; i < sbs.size(); ++i) {
      res.rates.rate_per_sbs[sbs[i]] = est.per_sbs[i].mean;
      res.rates.rate_per_mno[k] += est.per_sbs[i].mean;
    }
  }
  return res;
}

}  // namespace moslice
