#pragma once

// Edge-computing delay model and the greedy fractional-knapsack sizing of
// SBS infrastructure under a linearized latency budget.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace moslice {

struct MecConfig {
  double file_bits = 100.0;          // x_f
  double cpu_cycles_per_bit = 15.0;  // tau
  double server_speed = 20.0;        // s_m, cycles/s
  double slot_len = 0.9;             // Q_m, s/slot
  double tx_window = 1.0;            // T_s, s
  double delay_threshold = 0.001;    // D_th, s
  double tolerance = 0.3;            // epsilon
  std::vector<double> sbs_costs{50, 80, 200, 500, 800, 1000, 300, 400};

  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("mec: " + what); };
    if (!(file_bits > 0.0)) fail("file_bits must be positive");
    if (!(cpu_cycles_per_bit > 0.0)) fail("cpu_cycles_per_bit must be positive");
    if (!(server_speed > 0.0)) fail("server_speed must be positive");
    if (!(slot_len > 0.0)) fail("slot_len must be positive");
    if (!(tx_window > 0.0)) fail("tx_window must be positive");
    if (!(delay_threshold > 0.0)) fail("delay_threshold must be positive");
    if (!(tolerance > 0.0 && tolerance < 1.0)) fail("tolerance must lie in (0, 1)");
    for (double c : sbs_costs)
      if (!(c >= 0.0)) fail("SBS costs must be non-negative");
  }
};

inline constexpr double kUnservable = std::numeric_limits<double>::infinity();

// Whole round-robin slots needed to process the file.
inline std::size_t service_slots(const MecConfig& cfg) {
  const double cycles = cfg.cpu_cycles_per_bit * cfg.file_bits;
  const double per_slot = cfg.server_speed * cfg.slot_len;
  // Guard against 1500/18.0 landing a hair above an exact integer.
  const double q = cycles / per_slot;
  const double r = std::round(q);
  return static_cast<std::size_t>(std::abs(q - r) < 1e-9 * std::max(1.0, r) ? r : std::ceil(q));
}

inline double service_delay(const MecConfig& cfg) {
  return static_cast<double>(service_slots(cfg)) * cfg.slot_len;
}

// A zero rate leaves the UE unservable (infinite delay).
inline double downlink_delay(double file_bits, double rate, double tx_window) {
  if (file_bits == 0.0) return 0.0;
  if (!(rate > 0.0)) return kUnservable;
  return file_bits / (rate * tx_window);
}

struct DelayProfile {
  std::vector<double> service;   // D_sm
  std::vector<double> downlink;  // D_dl
  std::vector<double> total;     // D_f = D_sm + D_dl
};

inline DelayProfile total_delay(std::span<const double> service, std::span<const double> downlink) {
  if (service.size() != downlink.size())
    throw std::invalid_argument("total_delay: component lengths differ");
  DelayProfile p;
  p.service.assign(service.begin(), service.end());
  p.downlink.assign(downlink.begin(), downlink.end());
  p.total.resize(service.size());
  for (std::size_t i = 0; i < service.size(); ++i) p.total[i] = service[i] + downlink[i];
  return p;
}

// Delay profile of each SBS given its downlink rate.
inline DelayProfile delay_profile(const MecConfig& cfg, std::span<const double> rates) {
  const double dsm = service_delay(cfg);
  std::vector<double> service(rates.size(), dsm), downlink(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i)
    downlink[i] = downlink_delay(cfg.file_bits, rates[i], cfg.tx_window);
  return total_delay(service, downlink);
}

// w_bar = epsilon * D_th.
inline double knapsack_capacity(const MecConfig& cfg) {
  return cfg.tolerance * cfg.delay_threshold;
}

struct KnapsackSolution {
  std::vector<double> y;           // fraction of each SBS in [0, 1]
  double total_cost = 0.0;         // V
  double consumed_weight = 0.0;    // w
  std::vector<std::size_t> order;  // items in ascending cost/delay, unservable ones excluded
};

// Greedy fill in ascending cost-per-delay order: whole items while they fit,
// then one fractional item closing the capacity, then stop. Ties in the
// ratio go to the lower index.
inline KnapsackSolution fractional_knapsack(std::span<const double> costs,
                                            std::span<const double> delays, double capacity) {
  if (costs.size() != delays.size())
    throw std::invalid_argument("fractional_knapsack: costs and delays differ in length");
  const std::size_t n = costs.size();
  KnapsackSolution sol;
  sol.y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(costs[i] >= 0.0)) throw std::invalid_argument("fractional_knapsack: negative cost");
    if (std::isinf(delays[i])) continue;
    if (!(delays[i] > 0.0))
      throw std::invalid_argument("fractional_knapsack: delays must be positive");
    sol.order.push_back(i);
  }
  std::stable_sort(sol.order.begin(), sol.order.end(), [&](std::size_t a, std::size_t b) {
    return costs[a] / delays[a] < costs[b] / delays[b];
  });

  double w = 0.0;
  for (std::size_t i : sol.order) {
    const double residual = capacity - w;
    if (residual <= 0.0) break;
    if (delays[i] <= residual) {
      sol.y[i] = 1.0;
      sol.total_cost += costs[i];
      w += delays[i];
    } else {
      sol.y[i] = residual / delays[i];
      sol.total_cost += costs[i] * sol.y[i];
      w = capacity;
      break;
    }
  }
  sol.consumed_weight = w;
  return sol;
}

}  // namespace moslice
