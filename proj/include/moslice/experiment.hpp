#pragma once

// Experiment orchestration: configuration documents, seeded replications
// and the CSV tables emitted by the command-line tool.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "moslice/allocation.hpp"
#include "moslice/matching.hpp"
#include "moslice/mec.hpp"
#include "moslice/oracle.hpp"
#include "moslice/qlearning.hpp"
#include "moslice/rng.hpp"
#include "moslice/scenario.hpp"
#include "moslice/welfare.hpp"

namespace moslice {

struct SweepSpec {
  std::vector<std::size_t> num_slices;   // cdf
  std::vector<PowerMode> power_modes;    // cdf
  std::vector<std::size_t> num_mnos;     // cdf
  std::vector<double> delay_thresholds;  // knapsack
  std::vector<double> tolerances;        // knapsack
};

struct ExperimentSpec {
  ScenarioConfig scenario;
  QLearningConfig qlearning;
  MecConfig mec;
  MatchingConfig matching;
  SweepSpec sweep;
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  std::size_t threads = 0;  // 0: one per hardware thread

  void validate() const {
    scenario.validate();
    qlearning.validate();
    mec.validate();
    matching.validate();
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline void check_keys(const json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace detail

inline ExperimentSpec parse_experiment(const nlohmann::json& j) {
  using detail::check_keys;
  using detail::read;
  ExperimentSpec s;
  if (j.is_null()) return s;
  check_keys(j, "config", {"scenario", "qlearning", "mec", "matching", "sweep", "replications",
                           "seed", "output_dir", "threads"});
  read(j, "replications", s.replications, "config");
  read(j, "seed", s.seed, "config");
  read(j, "output_dir", s.output_dir, "config");
  read(j, "threads", s.threads, "config");

  if (j.contains("scenario")) {
    const auto& c = j["scenario"];
    check_keys(c, "scenario",
               {"num_mnos", "sbs_per_mno", "num_slices", "capacities", "cell_radius",
                "ue_max_dist", "ue_min_dist", "wall_loss_db", "shadow_sigma_db", "noise_dbm",
                "sinr_threshold_db", "max_power_dbm", "num_power_levels"});
    auto& sc = s.scenario;
    read(c, "num_mnos", sc.num_mnos, "scenario");
    if (c.contains("sbs_per_mno") && c["sbs_per_mno"].is_number_integer())
      sc.sbs_per_mno.assign(sc.num_mnos, c["sbs_per_mno"].get<std::size_t>());
    else
      read(c, "sbs_per_mno", sc.sbs_per_mno, "scenario");
    read(c, "num_slices", sc.num_slices, "scenario");
    read(c, "capacities", sc.capacities, "scenario");
    read(c, "cell_radius", sc.cell_radius, "scenario");
    read(c, "ue_max_dist", sc.ue_max_dist, "scenario");
    read(c, "ue_min_dist", sc.ue_min_dist, "scenario");
    read(c, "wall_loss_db", sc.wall_loss_db, "scenario");
    read(c, "shadow_sigma_db", sc.shadow_sigma_db, "scenario");
    read(c, "noise_dbm", sc.noise_dbm, "scenario");
    read(c, "sinr_threshold_db", sc.sinr_threshold_db, "scenario");
    read(c, "max_power_dbm", sc.max_power_dbm, "scenario");
    read(c, "num_power_levels", sc.num_power_levels, "scenario");
    // A bare num_mnos change resizes per-MNO lists the same way the K sweep does.
    if (c.contains("num_mnos") && !c.contains("sbs_per_mno"))
      sc.sbs_per_mno.resize(sc.num_mnos, sc.sbs_per_mno.empty() ? 8 : sc.sbs_per_mno.back());
  }
  if (j.contains("qlearning")) {
    const auto& c = j["qlearning"];
    check_keys(c, "qlearning",
               {"discount", "learning_rate", "epsilon_explore", "boltzmann_temp", "episodes",
                "policy", "literal_exploration", "max_excludes_taken_action", "eval_draws"});
    auto& q = s.qlearning;
    read(c, "discount", q.discount, "qlearning");
    read(c, "learning_rate", q.learning_rate, "qlearning");
    read(c, "epsilon_explore", q.epsilon_explore, "qlearning");
    read(c, "boltzmann_temp", q.boltzmann_temp, "qlearning");
    read(c, "episodes", q.episodes, "qlearning");
    read(c, "literal_exploration", q.literal_exploration, "qlearning");
    read(c, "max_excludes_taken_action", q.max_excludes_taken_action, "qlearning");
    read(c, "eval_draws", q.eval_draws, "qlearning");
    if (c.contains("policy")) {
      const auto p = c["policy"].get<std::string>();
      if (p == "epsilon_greedy") q.policy = PolicyKind::epsilon_greedy;
      else if (p == "boltzmann") q.policy = PolicyKind::boltzmann;
      else throw ConfigError("qlearning.policy: unknown policy '" + p + "'");
    }
  }
  if (j.contains("mec")) {
    const auto& c = j["mec"];
    check_keys(c, "mec",
               {"file_bits", "cpu_cycles_per_bit", "server_speed", "slot_len", "tx_window",
                "delay_threshold", "tolerance", "sbs_costs"});
    auto& m = s.mec;
    read(c, "file_bits", m.file_bits, "mec");
    read(c, "cpu_cycles_per_bit", m.cpu_cycles_per_bit, "mec");
    read(c, "server_speed", m.server_speed, "mec");
    read(c, "slot_len", m.slot_len, "mec");
    read(c, "tx_window", m.tx_window, "mec");
    read(c, "delay_threshold", m.delay_threshold, "mec");
    read(c, "tolerance", m.tolerance, "mec");
    read(c, "sbs_costs", m.sbs_costs, "mec");
  }
  if (j.contains("matching")) {
    const auto& c = j["matching"];
    check_keys(c, "matching",
               {"iterations", "temperature", "power_mode", "welfare_reading", "literal_acceptance",
                "reassign_probability", "restart_after", "rate_draws", "exact_rates"});
    auto& m = s.matching;
    read(c, "iterations", m.iterations, "matching");
    read(c, "temperature", m.temperature, "matching");
    read(c, "literal_acceptance", m.literal_acceptance, "matching");
    read(c, "reassign_probability", m.reassign_probability, "matching");
    read(c, "restart_after", m.restart_after, "matching");
    read(c, "rate_draws", m.rate_draws, "matching");
    read(c, "exact_rates", m.exact_rates, "matching");
    try {
      if (c.contains("power_mode")) m.power_mode = parse_power_mode(c["power_mode"].get<std::string>());
      if (c.contains("welfare_reading"))
        m.reading = parse_welfare_reading(c["welfare_reading"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("matching: ") + e.what());
    }
  }
  if (j.contains("sweep")) {
    const auto& c = j["sweep"];
    check_keys(c, "sweep",
               {"num_slices", "power_modes", "num_mnos", "delay_thresholds", "tolerances"});
    read(c, "num_slices", s.sweep.num_slices, "sweep");
    read(c, "num_mnos", s.sweep.num_mnos, "sweep");
    read(c, "delay_thresholds", s.sweep.delay_thresholds, "sweep");
    read(c, "tolerances", s.sweep.tolerances, "sweep");
    if (c.contains("power_modes")) {
      try {
        for (const auto& p : c["power_modes"]) s.sweep.power_modes.push_back(parse_power_mode(p.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
      }
    }
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

inline ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_experiment(j);
}

// Fully resolved configuration, embedded in every output file.
inline nlohmann::json to_json(const ExperimentSpec& s) {
  nlohmann::json j;
  const auto& sc = s.scenario;
  j["scenario"] = {{"num_mnos", sc.num_mnos},
                   {"sbs_per_mno", sc.sbs_per_mno},
                   {"num_slices", sc.num_slices},
                   {"capacities", sc.capacities},
                   {"cell_radius", sc.cell_radius},
                   {"ue_max_dist", sc.ue_max_dist},
                   {"ue_min_dist", sc.ue_min_dist},
                   {"wall_loss_db", sc.wall_loss_db},
                   {"shadow_sigma_db", sc.shadow_sigma_db},
                   {"noise_dbm", sc.noise_dbm},
                   {"sinr_threshold_db", sc.sinr_threshold_db},
                   {"max_power_dbm", sc.max_power_dbm},
                   {"num_power_levels", sc.num_power_levels}};
  const auto& q = s.qlearning;
  j["qlearning"] = {{"discount", q.discount},
                    {"learning_rate", q.learning_rate},
                    {"epsilon_explore", q.epsilon_explore},
                    {"boltzmann_temp", q.boltzmann_temp},
                    {"episodes", q.episodes},
                    {"policy", q.policy == PolicyKind::boltzmann ? "boltzmann" : "epsilon_greedy"},
                    {"literal_exploration", q.literal_exploration},
                    {"max_excludes_taken_action", q.max_excludes_taken_action},
                    {"eval_draws", q.eval_draws}};
  const auto& m = s.mec;
  j["mec"] = {{"file_bits", m.file_bits},
              {"cpu_cycles_per_bit", m.cpu_cycles_per_bit},
              {"server_speed", m.server_speed},
              {"slot_len", m.slot_len},
              {"tx_window", m.tx_window},
              {"delay_threshold", m.delay_threshold},
              {"tolerance", m.tolerance},
              {"sbs_costs", m.sbs_costs}};
  const auto& mc = s.matching;
  j["matching"] = {{"iterations", mc.iterations},
                   {"temperature", mc.temperature},
                   {"power_mode", std::string(to_string(mc.power_mode))},
                   {"welfare_reading", std::string(to_string(mc.reading))},
                   {"literal_acceptance", mc.literal_acceptance},
                   {"reassign_probability", mc.reassign_probability},
                   {"restart_after", mc.restart_after},
                   {"rate_draws", mc.rate_draws},
                   {"exact_rates", mc.exact_rates}};
  std::vector<std::string> modes;
  for (auto p : s.sweep.power_modes) modes.emplace_back(to_string(p));
  j["sweep"] = {{"num_slices", s.sweep.num_slices},
                {"power_modes", modes},
                {"num_mnos", s.sweep.num_mnos},
                {"delay_thresholds", s.sweep.delay_thresholds},
                {"tolerances", s.sweep.tolerances}};
  j["replications"] = s.replications;
  j["seed"] = s.seed;
  return j;
}

// Runs task(i) for i in [0, n) on a small thread pool; results must be
// written into per-index slots by the caller. The first exception is rethrown.
template <class Task>
void parallel_for(std::size_t n, std::size_t threads, Task&& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Per-MNO lists for a K different from the configured one: truncate, or
// extend SBS counts with the last value and capacities by +1 per extra MNO.
inline ScenarioConfig resize_mnos(ScenarioConfig cfg, std::size_t num_mnos) {
  const std::size_t fk = cfg.sbs_per_mno.empty() ? 8 : cfg.sbs_per_mno.back();
  while (cfg.capacities.size() < num_mnos)
    cfg.capacities.push_back(cfg.capacities.empty() ? 1 : cfg.capacities.back() + 1);
  cfg.capacities.resize(num_mnos);
  cfg.sbs_per_mno.resize(num_mnos, fk);
  cfg.num_mnos = num_mnos;
  return cfg;
}

// Stream keys shared by every subcommand so that, e.g., the two power modes
// of a CDF cell see the same topology and the same chain randomness.
inline std::uint64_t topology_seed(std::uint64_t seed, std::size_t replication, std::size_t K,
                                   std::size_t L) {
  return derive_seed(seed, {0x746f706f, replication, K, L});
}

inline std::uint64_t chain_seed(std::uint64_t seed, std::size_t replication, std::size_t K,
                                std::size_t L) {
  return derive_seed(seed, {0x636861696e, replication, K, L});
}

inline McmcResult solve_matching(const NetworkTopology& topo, const ExperimentSpec& spec,
                                 PowerMode mode, std::uint64_t seed) {
  RateSourceOptions opt;
  opt.mode = mode;
  opt.exact = spec.matching.exact_rates;
  opt.draws = spec.matching.rate_draws;
  opt.qlearning = spec.qlearning;
  auto source = make_rate_source(topo, opt, derive_seed(seed, {0x72617465}));
  Rng rng(seed);
  MatchingConfig cfg = spec.matching;
  cfg.power_mode = mode;
  return mcmc_swap(topo.num_slices(), topo.config().capacities, cfg, source, rng);
}

struct ConvergenceRow {
  std::size_t replication;
  TraceRow row;
};

inline std::vector<ConvergenceRow> run_convergence(const ExperimentSpec& spec) {
  const auto& sc = spec.scenario;
  std::vector<McmcResult> results(spec.replications);
  parallel_for(spec.replications, spec.threads, [&](std::size_t r) {
    ScenarioConfig cfg = sc;
    cfg.rng_seed = topology_seed(spec.seed, r, sc.num_mnos, sc.num_slices);
    const auto topo = generate_topology(cfg);
    results[r] = solve_matching(topo, spec, spec.matching.power_mode,
                                chain_seed(spec.seed, r, sc.num_mnos, sc.num_slices));
  });
  std::vector<ConvergenceRow> rows;
  for (std::size_t r = 0; r < results.size(); ++r)
    for (const auto& t : results[r].trace) rows.push_back({r, t});
  return rows;
}

struct CdfRow {
  std::size_t num_mnos;
  std::size_t num_slices;
  PowerMode power_mode;
  std::size_t replication;
  std::uint64_t seed;  // topology seed of the instance
  double welfare;
};

struct CdfCell {
  std::size_t num_mnos;
  std::size_t num_slices;
  PowerMode power_mode;
};

// Cartesian product of the sweep axes; an empty axis contributes the base value.
inline std::vector<CdfCell> cdf_cells(const ExperimentSpec& spec) {
  auto ks = spec.sweep.num_mnos.empty() ? std::vector<std::size_t>{spec.scenario.num_mnos}
                                        : spec.sweep.num_mnos;
  auto ls = spec.sweep.num_slices.empty() ? std::vector<std::size_t>{spec.scenario.num_slices}
                                          : spec.sweep.num_slices;
  auto ps = spec.sweep.power_modes.empty() ? std::vector<PowerMode>{spec.matching.power_mode}
                                           : spec.sweep.power_modes;
  std::vector<CdfCell> cells;
  for (auto k : ks)
    for (auto l : ls)
      for (auto p : ps) cells.push_back({k, l, p});
  return cells;
}

inline std::vector<CdfRow> run_cdf(const ExperimentSpec& spec) {
  const auto cells = cdf_cells(spec);
  const std::size_t n = cells.size() * spec.replications;
  std::vector<CdfRow> rows(n);
  parallel_for(n, spec.threads, [&](std::size_t i) {
    const auto& cell = cells[i / spec.replications];
    const std::size_t r = i % spec.replications;
    ScenarioConfig cfg = resize_mnos(spec.scenario, cell.num_mnos);
    cfg.num_slices = cell.num_slices;
    cfg.rng_seed = topology_seed(spec.seed, r, cell.num_mnos, cell.num_slices);
    const auto topo = generate_topology(cfg);
    const auto res = solve_matching(topo, spec, cell.power_mode,
                                    chain_seed(spec.seed, r, cell.num_mnos, cell.num_slices));
    rows[i] = {cell.num_mnos, cell.num_slices, cell.power_mode, r, cfg.rng_seed, res.best_welfare};
  });
  return rows;
}

struct KnapsackRow {
  std::size_t replication;
  double delay_threshold;
  double tolerance;
  std::size_t sbs;
  double cost;
  double rate;
  double service_delay;
  double downlink_delay;
  double total_delay;
  double fraction;
  double weighted_delay;  // y * D_f
};

// One MNO with one SBS per configured price: its agents learn power levels
// on a random feasible slice set, and the learned rates drive the delay
// profile fed to the knapsack for every (D_th, epsilon) cell.
inline std::vector<KnapsackRow> run_knapsack(const ExperimentSpec& spec) {
  auto ths = spec.sweep.delay_thresholds.empty()
                 ? std::vector<double>{spec.mec.delay_threshold}
                 : spec.sweep.delay_thresholds;
  auto eps = spec.sweep.tolerances.empty() ? std::vector<double>{spec.mec.tolerance}
                                           : spec.sweep.tolerances;
  const std::size_t F = spec.mec.sbs_costs.size();
  if (F == 0) throw ConfigError("mec.sbs_costs must list at least one SBS price");

  std::vector<std::vector<KnapsackRow>> per_rep(spec.replications);
  parallel_for(spec.replications, spec.threads, [&](std::size_t r) {
    ScenarioConfig cfg = resize_mnos(spec.scenario, 1);
    cfg.sbs_per_mno = {F};
    cfg.rng_seed = topology_seed(spec.seed, r, 1, cfg.num_slices);
    const auto topo = generate_topology(cfg);
    Rng rng(chain_seed(spec.seed, r, 1, cfg.num_slices));
    const Matching m = initial_matching(cfg.num_slices, cfg.capacities, rng);
    const auto learned = run_qlearning(m, topo, spec.qlearning, rng);
    const auto& rates = learned.rates.rate_per_sbs;
    const auto profile = delay_profile(spec.mec, rates);
    for (double th : ths) {
      for (double e : eps) {
        MecConfig mc = spec.mec;
        mc.delay_threshold = th;
        mc.tolerance = e;
        mc.validate();
        const auto sol = fractional_knapsack(mc.sbs_costs, profile.total, knapsack_capacity(mc));
        for (std::size_t f = 0; f < F; ++f) {
          const double yd = sol.y[f] == 0.0 ? 0.0 : sol.y[f] * profile.total[f];
          per_rep[r].push_back({r, th, e, f, mc.sbs_costs[f], rates[f], profile.service[f],
                                profile.downlink[f], profile.total[f], sol.y[f], yd});
        }
      }
    }
  });
  std::vector<KnapsackRow> rows;
  for (auto& v : per_rep) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

struct CertifyRow {
  std::size_t replication;
  std::uint64_t seed;
  std::size_t num_enumerated;
  double oracle_welfare;
  double mcmc_welfare;
  bool attained;
  bool oracle_stable;
  bool mcmc_stable;
};

// Small-instance certification: exhaustive optimum versus the MCMC chain
// under exact rates, plus swap stability of both.
inline std::vector<CertifyRow> run_certify(const ExperimentSpec& spec) {
  if (spec.matching.power_mode == PowerMode::qlearning)
    throw ConfigError("certify needs a fixed power mode (uniform or max_power)");
  const auto& sc = spec.scenario;
  if (sc.num_slices > kOracleMaxSlices || sc.num_mnos > kOracleMaxMnos)
    throw ConfigError("certify: instance exceeds the enumeration bound (L <= 8, K <= 3)");
  std::vector<CertifyRow> rows(spec.replications);
  parallel_for(spec.replications, spec.threads, [&](std::size_t r) {
    ScenarioConfig cfg = sc;
    cfg.rng_seed = topology_seed(spec.seed, r, sc.num_mnos, sc.num_slices);
    const auto topo = generate_topology(cfg);
    RateSourceOptions opt;
    opt.mode = spec.matching.power_mode;
    opt.exact = true;
    auto source = make_rate_source(topo, opt, 0);
    const auto oracle = exhaustive_matching(sc.num_slices, sc.capacities, source, spec.matching.reading);
    Rng rng(chain_seed(spec.seed, r, sc.num_mnos, sc.num_slices));
    const auto chain = mcmc_swap(sc.num_slices, sc.capacities, spec.matching, source, rng);
    const double tol = 1e-12 * std::max(1.0, oracle.optimal_welfare);
    rows[r] = {r,
               cfg.rng_seed,
               oracle.num_enumerated,
               oracle.optimal_welfare,
               chain.best_welfare,
               chain.best_welfare >= oracle.optimal_welfare - tol,
               check_swap_stability(oracle.optimal_matching, source, spec.matching.reading).stable,
               check_swap_stability(chain.best, source, spec.matching.reading).stable};
  });
  return rows;
}

// ---- CSV output ----------------------------------------------------------

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_header(std::ostream& out, const std::string& subcommand,
                         const ExperimentSpec& spec) {
  out << "# moslice " << subcommand << " seed=" << spec.seed << " config=" << to_json(spec).dump()
      << '\n';
}

inline void write_convergence_csv(std::ostream& out, const ExperimentSpec& spec,
                                  const std::vector<ConvergenceRow>& rows) {
  write_header(out, "converge", spec);
  out << "replication,iteration,welfare,best_welfare,accepted\n";
  for (const auto& r : rows)
    out << r.replication << ',' << r.row.iteration << ',' << fmt_double(r.row.welfare) << ','
        << fmt_double(r.row.best_welfare) << ',' << (r.row.accepted ? 1 : 0) << '\n';
}

inline void write_cdf_csv(std::ostream& out, const ExperimentSpec& spec,
                          const std::vector<CdfRow>& rows) {
  write_header(out, "cdf", spec);
  out << "num_mnos,num_slices,power_mode,replication,seed,welfare\n";
  for (const auto& r : rows)
    out << r.num_mnos << ',' << r.num_slices << ',' << to_string(r.power_mode) << ','
        << r.replication << ',' << r.seed << ',' << fmt_double(r.welfare) << '\n';
}

inline void write_knapsack_csv(std::ostream& out, const ExperimentSpec& spec,
                               const std::vector<KnapsackRow>& rows) {
  write_header(out, "knapsack", spec);
  out << "replication,delay_threshold,tolerance,sbs,cost,rate,service_delay,downlink_delay,"
         "total_delay,fraction,weighted_delay\n";
  for (const auto& r : rows)
    out << r.replication << ',' << fmt_double(r.delay_threshold) << ','
        << fmt_double(r.tolerance) << ',' << r.sbs << ',' << fmt_double(r.cost) << ','
        << fmt_double(r.rate) << ',' << fmt_double(r.service_delay) << ','
        << fmt_double(r.downlink_delay) << ',' << fmt_double(r.total_delay) << ','
        << fmt_double(r.fraction) << ',' << fmt_double(r.weighted_delay) << '\n';
}

inline void write_certify_csv(std::ostream& out, const ExperimentSpec& spec,
                              const std::vector<CertifyRow>& rows) {
  write_header(out, "certify", spec);
  out << "replication,seed,num_enumerated,oracle_welfare,mcmc_welfare,attained,oracle_stable,"
         "mcmc_stable\n";
  for (const auto& r : rows)
    out << r.replication << ',' << r.seed << ',' << r.num_enumerated << ','
        << fmt_double(r.oracle_welfare) << ',' << fmt_double(r.mcmc_welfare) << ','
        << (r.attained ? 1 : 0) << ',' << (r.oracle_stable ? 1 : 0) << ','
        << (r.mcmc_stable ? 1 : 0) << '\n';
}

}  // namespace moslice
