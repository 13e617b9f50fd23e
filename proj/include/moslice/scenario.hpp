#pragma once

// Seeded small-cell network instances: SBS/UE placement, path loss,
// log-normal shadowing and per-RB Rayleigh fading.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moslice/rng.hpp"

namespace moslice {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct ScenarioConfig {
  std::size_t num_mnos = 3;
  std::vector<std::size_t> sbs_per_mno{8, 8, 8};
  std::size_t num_slices = 15;
  std::vector<std::size_t> capacities{2, 3, 4};
  double cell_radius = 500.0;     // m
  double ue_max_dist = 20.0;      // m
  double ue_min_dist = 1.0;       // m, keeps UEs out of the path-loss singularity
  double wall_loss_db = 15.0;
  double shadow_sigma_db = 4.0;
  double noise_dbm = -120.0;
  double sinr_threshold_db = 3.0;
  double max_power_dbm = 10.0;
  std::size_t num_power_levels = 5;
  std::uint64_t rng_seed = 1;

  std::size_t total_sbs() const {
    return std::accumulate(sbs_per_mno.begin(), sbs_per_mno.end(), std::size_t{0});
  }
  double noise_mw() const { return dbm_to_mw(noise_dbm); }
  double max_power_mw() const { return dbm_to_mw(max_power_dbm); }
  double sinr_threshold() const { return db_to_linear(sinr_threshold_db); }

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("scenario: " + what); };
    if (num_mnos < 1) fail("num_mnos must be >= 1");
    if (sbs_per_mno.size() != num_mnos) fail("sbs_per_mno needs one entry per MNO");
    if (capacities.size() != num_mnos) fail("capacities needs one entry per MNO");
    for (std::size_t f : sbs_per_mno)
      if (f < 1) fail("every MNO needs at least one SBS");
    if (num_slices < 1 || num_slices > 64) fail("num_slices must lie in [1, 64]");
    if (num_power_levels < 2) fail("num_power_levels must be >= 2");
    if (!(cell_radius > 0.0)) fail("cell_radius must be positive");
    if (!(ue_max_dist > 0.0)) fail("ue_max_dist must be positive");
    if (!(ue_min_dist > 0.0) || !(ue_min_dist < ue_max_dist))
      fail("ue_min_dist must lie in (0, ue_max_dist)");
    if (shadow_sigma_db < 0.0) fail("shadow_sigma_db must be non-negative");
  }
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Same-cell link, SBS-f to UE-f.
inline double path_loss_direct(double d) {
  if (!(d > 0.0)) throw std::domain_error("path_loss_direct: distance must be positive");
  return 37.0 + 20.0 * std::log10(d);
}

// Cross link, SBS-f' to UE-f with f' != f. The 1 m intercept sits below the
// direct model's; the formula is kept as given.
inline double path_loss_cross(double d, double wall_loss_db = 15.0) {
  if (!(d > 0.0)) throw std::domain_error("path_loss_cross: distance must be positive");
  return 7.0 + 56.0 * std::log10(d) + wall_loss_db;
}

// Linear power gain for a given attenuation, shadowing offset and
// squared-magnitude fading draw.
inline double channel_gain(double pl_db, double shadow_db, double fading) {
  return std::pow(10.0, -(pl_db + shadow_db) / 10.0) * fading;
}

inline double sample_channel_gain(double pl_db, double shadow_sigma_db, Rng& rng) {
  double shadow = 0.0;
  if (shadow_sigma_db > 0.0) shadow = std::normal_distribution<double>(0.0, shadow_sigma_db)(rng);
  double fading = std::exponential_distribution<double>(1.0)(rng);
  return channel_gain(pl_db, shadow, fading);
}

// Immutable after construction. SBS ids are global, grouped by MNO: MNO-0
// owns ids [0, F_0), MNO-1 the next F_1, and so on. UE-f belongs to SBS-f.
class NetworkTopology {
 public:
  NetworkTopology() = default;

  // Builds an instance with caller-supplied gains, laid out as
  // gains[(tx * F + rx) * L + rb]. Positions are left at the origin.
  static NetworkTopology from_gains(ScenarioConfig cfg, std::vector<double> gains) {
    cfg.validate();
    NetworkTopology t;
    t.init_layout(std::move(cfg));
    const std::size_t F = t.num_sbs();
    if (gains.size() != F * F * t.num_slices())
      throw std::invalid_argument("from_gains: gain tensor has the wrong size");
    for (double g : gains)
      if (!(g > 0.0) || !std::isfinite(g))
        throw std::invalid_argument("from_gains: gains must be finite and positive");
    t.gains_ = std::move(gains);
    t.sbs_pos_.assign(F, Position{});
    t.ue_pos_.assign(F, Position{});
    return t;
  }

  const ScenarioConfig& config() const { return cfg_; }
  std::size_t num_mnos() const { return cfg_.num_mnos; }
  std::size_t num_sbs() const { return mno_of_.size(); }
  std::size_t num_slices() const { return cfg_.num_slices; }
  std::size_t mno_of(std::size_t f) const { return mno_of_.at(f); }
  const std::vector<std::size_t>& sbs_of(std::size_t k) const { return sbs_of_.at(k); }
  Position sbs_position(std::size_t f) const { return sbs_pos_.at(f); }
  Position ue_position(std::size_t f) const { return ue_pos_.at(f); }
  double noise_mw() const { return cfg_.noise_mw(); }

  // Linear gain from SBS-tx to UE-rx on RB-rb.
  double gain(std::size_t tx, std::size_t rx, std::size_t rb) const {
    return gains_[(tx * num_sbs() + rx) * num_slices() + rb];
  }
  const std::vector<double>& gains() const { return gains_; }

  friend bool operator==(const NetworkTopology& a, const NetworkTopology& b) {
    auto same = [](const std::vector<Position>& u, const std::vector<Position>& v) {
      if (u.size() != v.size()) return false;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i].x != v[i].x || u[i].y != v[i].y) return false;
      return true;
    };
    return a.mno_of_ == b.mno_of_ && a.gains_ == b.gains_ && same(a.sbs_pos_, b.sbs_pos_) &&
           same(a.ue_pos_, b.ue_pos_);
  }

 private:
  friend NetworkTopology generate_topology(const ScenarioConfig& cfg);

  void init_layout(ScenarioConfig cfg) {
    cfg_ = std::move(cfg);
    sbs_of_.assign(cfg_.num_mnos, {});
    mno_of_.clear();
    for (std::size_t k = 0; k < cfg_.num_mnos; ++k) {
      for (std::size_t i = 0; i < cfg_.sbs_per_mno[k]; ++i) {
        sbs_of_[k].push_back(mno_of_.size());
        mno_of_.push_back(k);
      }
    }
  }

  ScenarioConfig cfg_;
  std::vector<std::size_t> mno_of_;
  std::vector<std::vector<std::size_t>> sbs_of_;
  std::vector<Position> sbs_pos_;
  std::vector<Position> ue_pos_;
  std::vector<double> gains_;
};

namespace detail {

// Uniform by area over the annulus r_min <= r <= r_max.
inline Position sample_in_annulus(Position centre, double r_min, double r_max, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const double r = std::sqrt(r_min * r_min + u * (r_max * r_max - r_min * r_min));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return {centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
}

}  // namespace detail

inline NetworkTopology generate_topology(const ScenarioConfig& cfg) {
  cfg.validate();
  NetworkTopology t;
  t.init_layout(cfg);
  Rng rng{derive_seed(cfg.rng_seed, {0x70706f})};

  const std::size_t F = t.num_sbs();
  const std::size_t L = t.num_slices();
  t.sbs_pos_.reserve(F);
  t.ue_pos_.reserve(F);
  for (std::size_t f = 0; f < F; ++f) {
    Position sbs = detail::sample_in_annulus({0.0, 0.0}, 0.0, cfg.cell_radius, rng);
    t.sbs_pos_.push_back(sbs);
    t.ue_pos_.push_back(detail::sample_in_annulus(sbs, cfg.ue_min_dist, cfg.ue_max_dist, rng));
  }

  t.gains_.resize(F * F * L);
  for (std::size_t tx = 0; tx < F; ++tx) {
    for (std::size_t rx = 0; rx < F; ++rx) {
      const double d = distance(t.sbs_pos_[tx], t.ue_pos_[rx]);
      const double pl = tx == rx ? path_loss_direct(d) : path_loss_cross(d, cfg.wall_loss_db);
      // Shadowing is a property of the link; fading is redrawn per RB.
      const double shadow =
          cfg.shadow_sigma_db > 0.0
              ? std::normal_distribution<double>(0.0, cfg.shadow_sigma_db)(rng)
              : 0.0;
      for (std::size_t rb = 0; rb < L; ++rb) {
        const double fading = std::exponential_distribution<double>(1.0)(rng);
        // An exact zero draw is possible in principle; clamp so gains stay positive.
        t.gains_[(tx * F + rx) * L + rb] = channel_gain(pl, shadow, std::max(fading, 1e-12));
      }
    }
  }
  return t;
}

}  // namespace moslice
