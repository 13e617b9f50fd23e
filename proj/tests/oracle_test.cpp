#include "moslice/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "moslice/matching.hpp"
#include "test_support.hpp"

namespace moslice {
namespace {

using testing::flat_gains;
using testing::small_config;

TEST(ExhaustiveMatchingTest, SingleSliceSingleMno) {
  auto topo = generate_topology(small_config({1}, 1, {1}));
  const std::vector<std::size_t> caps{1};
  auto res = exhaustive_matching(topo, caps, PowerMode::uniform);
  EXPECT_EQ(res.num_enumerated, 2u);
  EXPECT_EQ(res.optimal_matching.owner, (std::vector<int>{0}));
  EXPECT_GT(res.optimal_welfare, 0.0);
}

// Count of ownership vectors over L RBs and K+1 owners with per-MNO caps,
// by direct combinatorics: choose how many RBs each MNO takes.
std::size_t count_valid(std::size_t L, const std::vector<std::size_t>& caps) {
  std::vector<double> fact(L + 1, 1.0);
  for (std::size_t i = 1; i <= L; ++i) fact[i] = fact[i - 1] * static_cast<double>(i);
  double total = 0.0;
  std::vector<std::size_t> take(caps.size(), 0);
  while (true) {
    std::size_t used = 0;
    for (std::size_t t : take) used += t;
    if (used <= L) {
      double ways = fact[L] / fact[L - used];
      for (std::size_t t : take) ways /= fact[t];
      total += ways;
    }
    std::size_t i = 0;
    while (i < take.size() && ++take[i] > caps[i]) take[i++] = 0;
    if (i == take.size()) break;
  }
  return static_cast<std::size_t>(std::llround(total));
}

TEST(ExhaustiveMatchingTest, EnumerationCountMatchesCombinatorics) {
  auto topo = generate_topology(small_config({1, 1}, 2, {1, 1}));
  const std::vector<std::size_t> caps{1, 1};
  auto res = exhaustive_matching(topo, caps, PowerMode::uniform);
  EXPECT_EQ(res.num_enumerated, 7u);
  EXPECT_EQ(count_valid(2, caps), 7u);

  auto topo2 = generate_topology(small_config({1, 2, 1}, 5, {2, 1, 3}));
  const std::vector<std::size_t> caps2{2, 1, 3};
  EXPECT_EQ(exhaustive_matching(topo2, caps2, PowerMode::uniform).num_enumerated,
            count_valid(5, caps2));
}

TEST(ExhaustiveMatchingTest, RefusesLargeInstances) {
  auto topo = generate_topology(small_config({1, 1}, 9, {2, 2}));
  const std::vector<std::size_t> caps{2, 2};
  EXPECT_THROW(exhaustive_matching(topo, caps, PowerMode::uniform), std::length_error);
  auto topo4 = generate_topology(small_config({1, 1, 1, 1}, 3, {1, 1, 1, 1}));
  const std::vector<std::size_t> caps4{1, 1, 1, 1};
  EXPECT_THROW(exhaustive_matching(topo4, caps4, PowerMode::uniform), std::length_error);
  EXPECT_THROW(exhaustive_matching(topo, caps, PowerMode::qlearning), std::invalid_argument);
}

TEST(ExhaustiveMatchingTest, SymmetricUnderMnoRelabeling) {
  // MNO-0 = SBSs {0,1}, MNO-1 = SBSs {2,3}; swap roles by mirroring gains.
  auto cfg = small_config({2, 2}, 3, {2, 2});
  auto g = flat_gains(4, 3, 1e-9, 1e-10);
  auto at = [&](std::size_t tx, std::size_t rx, std::size_t l) -> double& {
    return testing::gain_at(g, 4, 3, tx, rx, l);
  };
  at(0, 0, 1) = 4e-9;
  at(1, 0, 1) = 3e-9;
  at(3, 2, 2) = 2e-9;
  auto mirrored = g;
  auto mat = [&](std::size_t tx, std::size_t rx, std::size_t l) -> double& {
    return testing::gain_at(mirrored, 4, 3, tx, rx, l);
  };
  for (std::size_t tx = 0; tx < 4; ++tx)
    for (std::size_t rx = 0; rx < 4; ++rx)
      for (std::size_t l = 0; l < 3; ++l) mat((tx + 2) % 4, (rx + 2) % 4, l) = at(tx, rx, l);
  const std::vector<std::size_t> caps{2, 2};
  auto a = exhaustive_matching(NetworkTopology::from_gains(cfg, g), caps, PowerMode::uniform);
  auto b = exhaustive_matching(NetworkTopology::from_gains(cfg, mirrored), caps, PowerMode::uniform);
  EXPECT_NEAR(a.optimal_welfare, b.optimal_welfare, 1e-12 * a.optimal_welfare);
}

TEST(ExactExpectedRateTest, SingleSliceIsFixedRate) {
  auto topo = generate_topology(small_config({2}, 2, {2}, 3));
  Matching m(1, 2);
  m.owner = {Matching::kUnassigned, 0};
  auto policy = PowerPolicy::constant(2, 6.0);
  PowerAssignment pa(2);
  pa.power = {6.0, 6.0};
  pa.rb_choice = {1, 1};
  EXPECT_NEAR(exact_expected_rate(0, m, policy, topo), rate_fixed(0, pa, topo), 1e-12);
}

TEST(ExactExpectedRateTest, IndependentSbssAverageOverTheirOwnRbs) {
  auto cfg = small_config({2}, 3, {3});
  cfg.noise_dbm = -90.0;
  auto g = flat_gains(2, 3, 1e-8, 1e-300);
  testing::gain_at(g, 2, 3, 0, 0, 2) = 5e-8;
  auto topo = NetworkTopology::from_gains(cfg, g);
  Matching m(1, 3);
  m.owner = {0, 0, 0};
  auto policy = PowerPolicy::constant(2, 4.0);
  const double noise = topo.noise_mw();
  const double expected =
      (2.0 * std::log2(1.0 + 4e-8 / noise) + std::log2(1.0 + 2e-7 / noise)) / 3.0;
  EXPECT_NEAR(exact_expected_rate(0, m, policy, topo), expected, 1e-9);
}

TEST(ExactExpectedRateTest, RejectsStateDependentPolicy) {
  auto topo = generate_topology(small_config({1}, 1, {1}));
  PowerPolicy p;
  p.power_by_state = {{0.0, 5.0}};
  EXPECT_THROW(exact_expected_rates(topo, 0, 1, p), std::invalid_argument);
}

TEST(ExactExpectedRateTest, EnumerationBound) {
  auto topo = generate_topology(small_config({9}, 6, {6}));
  EXPECT_THROW(exact_expected_rates(topo, 0, 0b111111, max_power_policy(topo)),
               std::length_error);
}

TEST(UniformBaselineTest, AveragesOverPowerLevels) {
  auto topo = generate_topology(small_config({1}, 1, {1}, 2));
  Matching m(1, 1);
  m.owner = {0};
  PowerAssignment pa(1);
  pa.rb_choice[0] = 0;
  double expected = 0.0;
  const auto levels = action_space(topo.config());
  for (double p : levels) {
    pa.power[0] = p;
    expected += rate_fixed(0, pa, topo) / static_cast<double>(levels.size());
  }
  Rng rng(1);
  auto rep = uniform_power_baseline(m, topo, 20000, rng);
  EXPECT_NEAR(rep.rate_per_sbs[0], expected, 0.02 * expected);

  auto topo3 = generate_topology(small_config({3}, 2, {2}, 2));
  Matching m3(1, 2);
  m3.owner = {0, 0};
  Rng a(5), b(5);
  auto base = uniform_power_baseline(m3, topo3, 300, a);
  auto direct = rate_report(m3, PowerPolicy::uniform_random(3, action_space(topo3.config())),
                            topo3, 300, b);
  EXPECT_EQ(base.rate_per_sbs, direct.rate_per_sbs);
}

TEST(SwapStabilityTest, OptimumIsStable) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = small_config({2, 1}, 4, {2, 2}, seed);
    cfg.cell_radius = 40.0;
    auto topo = generate_topology(cfg);
    const std::vector<std::size_t> caps{2, 2};
    auto source = exact_rate_source(topo, max_power_policy(topo));
    auto opt = exhaustive_matching(4, caps, source);
    EXPECT_TRUE(check_swap_stability(opt.optimal_matching, source).stable);
  }
}

TEST(SwapStabilityTest, ReportsImprovingWitness) {
  // MNO-0's SBS is much better on RB-1 than RB-0; RB-1 sits unassigned.
  auto cfg = small_config({1}, 2, {1});
  auto topo = NetworkTopology::from_gains(cfg, {1e-10, 1e-6});
  auto source = exact_rate_source(topo, max_power_policy(topo));
  Matching m(1, 2);
  m.owner = {0, Matching::kUnassigned};
  auto rep = check_swap_stability(m, source);
  EXPECT_FALSE(rep.stable);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_EQ(*rep.witness, (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_GT(rep.improvement, 0.0);
}

}  // namespace
}  // namespace moslice
