#include "moslice/radio.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include <limits>

#include "test_support.hpp"

namespace moslice {
namespace {

using testing::flat_gains;
using testing::gain_at;
using testing::small_config;

TEST(SinrTest, NoInterferers) {
  auto topo = NetworkTopology::from_gains(small_config({1}, 1, {1}), {1e-6});
  PowerAssignment pa(1);
  pa.power[0] = 10.0;
  pa.rb_choice[0] = 0;
  EXPECT_NEAR(sinr(0, pa, topo), 1e7, 1e-3);
  pa.power[0] = 0.0;
  EXPECT_EQ(sinr(0, pa, topo), 0.0);
}

TEST(SinrTest, SymmetricInterfererApproachesOne) {
  auto cfg = small_config({2}, 1, {1});
  cfg.noise_dbm = -300.0;
  auto topo = NetworkTopology::from_gains(cfg, flat_gains(2, 1, 1e-3, 1e-3));
  PowerAssignment pa(2);
  pa.power = {5.0, 5.0};
  pa.rb_choice = {0, 0};
  EXPECT_NEAR(sinr(0, pa, topo), 1.0, 1e-12);
}

TEST(SinrTest, OtherMnosNeverInterfere) {
  auto topo = NetworkTopology::from_gains(small_config({1, 1}, 1, {1, 1}),
                                          flat_gains(2, 1, 1e-6, 1.0));
  PowerAssignment pa(2);
  pa.power = {10.0, 10.0};
  pa.rb_choice = {0, 0};
  EXPECT_NEAR(sinr(0, pa, topo), 1e7, 1e-3);
}

TEST(SinrTest, CheckedVariantRejectsForeignRb) {
  auto topo = NetworkTopology::from_gains(small_config({1, 1}, 2, {1, 1}),
                                          flat_gains(2, 2, 1e-6, 1e-9));
  Matching m(2, 2);
  m.owner = {0, 1};
  PowerAssignment pa(2);
  pa.power = {1.0, 1.0};
  pa.rb_choice = {1, 1};
  EXPECT_THROW(sinr(0, pa, topo, m), std::invalid_argument);
  EXPECT_NO_THROW(sinr(1, pa, topo, m));
}

TEST(RateTest, FixedRateIsLog2) {
  EXPECT_DOUBLE_EQ(rate_from_sinr(1.0), 1.0);
  EXPECT_DOUBLE_EQ(rate_from_sinr(3.0), 2.0);
  EXPECT_DOUBLE_EQ(rate_from_sinr(0.0), 0.0);
}

TEST(RateTest, MonotoneInOwnAndInterfererPower) {
  auto cfg = small_config({2}, 1, {1});
  auto topo = NetworkTopology::from_gains(cfg, flat_gains(2, 1, 1e-7, 1e-9));
  PowerAssignment pa(2);
  pa.rb_choice = {0, 0};
  pa.power = {0.0, 4.0};
  double prev = rate_fixed(0, pa, topo);
  for (double p = 0.5; p <= 10.0; p += 0.5) {
    pa.power[0] = p;
    const double r = rate_fixed(0, pa, topo);
    EXPECT_GE(r, prev);
    prev = r;
  }
  pa.power[0] = 5.0;
  prev = std::numeric_limits<double>::infinity();
  for (double q = 0.0; q <= 10.0; q += 0.5) {
    pa.power[1] = q;
    const double r = rate_fixed(0, pa, topo);
    EXPECT_LE(r, prev + 1e-15);
    prev = r;
  }
}

// Joint-assignment oracle written against the raw gains, independent of the
// library's group evaluation.
double brute_force_rate(const NetworkTopology& topo, std::size_t f, std::vector<std::size_t> rbs,
                        std::vector<double> power) {
  const auto& sbs = topo.sbs_of(topo.mno_of(f));
  const std::size_t n = sbs.size();
  std::size_t joint = 1;
  for (std::size_t i = 0; i < n; ++i) joint *= rbs.size();
  double acc = 0.0;
  for (std::size_t c = 0; c < joint; ++c) {
    std::vector<std::size_t> pick(n);
    std::size_t code = c;
    for (std::size_t i = 0; i < n; ++i) {
      pick[i] = rbs[code % rbs.size()];
      code /= rbs.size();
    }
    std::size_t me = 0;
    while (sbs[me] != f) ++me;
    double interference = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != me && pick[j] == pick[me])
        interference += topo.gain(sbs[j], f, pick[me]) * power[sbs[j]];
    acc += std::log2(1.0 + topo.gain(f, f, pick[me]) * power[f] /
                               (interference + topo.noise_mw()));
  }
  return acc / static_cast<double>(joint);
}

NetworkTopology two_by_two() {
  auto cfg = small_config({2}, 2, {2});
  auto g = flat_gains(2, 2, 1e-9, 1e-11);
  gain_at(g, 2, 2, 0, 0, 1) = 3e-9;
  gain_at(g, 2, 2, 1, 0, 0) = 5e-10;
  gain_at(g, 2, 2, 0, 1, 1) = 2e-10;
  return NetworkTopology::from_gains(cfg, g);
}

TEST(RateExpectedTest, SingleSliceEqualsFixedRate) {
  auto topo = NetworkTopology::from_gains(small_config({1}, 2, {2}), {1e-8, 2e-8});
  Matching m(1, 2);
  m.owner = {Matching::kUnassigned, 0};
  Rng rng(3);
  auto est = rate_expected(0, m, PowerPolicy::constant(1, 6.0), topo, 50, rng);
  PowerAssignment pa(1);
  pa.power[0] = 6.0;
  pa.rb_choice[0] = 1;
  EXPECT_NEAR(est.mean, rate_fixed(0, pa, topo), 1e-12);
  EXPECT_NEAR(est.std_error, 0.0, 1e-12);
}

TEST(RateExpectedTest, SymmetricInstanceGivesEqualRates) {
  auto topo = NetworkTopology::from_gains(small_config({2}, 2, {2}), flat_gains(2, 2, 1e-9, 2e-10));
  Matching m(1, 2);
  m.owner = {0, 0};
  Rng rng(11);
  auto est = expected_rates(topo, 0, m.slices_of(0), PowerPolicy::constant(2, 8.0), 20000, rng);
  const double se = std::hypot(est.per_sbs[0].std_error, est.per_sbs[1].std_error);
  EXPECT_NEAR(est.per_sbs[0].mean, est.per_sbs[1].mean, 4.0 * se);
}

TEST(RateExpectedTest, MatchesJointEnumerationOracle) {
  auto topo = two_by_two();
  Matching m(1, 2);
  m.owner = {0, 0};
  for (double p0 : {4.0, 8.0}) {
    std::vector<double> power{p0, 8.0};
    PowerPolicy policy;
    policy.power_by_state = {{p0, p0}, {8.0, 8.0}};
    Rng rng(static_cast<std::uint64_t>(p0));
    auto est = expected_rates(topo, 0, m.slices_of(0), policy, 40000, rng);
    for (std::size_t f = 0; f < 2; ++f) {
      const double truth = brute_force_rate(topo, f, {0, 1}, power);
      EXPECT_NEAR(est.per_sbs[f].mean, truth, 3.0 * est.per_sbs[f].std_error + 1e-12)
          << "sbs " << f << " p0 " << p0;
    }
  }
}

TEST(MnoRateTest, SumOfSbsRatesAndZeroWithoutSlices) {
  auto topo = two_by_two();
  Matching m(1, 2);
  Rng rng(5);
  EXPECT_EQ(mno_rate(0, m, PowerPolicy::constant(2, 8.0), topo, 100, rng), 0.0);
  m.owner = {0, 0};
  Rng a(9), b(9);
  auto rep = rate_report(m, PowerPolicy::constant(2, 8.0), topo, 500, a);
  EXPECT_NEAR(rep.rate_per_mno[0], rep.rate_per_sbs[0] + rep.rate_per_sbs[1], 1e-9);
  EXPECT_NEAR(mno_rate(0, m, PowerPolicy::constant(2, 8.0), topo, 500, b), rep.rate_per_mno[0],
              1e-9);
}

TEST(MnoRateTest, SingleSbsMnoEqualsItsRate) {
  auto topo = NetworkTopology::from_gains(small_config({1}, 1, {1}), {1e-8});
  Matching m(1, 1);
  m.owner = {0};
  Rng a(1), b(1);
  EXPECT_DOUBLE_EQ(mno_rate(0, m, PowerPolicy::constant(1, 2.0), topo, 10, a),
                   rate_expected(0, m, PowerPolicy::constant(1, 2.0), topo, 10, b).mean);
}

// Variance of the estimator halves when draws double: compare the spread of
// many independent estimates at 100 vs 200 draws.
TEST(RateExpectedTest, VarianceHalvesWithDoubledDraws) {
  auto topo = two_by_two();
  Matching m(1, 2);
  m.owner = {0, 0};
  auto policy = PowerPolicy::constant(2, 8.0);
  auto spread = [&](std::size_t draws) {
    double s = 0.0, s2 = 0.0;
    const int reps = 2000;
    for (int r = 0; r < reps; ++r) {
      Rng rng(derive_seed(draws, {static_cast<std::uint64_t>(r)}));
      const double v = expected_rates(topo, 0, m.slices_of(0), policy, draws, rng).total.mean;
      s += v;
      s2 += v * v;
    }
    return (s2 - s * s / reps) / (reps - 1);
  };
  const double ratio = spread(100) / spread(200);
  // Sample-variance ratio of two 2000-replicate samples: sd of log-ratio ~ 0.045.
  EXPECT_GT(ratio, 1.7);
  EXPECT_LT(ratio, 2.35);
}

}  // namespace
}  // namespace moslice
