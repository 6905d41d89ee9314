#include <gtest/gtest.h>

#include <cmath>

#include "cryoqaoa/errors.hpp"
#include "cryoqaoa/power.hpp"

using namespace cryoqaoa;

TEST(Power, Cables) {
  const auto c = cable_power(2.5e9);
  EXPECT_EQ(c.n_cables, 3);
  EXPECT_DOUBLE_EQ(c.power_mw, 34.5);
  EXPECT_EQ(cable_power(0.0).n_cables, 1);
  EXPECT_EQ(cable_power(1e9).n_cables, 1);
  EXPECT_EQ(cable_power(1e9 + 1).n_cables, 2);
  EXPECT_THROW(cable_power(-1.0), DomainError);
  EXPECT_THROW(cable_power(1.0, CableSpec{1.0, 1.0, 0.0}), DomainError);
}

TEST(Power, CounterEntry) {
  EXPECT_NEAR(counter_power_per_entry_w(3) * 1e12, 45.93, 1e-9);
  EXPECT_NEAR(counter_power_per_entry_w(10) * 1e12, 113.9, 1e-9);
  for (int b = 1; b <= 20; ++b) {
    const double affine = (9.71 * b + 16.8) * 1e-12;
    EXPECT_NEAR(counter_power_per_entry_w(b) / affine, 1.0, 0.005);
  }
  EXPECT_THROW(counter_power_per_entry_w(0), DomainError);
}

TEST(Power, BackSolvedBiasCurrents) {
  const SfqPowerSpec spec;
  // I = P / (f Phi0 2), inverted by hand.
  const double per_bit = 9.71e-12 / (1.33e6 * 2.068e-15 * 2);
  const double fixed = 16.8e-12 / (1.33e6 * 2.068e-15 * 2);
  EXPECT_NEAR(spec.bias_per_bit_a / per_bit, 1.0, 1e-3);
  EXPECT_NEAR(spec.bias_fixed_a / fixed, 1.0, 1e-3);
  EXPECT_NEAR(spec.bias_per_bit_a * 1e3, 1.765, 0.001);
  EXPECT_NEAR(spec.bias_fixed_a * 1e3, 3.054, 0.001);
}

TEST(Power, TotalCounterPower) {
  EXPECT_NEAR(total_counter_power_w(1000, 10), 500500 * 113.9e-12, 1e-12);
  EXPECT_NEAR(total_counter_power_w(1000, 10) * 1e6, 57.0, 0.1);
  EXPECT_DOUBLE_EQ(total_counter_power_w(1, 4), counter_power_per_entry_w(4));
  EXPECT_NEAR(total_counter_power_w(20000, 8) / total_counter_power_w(10000, 8), 4.0, 1e-3);
}

TEST(Power, WidthPolicy) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(750), 10);
  EXPECT_EQ(ceil_log2(1024), 10);
  EXPECT_EQ(ceil_log2(1025), 11);
  EXPECT_EQ(CounterWidthPolicy::log2_n().resolve(2), 2);
  EXPECT_EQ(CounterWidthPolicy::log2_n().resolve(751), 10);
  EXPECT_EQ(CounterWidthPolicy::fixed(3).resolve(4096), 3);
}

TEST(Power, CrossoverAt751) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 2; n <= 4096; ++n) ns.push_back(n);
  const auto table = system_comparison(ns);
  ASSERT_TRUE(table.crossover);
  EXPECT_EQ(*table.crossover, 751);
  const auto& at750 = table.rows[750 - 2];
  const auto& at751 = table.rows[751 - 2];
  EXPECT_EQ(at750.baseline.n_cables, 1);
  EXPECT_EQ(at751.baseline.n_cables, 2);
  EXPECT_EQ(at751.proposed.n_cables, 1);
  EXPECT_DOUBLE_EQ(at751.proposed.total_mw,
                   11.5 + 751.0 * 752.0 / 2.0 * (9.71 * 10 + 16.8) * 1e-9);
}

TEST(Power, SmallNProposedPaysCounterOverhead) {
  const std::vector<std::int64_t> ns{100};
  const auto row = system_comparison(ns).rows.at(0);
  EXPECT_EQ(row.baseline.n_cables, 1);
  EXPECT_EQ(row.proposed.n_cables, 1);
  const double counters_mw = 5050 * (9.71 * 7 + 16.8) * 1e-9;
  EXPECT_NEAR(row.proposed.total_mw - row.baseline.total_mw, counters_mw, 1e-12);
}

TEST(Power, FreeCablesMeanNoCrossover) {
  ComparisonOptions opts;
  opts.cable = CableSpec{0.0, 0.0, 1e9};
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 2; n <= 4096; n += 7) ns.push_back(n);
  EXPECT_FALSE(system_comparison(ns, opts).crossover);
}

TEST(Power, BaselineIsStepFunctionOfCapacity) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 2; n <= 4096; ++n) ns.push_back(n);
  const auto table = system_comparison(ns);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    const double bw = row.baseline.bw_required_bps;
    EXPECT_EQ(row.baseline.n_cables, std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(bw / 1e9))));
    if (k > 0) {
      EXPECT_GE(row.baseline.total_mw, table.rows[k - 1].baseline.total_mw);
    }
  }
}

TEST(Power, ProposedBandwidthStaysBounded) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 2; n <= 1'000'000; n = n < 5000 ? n + 1 : n * 11 / 10) ns.push_back(n);
  for (const auto& row : system_comparison(ns).rows) {
    const double per_tqc = row.proposed.bw_required_bps * 750e-9;
    EXPECT_LE(per_tqc, 2.0 * (1.0 + 1.0 / row.n_qubits)) << row.n_qubits;
    EXPECT_EQ(row.proposed.n_cables, 1);
  }
}

TEST(Power, FixedWidthRatioAcrossN) {
  ComparisonOptions opts;
  opts.b_policy = CounterWidthPolicy::fixed(3);
  const std::vector<std::int64_t> ns{101, 201, 401, 801};
  const auto rows = system_comparison(ns, opts).rows;
  for (const auto& row : rows) {
    EXPECT_DOUBLE_EQ(row.proposed.bw_required_bps / row.baseline.bw_required_bps,
                     (row.n_qubits - 1.0) / row.n_qubits / 4.0);
  }
}
