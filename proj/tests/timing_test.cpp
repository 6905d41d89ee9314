#include <gtest/gtest.h>

#include "cryoqaoa/errors.hpp"
#include "cryoqaoa/timing.hpp"

using namespace cryoqaoa;

namespace {

// Direct expansion in plain doubles (ns).
double oracle_circuit_ns(double s, double c, double n, double l, double p) {
  const double t_layer = s * 10 + 2 * c * (2 * 60 + 10) + n * 10;
  return (n * 100 + n * 10 + l * t_layer + n * 380) / p;
}

}  // namespace

TEST(Timing, Preset) {
  const auto t = v1_gate_timings();
  EXPECT_EQ(t.t_reset.count(), 100);
  EXPECT_EQ(t.t_init.count(), 10);
  EXPECT_EQ(t.t_rx.count(), 10);
  EXPECT_EQ(t.t_rz.count(), 10);
  EXPECT_EQ(t.t_cnot.count(), 60);
  EXPECT_EQ(t.t_meas.count(), 380);
  EXPECT_EQ(t.t_ent().count(), 130);
  ASSERT_TRUE(timing_preset("paper-v1"));
  EXPECT_EQ(timing_preset("paper-v1")->t_meas, t.t_meas);
  EXPECT_FALSE(timing_preset("nope"));
}

TEST(Timing, PerQubitAccountingIs750) {
  EXPECT_EQ(per_qubit_circuit_time(v1_gate_timings()).count(), 750.0);
  EXPECT_EQ(per_qubit_circuit_time(v1_gate_timings()), kCanonicalCircuitTime);
}

TEST(Timing, LayerTimeExamples) {
  GateTimings t;
  t.t_rx = Nanoseconds{10};
  EXPECT_EQ(layer_time(t, 0, 0, 1).count(), 10.0);
  EXPECT_EQ(layer_time(GateTimings{}, 5, 7, 9).count(), 0.0);
  // Per-qubit share tends to 2 t_Ent + t_Rx = 270 ns.
  const auto p = v1_gate_timings();
  const std::int64_t n = 1'000'000;
  EXPECT_NEAR(layer_time(p, 0, n - 1, n).count() / n, 270.0, 1e-3);
}

TEST(Timing, CircuitTimeExamples) {
  const auto p = v1_gate_timings();
  EXPECT_EQ(circuit_time(p, 0, 0, 8, 0, 8).count(), 490.0);
  for (const std::int64_t n : {2, 7, 64, 1024, 3000}) {
    EXPECT_DOUBLE_EQ(circuit_time(p, 0, n - 1, n, 1, n).count(),
                     oracle_circuit_ns(0, n - 1, n, 1, n));
  }
  // Worst case at N = 1024 differs from the per-qubit 750 ns by about 1.3%.
  const double t1024 = circuit_time(p, ExecutionProfile::worst_case(1024)).count();
  EXPECT_NEAR(t1024, 777980.0 / 1024.0, 1e-9);
  EXPECT_LT(std::abs(t1024 - 750.0) / 750.0, 0.02);
}

TEST(Timing, ParallelismScaling) {
  const auto p = v1_gate_timings();
  EXPECT_EQ(circuit_time(p, 3, 5, 16, 2, 4).count(), 2 * circuit_time(p, 3, 5, 16, 2, 8).count());
  for (const std::int64_t n : {1, 2, 64, 1024}) {
    EXPECT_EQ(circuit_time(p, 0, n - 1, n, 1, 1).count(),
              n * circuit_time(p, 0, n - 1, n, 1, n).count());
  }
  for (const std::int64_t n : {3, 5, 100, 999}) {
    EXPECT_DOUBLE_EQ(circuit_time(p, 0, n - 1, n, 1, 1).count(),
                     n * circuit_time(p, 0, n - 1, n, 1, n).count());
  }
}

TEST(Timing, Monotonicity) {
  const auto base = v1_gate_timings();
  const double t0 = circuit_time(base, 3, 4, 6, 2, 3).count();
  for (auto field : {&GateTimings::t_reset, &GateTimings::t_init, &GateTimings::t_rx,
                     &GateTimings::t_rz, &GateTimings::t_cnot, &GateTimings::t_meas}) {
    auto slower = base;
    slower.*field += Nanoseconds{5};
    EXPECT_GE(circuit_time(slower, 3, 4, 6, 2, 3).count(), t0);
  }
  EXPECT_GE(circuit_time(base, 4, 4, 6, 2, 3).count(), t0);
  EXPECT_GE(circuit_time(base, 3, 5, 6, 2, 3).count(), t0);
  EXPECT_GE(circuit_time(base, 3, 4, 7, 2, 3).count(), t0);
  EXPECT_GE(circuit_time(base, 3, 4, 6, 3, 3).count(), t0);
  EXPECT_LE(circuit_time(base, 3, 4, 6, 2, 4).count(), t0);
}

TEST(Timing, Validation) {
  const auto p = v1_gate_timings();
  EXPECT_THROW(circuit_time(p, 0, 0, 4, 1, 0), DomainError);
  GateTimings bad = p;
  bad.t_cnot = Nanoseconds{-1};
  EXPECT_THROW(bad.validate(), DomainError);
  ExecutionProfile e = ExecutionProfile::worst_case(4);
  EXPECT_EQ(e.pair_terms, 3);
  EXPECT_EQ(e.parallelism, 4);
  EXPECT_NO_THROW(e.validate());
  e.parallelism = 5;
  EXPECT_THROW(e.validate(), DomainError);
}
