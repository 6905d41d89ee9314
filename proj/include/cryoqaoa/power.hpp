#pragma once

// Dissipation of the 300 K -> 4 K link: per-cable heat inflow plus amplifier
// power, and ERSFQ dynamic power of the cryogenic counter bank,
// P = I_bias * f * Phi0 * 2.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cryoqaoa/timing.hpp"

namespace cryoqaoa {

struct CableSpec {
  double heat_inflow_mw = 1.0;
  double amp_power_mw = 10.5;
  double capacity_bps = 1e9;

  void validate() const;
};

struct CablePower {
  std::int64_t n_cables = 1;
  double power_mw = 0.0;
};

// At least one cable, otherwise ceil(bw / capacity).
CablePower cable_power(double bw_bps, const CableSpec& spec = {});

// Per-entry power at the reference operating point, affine in b.
inline constexpr double kEntryPowerPerBitPw = 9.71;
inline constexpr double kEntryPowerFixedPw = 16.8;
inline constexpr double kFluxQuantumWb = 2.068e-15;
inline constexpr double kCounterFrequencyHz = 1.33e6;

struct SfqPowerSpec {
  double phi0_wb = kFluxQuantumWb;
  double freq_hz = kCounterFrequencyHz;
  // Bias current per entry I(b) = fixed + b * per_bit, back-solved so the
  // reference point reproduces (9.71 b + 16.8) pW.
  double bias_fixed_a = kEntryPowerFixedPw * 1e-12 / (2.0 * kCounterFrequencyHz * kFluxQuantumWb);
  double bias_per_bit_a = kEntryPowerPerBitPw * 1e-12 / (2.0 * kCounterFrequencyHz * kFluxQuantumWb);

  double bias_current_a(int b) const { return bias_fixed_a + b * bias_per_bit_a; }
  void validate() const;
};

double counter_power_per_entry_w(int b, const SfqPowerSpec& spec = {});
// N(N+1)/2 provisioned entries.
double total_counter_power_w(std::int64_t n, int b, const SfqPowerSpec& spec = {});

struct CounterWidthPolicy {
  enum class Kind { fixed, log2_n };
  Kind kind = Kind::log2_n;
  int fixed_b = 3;

  static CounterWidthPolicy fixed(int b) { return {Kind::fixed, b}; }
  static CounterWidthPolicy log2_n() { return {Kind::log2_n, 0}; }
  // ceil(log2 N) for log2_n, never below 2.
  int resolve(std::int64_t n) const;
};

int ceil_log2(std::int64_t n);

struct PowerReport {
  std::int64_t n_qubits = 0;
  double bw_required_bps = 0.0;
  std::int64_t n_cables = 0;
  double cable_power_mw = 0.0;
  double counter_power_w = 0.0;
  double total_mw = 0.0;
};

struct ComparisonOptions {
  GateTimings timings = v1_gate_timings();
  // Unset: worst-case circuit time per N from the analytical model.
  std::optional<Nanoseconds> t_qc = kCanonicalCircuitTime;
  CableSpec cable;
  SfqPowerSpec sfq;
  CounterWidthPolicy b_policy;
};

struct ComparisonRow {
  std::int64_t n_qubits = 0;
  int b = 0;
  Nanoseconds t_qc{0};
  PowerReport baseline;
  PowerReport proposed;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  // First N (in the given order) where proposed total < baseline total.
  std::optional<std::int64_t> crossover;
};

// Worst case per N (P = N, S = 0, C = N - 1, L = 1). Baseline ships
// bw_meas; the proposed link ships MSBs of M = N - 1 counters and pays for
// N(N+1)/2 provisioned counter entries.
ComparisonTable system_comparison(std::span<const std::int64_t> n_range,
                                  const ComparisonOptions& options = {});

}  // namespace cryoqaoa
