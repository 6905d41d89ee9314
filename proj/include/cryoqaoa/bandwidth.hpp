#pragma once

// Inter-temperature bandwidth model. All bandwidths are bits per second;
// durations come in as Nanoseconds and are converted here only.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cryoqaoa/timing.hpp"

namespace cryoqaoa {

// bits / t, in bits per second.
double bits_per_second(double bits, Nanoseconds t);

// Parameter transfer for the first trial: 2 l b_p bits must arrive before
// layer l starts. For L = 1 only the l = 1 deadline exists.
double bw_inst(const GateTimings& timings, const ExecutionProfile& profile,
               std::int64_t param_bits);

// N bits per circuit execution.
double bw_meas(const GateTimings& timings, const ExecutionProfile& profile);
double bw_meas(std::int64_t n, Nanoseconds t_qc);

// M MSBs every 2^(b-1) trials. Requires b >= 2 and m >= 1.
double bw_msb(std::int64_t m, int b, Nanoseconds t_qc);
// b M residual bits collected within t_c.
double bw_non_msb(std::int64_t m, int b, Nanoseconds t_c);
// Shortest t_c that keeps bw_non_msb <= bw_msb: b 2^(b-1) t_QC.
Nanoseconds min_collection_time(int b, Nanoseconds t_qc);

struct CounterWidthChoice {
  int b = 1;
  // True when even b = 1 violates b 2^b < 2 r T; b is then clamped to 1.
  bool bound_unsatisfiable = false;
};

// Largest b >= 1 with b 2^b < 2 r T.
CounterWidthChoice choose_b(std::int64_t trials, double r);

// bw_msb / bw_meas = (M / N) / 2^(b-1); t_QC cancels.
double reduction_ratio(std::int64_t m, int b, std::int64_t n);

// 1 + b 2^(b-1) / T.
double overhead_factor(std::int64_t trials, int b);

struct BandwidthReport {
  double bw_inst = 0;
  double bw_meas = 0;
  double bw_msb = 0;
  double bw_non_msb = 0;
  double bw_proposed = 0;  // max(bw_msb, bw_non_msb)
  double reduction_ratio = 0;  // bw_proposed / bw_meas
  int chosen_b = 0;
  Nanoseconds t_qc{0};
  Nanoseconds t_c{0};
  double overhead_factor = 1;
};

struct BandwidthInputs {
  GateTimings timings;
  ExecutionProfile profile;
  std::int64_t param_bits = 32;
  std::int64_t counters_in_use = 1;  // M
  int b = 2;
  std::int64_t trials = 1;
  // Defaults to min_collection_time(b, t_QC).
  std::optional<Nanoseconds> t_c;
};

BandwidthReport bandwidth_report(const BandwidthInputs& in);

struct SweepContext {
  std::int64_t n_qubits = 1000;
  Nanoseconds t_qc = kCanonicalCircuitTime;
  // Counters in use. Unset means the large-N limit M / N -> 1, which gives
  // the plain 1 / 2^(b-1) ratio.
  std::optional<std::int64_t> counters_in_use;
};

struct SweepRow {
  std::int64_t trials = 0;
  double r = 0;
  int b = 1;
  bool bound_unsatisfiable = false;
  double reduction_ratio = 0;
  double overhead_factor = 1;
  double bw_meas_bps = 0;
  double bw_proposed_bps = 0;
};

// One row per (T, r) in T-major order. Throws DomainError on an empty grid.
std::vector<SweepRow> staircase_sweep(std::span<const std::int64_t> trial_counts,
                                      std::span<const double> r_grid,
                                      const SweepContext& context = {});

}  // namespace cryoqaoa
