#include "cryoqaoa/bandwidth.hpp"

#include <algorithm>
#include <cmath>

#include "cryoqaoa/errors.hpp"

namespace cryoqaoa {
namespace {

constexpr int kMaxModelBits = 62;

void check_counter_bits(int b) {
  if (b < 2) throw DomainError("counter width b must be >= 2");
  if (b > kMaxModelBits) throw DomainError("counter width b too large");
}

}  // namespace

double bits_per_second(double bits, Nanoseconds t) {
  return bits * 1e9 / t.count();
}

double bw_inst(const GateTimings& timings, const ExecutionProfile& profile,
               std::int64_t param_bits) {
  if (profile.layers < 1) throw DomainError("bw_inst needs L >= 1");
  if (profile.parallelism < 1) throw DomainError("P must be >= 1");
  if (param_bits < 0) throw DomainError("b_p must be >= 0");
  const double p = static_cast<double>(profile.parallelism);
  const double bp = static_cast<double>(param_bits);
  const double l = static_cast<double>(profile.layers);

  const Nanoseconds first_deadline =
      static_cast<double>(profile.n_qubits) * (timings.t_reset + timings.t_init);
  double bw = bits_per_second(2.0 * p * bp, first_deadline);
  if (profile.layers >= 2) {
    const Nanoseconds last = (l - 1.0) * layer_time(timings, profile);
    bw = std::max(bw, bits_per_second(2.0 * p * l * bp, last));
  }
  return bw;
}

double bw_meas(std::int64_t n, Nanoseconds t_qc) {
  if (!(t_qc.count() > 0.0)) throw DomainError("t_QC must be positive");
  return bits_per_second(static_cast<double>(n), t_qc);
}

double bw_meas(const GateTimings& timings, const ExecutionProfile& profile) {
  return bw_meas(profile.n_qubits, circuit_time(timings, profile));
}

double bw_msb(std::int64_t m, int b, Nanoseconds t_qc) {
  check_counter_bits(b);
  if (m < 1) throw DomainError("bw_msb needs M >= 1");
  if (!(t_qc.count() > 0.0)) throw DomainError("t_QC must be positive");
  // ldexp keeps bw_msb(b + 1) == bw_msb(b) / 2 exact.
  return std::ldexp(bits_per_second(static_cast<double>(m), t_qc), 1 - b);
}

double bw_non_msb(std::int64_t m, int b, Nanoseconds t_c) {
  if (!(t_c.count() > 0.0)) throw DomainError("t_C must be positive");
  return bits_per_second(static_cast<double>(b) * static_cast<double>(m), t_c);
}

Nanoseconds min_collection_time(int b, Nanoseconds t_qc) {
  check_counter_bits(b);
  return std::ldexp(static_cast<double>(b), b - 1) * t_qc;
}

CounterWidthChoice choose_b(std::int64_t trials, double r) {
  if (trials < 1) throw DomainError("choose_b needs T >= 1");
  if (!(r > 0.0)) throw DomainError("choose_b needs r > 0");
  const double limit = 2.0 * r * static_cast<double>(trials);
  auto fits = [&](int b) { return std::ldexp(static_cast<double>(b), b) < limit; };
  if (!fits(1)) return CounterWidthChoice{1, true};
  int b = 1;
  while (b < kMaxModelBits && fits(b + 1)) ++b;
  return CounterWidthChoice{b, false};
}

double reduction_ratio(std::int64_t m, int b, std::int64_t n) {
  check_counter_bits(b);
  if (n < 1) throw DomainError("reduction_ratio needs N >= 1");
  return std::ldexp(static_cast<double>(m) / static_cast<double>(n), 1 - b);
}

double overhead_factor(std::int64_t trials, int b) {
  if (trials < 1) throw DomainError("overhead_factor needs T >= 1");
  return 1.0 + std::ldexp(static_cast<double>(b), b - 1) / static_cast<double>(trials);
}

BandwidthReport bandwidth_report(const BandwidthInputs& in) {
  BandwidthReport rep;
  rep.t_qc = circuit_time(in.timings, in.profile);
  rep.bw_inst = bw_inst(in.timings, in.profile, in.param_bits);
  rep.bw_meas = bw_meas(in.profile.n_qubits, rep.t_qc);
  rep.chosen_b = in.b;
  rep.t_c = in.t_c.value_or(min_collection_time(in.b, rep.t_qc));
  rep.bw_msb = bw_msb(in.counters_in_use, in.b, rep.t_qc);
  rep.bw_non_msb = bw_non_msb(in.counters_in_use, in.b, rep.t_c);
  rep.bw_proposed = std::max(rep.bw_msb, rep.bw_non_msb);
  rep.reduction_ratio = rep.bw_proposed / rep.bw_meas;
  rep.overhead_factor = overhead_factor(in.trials, in.b);
  return rep;
}

std::vector<SweepRow> staircase_sweep(std::span<const std::int64_t> trial_counts,
                                      std::span<const double> r_grid,
                                      const SweepContext& context) {
  if (trial_counts.empty() || r_grid.empty()) {
    throw DomainError("staircase_sweep needs nonempty T and r grids");
  }
  const double meas = bw_meas(context.n_qubits, context.t_qc);
  std::vector<SweepRow> rows;
  rows.reserve(trial_counts.size() * r_grid.size());
  for (const auto t : trial_counts) {
    for (const double r : r_grid) {
      const auto choice = choose_b(t, r);
      SweepRow row;
      row.trials = t;
      row.r = r;
      row.b = choice.b;
      row.bound_unsatisfiable = choice.bound_unsatisfiable;
      row.overhead_factor = overhead_factor(t, choice.b);
      row.bw_meas_bps = meas;
      // The MSB period 2^(b-1) also paces the b = 1 fallback: one bit per
      // trial per counter, i.e. no reduction.
      const double bits_per_trial =
          context.counters_in_use
              ? static_cast<double>(*context.counters_in_use)
              : static_cast<double>(context.n_qubits);
      row.bw_proposed_bps =
          std::ldexp(bits_per_second(bits_per_trial, context.t_qc), 1 - choice.b);
      row.reduction_ratio = row.bw_proposed_bps / row.bw_meas_bps;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace cryoqaoa
