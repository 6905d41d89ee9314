#include "cryoqaoa/power.hpp"

#include <algorithm>
#include <cmath>

#include "cryoqaoa/bandwidth.hpp"
#include "cryoqaoa/errors.hpp"

namespace cryoqaoa {

void CableSpec::validate() const {
  if (!(heat_inflow_mw >= 0.0 && amp_power_mw >= 0.0 && capacity_bps > 0.0)) {
    throw DomainError("cable spec needs non-negative power and positive capacity");
  }
}

CablePower cable_power(double bw_bps, const CableSpec& spec) {
  spec.validate();
  if (bw_bps < 0.0) throw DomainError("bandwidth must be non-negative");
  const auto needed = static_cast<std::int64_t>(std::ceil(bw_bps / spec.capacity_bps));
  const auto cables = std::max<std::int64_t>(1, needed);
  return CablePower{cables,
                    static_cast<double>(cables) * (spec.heat_inflow_mw + spec.amp_power_mw)};
}

void SfqPowerSpec::validate() const {
  if (!(phi0_wb > 0.0 && freq_hz > 0.0 && bias_fixed_a >= 0.0 && bias_per_bit_a >= 0.0)) {
    throw DomainError("invalid SFQ power spec");
  }
}

double counter_power_per_entry_w(int b, const SfqPowerSpec& spec) {
  if (b < 1) throw DomainError("counter width must be >= 1");
  spec.validate();
  return spec.bias_current_a(b) * spec.freq_hz * spec.phi0_wb * 2.0;
}

double total_counter_power_w(std::int64_t n, int b, const SfqPowerSpec& spec) {
  if (n < 1) throw DomainError("total_counter_power needs N >= 1");
  const double entries = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
  return entries * counter_power_per_entry_w(b, spec);
}

int ceil_log2(std::int64_t n) {
  if (n < 1) throw DomainError("ceil_log2 needs n >= 1");
  int b = 0;
  while ((std::int64_t{1} << b) < n) ++b;
  return b;
}

int CounterWidthPolicy::resolve(std::int64_t n) const {
  if (kind == Kind::fixed) return fixed_b;
  return std::max(2, ceil_log2(n));
}

ComparisonTable system_comparison(std::span<const std::int64_t> n_range,
                                  const ComparisonOptions& options) {
  ComparisonTable table;
  table.rows.reserve(n_range.size());
  for (const auto n : n_range) {
    if (n < 1) throw DomainError("system_comparison needs N >= 1");
    ComparisonRow row;
    row.n_qubits = n;
    row.b = options.b_policy.resolve(n);
    row.t_qc = options.t_qc.value_or(
        circuit_time(options.timings, ExecutionProfile::worst_case(n)));

    row.baseline.n_qubits = n;
    row.baseline.bw_required_bps = bw_meas(n, row.t_qc);
    const auto base_cables = cable_power(row.baseline.bw_required_bps, options.cable);
    row.baseline.n_cables = base_cables.n_cables;
    row.baseline.cable_power_mw = base_cables.power_mw;
    row.baseline.total_mw = base_cables.power_mw;

    row.proposed.n_qubits = n;
    const std::int64_t m = n - 1;
    row.proposed.bw_required_bps = m >= 1 ? bw_msb(m, row.b, row.t_qc) : 0.0;
    const auto prop_cables = cable_power(row.proposed.bw_required_bps, options.cable);
    row.proposed.n_cables = prop_cables.n_cables;
    row.proposed.cable_power_mw = prop_cables.power_mw;
    row.proposed.counter_power_w = total_counter_power_w(n, row.b, options.sfq);
    row.proposed.total_mw = prop_cables.power_mw + row.proposed.counter_power_w * 1e3;

    if (!table.crossover && row.proposed.total_mw < row.baseline.total_mw) {
      table.crossover = n;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace cryoqaoa
