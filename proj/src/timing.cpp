#include "cryoqaoa/timing.hpp"

#include "cryoqaoa/errors.hpp"

namespace cryoqaoa {

void GateTimings::validate() const {
  for (const auto t : {t_reset, t_init, t_rx, t_rz, t_cnot, t_meas}) {
    if (t.count() < 0.0) throw DomainError("gate durations must be non-negative");
  }
}

GateTimings v1_gate_timings() {
  return GateTimings{Nanoseconds{100}, Nanoseconds{10}, Nanoseconds{10},
                     Nanoseconds{10},  Nanoseconds{60}, Nanoseconds{380}};
}

std::optional<GateTimings> timing_preset(std::string_view name) {
  if (name == "paper-v1") return v1_gate_timings();
  return std::nullopt;
}

Nanoseconds per_qubit_circuit_time(const GateTimings& t) {
  return t.t_reset + t.t_init + t.t_rx + t.t_rz + 4.0 * t.t_cnot + t.t_meas;
}

ExecutionProfile ExecutionProfile::worst_case(std::int64_t n) {
  return ExecutionProfile{n, 0, n - 1, 1, n};
}

void ExecutionProfile::validate() const {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  if (linear_terms < 0 || pair_terms < 0) throw DomainError("term counts must be >= 0");
  if (layers < 0) throw DomainError("L must be >= 0");
  if (parallelism < 1) throw DomainError("P must be >= 1");
  if (parallelism > n_qubits) throw DomainError("P must not exceed N");
}

Nanoseconds layer_time(const GateTimings& t, std::int64_t s, std::int64_t c,
                       std::int64_t n) {
  return static_cast<double>(s) * t.t_rz + static_cast<double>(2 * c) * t.t_ent() +
         static_cast<double>(n) * t.t_rx;
}

Nanoseconds circuit_time(const GateTimings& t, std::int64_t s, std::int64_t c,
                         std::int64_t n, std::int64_t l, std::int64_t p) {
  if (p < 1) throw DomainError("parallelism P must be >= 1");
  const double nd = static_cast<double>(n);
  const Nanoseconds serial = nd * t.t_reset + nd * t.t_init +
                             static_cast<double>(l) * layer_time(t, s, c, n) +
                             nd * t.t_meas;
  return serial / static_cast<double>(p);
}

}  // namespace cryoqaoa
