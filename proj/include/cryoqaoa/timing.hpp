#pragma once

// Analytical execution-time model of one QAOA circuit: per-layer time
//   t_L  = S t_Rz + 2 C t_Ent + N t_Rx,   t_Ent = 2 t_CNOT + t_Rz
// and whole-circuit time
//   t_QC = (N t_reset + N t_init + L t_L + N t_meas) / P.
// No scheduling is simulated; P is an aggregate gate-level parallelism.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cryoqaoa {

using Nanoseconds = std::chrono::duration<double, std::nano>;

struct GateTimings {
  Nanoseconds t_reset{0};
  Nanoseconds t_init{0};
  Nanoseconds t_rx{0};
  Nanoseconds t_rz{0};
  Nanoseconds t_cnot{0};
  Nanoseconds t_meas{0};

  Nanoseconds t_ent() const { return 2.0 * t_cnot + t_rz; }
  // Throws DomainError on a negative duration.
  void validate() const;
};

// {reset, init, rx, rz, cnot, meas} = {100, 10, 10, 10, 60, 380} ns.
GateTimings v1_gate_timings();
// Named preset lookup; nullopt for unknown names.
std::optional<GateTimings> timing_preset(std::string_view name);

// Canonical circuit time for the paper-v1 preset, counted per qubit as
// reset + (init, Rx, Rz) + 4 CNOT + meas.
inline constexpr Nanoseconds kCanonicalCircuitTime{750.0};
Nanoseconds per_qubit_circuit_time(const GateTimings& timings);

struct ExecutionProfile {
  std::int64_t n_qubits = 1;     // N
  std::int64_t linear_terms = 0; // S
  std::int64_t pair_terms = 0;   // C
  std::int64_t layers = 1;       // L
  std::int64_t parallelism = 1;  // P

  // S = 0, C = N - 1, L = 1, P = N.
  static ExecutionProfile worst_case(std::int64_t n);
  void validate() const;
};

Nanoseconds layer_time(const GateTimings& timings, std::int64_t s, std::int64_t c,
                       std::int64_t n);
Nanoseconds circuit_time(const GateTimings& timings, std::int64_t s, std::int64_t c,
                         std::int64_t n, std::int64_t l, std::int64_t p);

inline Nanoseconds layer_time(const GateTimings& timings, const ExecutionProfile& e) {
  return layer_time(timings, e.linear_terms, e.pair_terms, e.n_qubits);
}
inline Nanoseconds circuit_time(const GateTimings& timings, const ExecutionProfile& e) {
  return circuit_time(timings, e.linear_terms, e.pair_terms, e.n_qubits, e.layers,
                      e.parallelism);
}

}  // namespace cryoqaoa
