#pragma once

// Invariant audit for the counter architecture: on randomized or
// exhaustively enumerated (instance, trial sequence, b) cases it checks
//  - exactness: counter estimate == sampled energy, in exact arithmetic;
//  - reconstruction: upper * 2^(b-1) + value == running tally after every
//    boundary;
//  - smoothing: at most ceil(M / 2^(b-1)) MSB bits per trial and exactly M
//    bits in every window of 2^(b-1) consecutive trials;
//  - readout round trip for every value of every width in range.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cryoqaoa/counter_arch.hpp"
#include "cryoqaoa/ising.hpp"
#include "cryoqaoa/qaoa.hpp"

namespace cryoqaoa {

struct AuditCase {
  IsingInstance instance{1};
  std::vector<BitString> trials;
  int b = 2;
};

struct AuditViolation {
  std::string property;  // "exactness", "reconstruction", "smoothing", "readout"
  std::string detail;
  std::optional<std::uint64_t> divergence_trial;
  AuditCase counterexample;
};

struct AuditReport {
  std::size_t cases = 0;
  std::uint64_t trials = 0;
  std::uint64_t states = 0;  // exhaustive mode: distinct states explored
  std::size_t max_bits_in_trial = 0;
  std::optional<AuditViolation> violation;

  bool ok() const { return !violation.has_value(); }
};

// Checks one case; nullopt when every property holds.
std::optional<AuditViolation> check_case(const AuditCase& c, Fault fault = Fault::none);

// Greedy shrink: truncate at the divergence, then drop trials, coefficients
// and counter bits while the case keeps failing.
AuditViolation minimize_violation(AuditViolation violation, Fault fault = Fault::none);

struct RandomAuditOptions {
  std::size_t instances = 1000;
  std::size_t n_max = 12;
  std::size_t t_max = 500;
  int b_min = 2;
  int b_max = 8;
  int coef_min = -5;
  int coef_max = 5;
  std::uint64_t seed = 1;
  Fault fault = Fault::none;
};

AuditCase random_case(Rng& rng, const RandomAuditOptions& options);
AuditReport run_random_audit(const RandomAuditOptions& options);

struct ExhaustiveAuditOptions {
  std::size_t n_max = 3;
  std::size_t t_max = 16;
  int b = 2;
  Fault fault = Fault::none;
};

// Every nonzero-coefficient pattern on N <= n_max qubits and every trial
// sequence of length 1..t_max. Sequences are walked depth-first; a prefix
// whose (length, counter values, reconstruction errors) state was already
// verified is not expanded again because its continuations are identical.
// Each pattern is checked with coefficients (2 t_max + 1)^k, for which equal
// energies imply equal per-entry totals and therefore equality for every
// coefficient choice with the same pattern.
AuditReport run_exhaustive_audit(const ExhaustiveAuditOptions& options);

// Every value of every width in [b_min, b_max].
std::optional<AuditViolation> check_readout_round_trip(int b_min, int b_max);

std::string format_violation(const AuditViolation& v);

}  // namespace cryoqaoa
