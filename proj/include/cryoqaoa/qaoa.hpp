#pragma once

// Desk-scale QAOA: exact statevector preparation, measurement sampling, a
// synthetic Bernoulli bitstring source for large-N bandwidth studies, and a
// derivative-free parameter loop.
//
// Engine conventions:
//  - phase separation applies exp(-i gamma C(z)) to basis state |z>, using
//    the classical cost C(z) of the instance;
//  - the mixer is prod_k exp(-i beta X_k);
//  - exactly L alternating (phase, mixer) pairs act on |+>^N;
//  - basis index bit k is qubit k.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cryoqaoa/ising.hpp"

namespace cryoqaoa {

inline constexpr std::size_t kDefaultStatevectorLimit = 16;

// Seedable generator with a platform-independent sequence: mt19937_64 is
// fully specified by the standard and doubles are built from its top 53 bits
// rather than through std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;
  int param_bitwidth = 32;  // b_p

  std::size_t layers() const { return gammas.size(); }
  // Throws DomainError unless len(gammas) == len(betas) >= 1 and b_p >= 1.
  void validate() const;
};

class Statevector {
 public:
  using Amplitude = std::complex<double>;

  Statevector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);
  // |+>^N
  static Statevector uniform(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  const Amplitude& operator[](std::uint64_t index) const { return amps_[index]; }
  double norm_squared() const;
  std::vector<double> probabilities() const;

  // exp(-i gamma * diag[k]) on every basis state k.
  void apply_phase(std::span<const double> diagonal, double gamma);
  // exp(-i beta X) on every qubit.
  void apply_mixer(double beta);

 private:
  std::size_t n_;
  std::vector<Amplitude> amps_;
};

// C(z) for every basis index, as doubles.
std::vector<double> cost_diagonal(const IsingInstance& instance);

Statevector prepare_state(const IsingInstance& instance, const QaoaParams& params,
                          std::size_t statevector_limit = kDefaultStatevectorLimit);

// `t` independent draws from |a_z|^2; deterministic in `seed`.
std::vector<BitString> sample(const Statevector& state, std::size_t t,
                              std::uint64_t seed);

struct BernoulliModel {
  std::vector<double> probabilities;  // p_i per qubit
  std::uint64_t seed = 0;

  static BernoulliModel uniform(std::size_t n_qubits, double p, std::uint64_t seed);
};

// Each qubit independently 1 with probability p_i.
std::vector<BitString> synthetic_trials(const BernoulliModel& model,
                                        std::size_t trial_count);

struct OptimizeStep {
  std::size_t step = 0;
  double energy = 0.0;       // sampled energy of the candidate probed this step
  double best_energy = 0.0;  // best seen so far (non-increasing)
};

struct OptimizeResult {
  QaoaParams params;
  double best_energy = 0.0;
  std::vector<OptimizeStep> trace;
};

struct OptimizeOptions {
  std::size_t trials_per_step = 256;
  std::size_t steps = 50;
  std::uint64_t seed = 0;
  double initial_step = 0.25;
  double min_step = 1e-4;
  std::size_t statevector_limit = kDefaultStatevectorLimit;
};

// Coordinate search over (gamma_1..gamma_L, beta_1..beta_L). Each step probes
// one coordinate in both directions; the step size halves after a full sweep
// without improvement. Every energy evaluation reuses the same sampling seed
// so the objective is a deterministic function of the parameters.
OptimizeResult optimize(const IsingInstance& instance, const QaoaParams& initial,
                        const OptimizeOptions& options);

}  // namespace cryoqaoa
