#include "cryoqaoa/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cryoqaoa/errors.hpp"

namespace cryoqaoa {

void QaoaParams::validate() const {
  if (gammas.empty()) throw DomainError("QAOA needs at least one layer");
  if (gammas.size() != betas.size()) {
    throw DomainError("gammas and betas must have the same length");
  }
  if (param_bitwidth < 1) throw DomainError("parameter bit width must be >= 1");
}

Statevector::Statevector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_ >= 63 || amps_.size() != (std::size_t{1} << n_)) {
    throw DimensionError("statevector needs 2^N amplitudes");
  }
}

Statevector Statevector::uniform(std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  return Statevector(n_qubits, std::vector<Amplitude>(dim, Amplitude(a, 0.0)));
}

double Statevector::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return p;
}

void Statevector::apply_phase(std::span<const double> diagonal, double gamma) {
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    amps_[k] *= std::polar(1.0, -gamma * diagonal[k]);
  }
}

void Statevector::apply_mixer(double beta) {
  // exp(-i beta X) = [[cos, -i sin], [-i sin, cos]]
  const double c = std::cos(beta);
  const Amplitude mis(0.0, -std::sin(beta));
  for (std::size_t q = 0; q < n_; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
      for (std::size_t k = base; k < base + stride; ++k) {
        const Amplitude a0 = amps_[k];
        const Amplitude a1 = amps_[k + stride];
        amps_[k] = c * a0 + mis * a1;
        amps_[k + stride] = mis * a0 + c * a1;
      }
    }
  }
}

std::vector<double> cost_diagonal(const IsingInstance& instance) {
  const auto n = instance.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> diag(dim, 0.0);
  std::vector<std::pair<std::size_t, double>> linear;
  std::vector<std::pair<QubitPair, double>> pairs;
  for (const auto& [i, s] : instance.linear_terms()) linear.emplace_back(i, to_double(s));
  for (const auto& [p, c] : instance.pair_terms()) pairs.emplace_back(p, to_double(c));
  for (std::size_t k = 0; k < dim; ++k) {
    double v = 0.0;
    for (const auto& [i, s] : linear) {
      if ((k >> i) & 1U) v += s;
    }
    for (const auto& [p, c] : pairs) {
      if (((k >> p.i) ^ (k >> p.j)) & 1U) v += c;
    }
    diag[k] = v;
  }
  return diag;
}

Statevector prepare_state(const IsingInstance& instance, const QaoaParams& params,
                          std::size_t statevector_limit) {
  params.validate();
  if (instance.n_qubits() > statevector_limit) {
    throw CapacityError("N = " + std::to_string(instance.n_qubits()) +
                        " exceeds the statevector limit of " +
                        std::to_string(statevector_limit));
  }
  const auto diag = cost_diagonal(instance);
  auto state = Statevector::uniform(instance.n_qubits());
  for (std::size_t l = 0; l < params.layers(); ++l) {
    state.apply_phase(diag, params.gammas[l]);
    state.apply_mixer(params.betas[l]);
  }
  return state;
}

std::vector<BitString> sample(const Statevector& state, std::size_t t,
                              std::uint64_t seed) {
  if (t < 1) throw DomainError("sample needs t >= 1");
  const auto probs = state.probabilities();
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double total = cdf.back();

  Rng rng(seed);
  std::vector<BitString> out;
  out.reserve(t);
  for (std::size_t k = 0; k < t; ++k) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Skip zero-probability states at the upper edge.
    if (it == cdf.end()) it = std::prev(cdf.end());
    while (it != cdf.begin() && probs[static_cast<std::size_t>(it - cdf.begin())] == 0.0) --it;
    out.push_back(BitString::from_index(static_cast<std::uint64_t>(it - cdf.begin()),
                                        state.n_qubits()));
  }
  return out;
}

BernoulliModel BernoulliModel::uniform(std::size_t n_qubits, double p,
                                       std::uint64_t seed) {
  return BernoulliModel{std::vector<double>(n_qubits, p), seed};
}

std::vector<BitString> synthetic_trials(const BernoulliModel& model,
                                        std::size_t trial_count) {
  for (const double p : model.probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
  }
  Rng rng(model.seed);
  std::vector<BitString> out;
  out.reserve(trial_count);
  const auto n = model.probabilities.size();
  for (std::size_t t = 0; t < trial_count; ++t) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
      bits[i] = rng.uniform() < model.probabilities[i] ? 1 : 0;
    }
    out.emplace_back(std::move(bits));
  }
  return out;
}

OptimizeResult optimize(const IsingInstance& instance, const QaoaParams& initial,
                        const OptimizeOptions& options) {
  initial.validate();
  const auto layers = initial.layers();

  auto energy_of = [&](const QaoaParams& p) {
    const auto state = prepare_state(instance, p, options.statevector_limit);
    const auto trials = sample(state, options.trials_per_step, options.seed);
    return to_double(sampled_energy(instance, trials));
  };
  auto coord = [&](QaoaParams& p, std::size_t c) -> double& {
    return c < layers ? p.gammas[c] : p.betas[c - layers];
  };

  OptimizeResult result{initial, 0.0, {}};
  if (options.steps == 0) {
    result.best_energy = energy_of(initial);
    return result;
  }

  double best = energy_of(initial);
  double delta = options.initial_step;
  const std::size_t n_coords = 2 * layers;
  std::size_t since_improvement = 0;

  for (std::size_t step = 0; step < options.steps; ++step) {
    const std::size_t c = step % n_coords;
    double probed = best;
    bool improved = false;
    for (const double sign : {+1.0, -1.0}) {
      QaoaParams cand = result.params;
      coord(cand, c) += sign * delta;
      const double e = energy_of(cand);
      probed = e;
      if (e < best) {
        best = e;
        result.params = std::move(cand);
        improved = true;
        break;
      }
    }
    since_improvement = improved ? 0 : since_improvement + 1;
    if (since_improvement >= n_coords) {
      delta = std::max(delta / 2.0, options.min_step);
      since_improvement = 0;
    }
    result.trace.push_back(OptimizeStep{step, probed, best});
  }
  result.best_energy = best;
  return result;
}

}  // namespace cryoqaoa
