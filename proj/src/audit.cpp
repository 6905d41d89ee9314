#include "cryoqaoa/audit.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cryoqaoa/errors.hpp"

namespace cryoqaoa {
namespace {

std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng.next() % (hi - lo + 1);
}

// MSB-stream smoothing for a schedule of M entries and period W.
std::optional<std::string> check_smoothing(std::span<const std::size_t> bits,
                                           std::size_t m, std::uint64_t period) {
  const auto slice = static_cast<std::size_t>((m + period - 1) / period);
  for (std::size_t t = 0; t < bits.size(); ++t) {
    if (bits[t] > slice) {
      return "trial " + std::to_string(t) + " sent " + std::to_string(bits[t]) +
             " bits, slice is " + std::to_string(slice);
    }
  }
  if (bits.size() >= period) {
    std::size_t window = std::accumulate(bits.begin(), bits.begin() + period, std::size_t{0});
    for (std::size_t t = period;; ++t) {
      if (window != m) {
        return "window ending at trial " + std::to_string(t - 1) + " sent " +
               std::to_string(window) + " bits, expected M = " + std::to_string(m);
      }
      if (t == bits.size()) break;
      window += bits[t];
      window -= bits[t - period];
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<AuditViolation> check_case(const AuditCase& c, Fault fault) {
  ProposedOptions opts;
  opts.b = c.b;
  opts.fault = fault;
  opts.check_reconstruction = true;
  const auto proposed = run_proposed(c.instance, c.trials, opts);

  if (proposed.first_divergence) {
    return AuditViolation{"reconstruction",
                          "split counter differs from the running tally",
                          proposed.first_divergence, c};
  }
  const auto expected = sampled_energy(c.instance, c.trials);
  if (proposed.energy != expected) {
    return AuditViolation{"exactness",
                          "counter estimate " + format_coefficient(proposed.energy) +
                              " != sampled energy " + format_coefficient(expected),
                          std::nullopt, c};
  }
  const auto period = std::uint64_t{1} << (c.b - 1);
  if (auto why = check_smoothing(proposed.msb_bits_per_trial, proposed.active_count, period)) {
    return AuditViolation{"smoothing", *why, std::nullopt, c};
  }
  return std::nullopt;
}

// Keeps only qubits that appear in some term, renumbered in order.
std::optional<AuditCase> drop_idle_qubits(const AuditCase& c) {
  const auto n = c.instance.n_qubits();
  std::vector<bool> used(n, false);
  for (const auto& [i, s] : c.instance.linear_terms()) used[i] = true;
  for (const auto& [p, v] : c.instance.pair_terms()) used[p.i] = used[p.j] = true;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (used[i]) keep.push_back(i);
  if (keep.empty() || keep.size() == n) return std::nullopt;

  std::vector<std::size_t> index(n, 0);
  for (std::size_t k = 0; k < keep.size(); ++k) index[keep[k]] = k;
  AuditCase out{IsingInstance(keep.size(), c.instance.label()), {}, c.b};
  for (const auto& [i, s] : c.instance.linear_terms()) out.instance.set_linear(index[i], s);
  for (const auto& [p, v] : c.instance.pair_terms()) out.instance.set_pair(index[p.i], index[p.j], v);
  for (const auto& z : c.trials) {
    std::vector<std::uint8_t> bits;
    for (const auto i : keep) bits.push_back(z[i] ? 1 : 0);
    out.trials.emplace_back(std::move(bits));
  }
  return out;
}

AuditViolation minimize_violation(AuditViolation violation, Fault fault) {
  auto still_fails = [&](const AuditCase& c) -> std::optional<AuditViolation> {
    if (c.trials.empty()) return std::nullopt;
    return check_case(c, fault);
  };

  AuditCase best = violation.counterexample;
  auto accept = [&](AuditCase cand) {
    auto v = still_fails(cand);
    if (!v) return false;
    best = std::move(cand);
    violation = std::move(*v);
    return true;
  };

  // Passes repeat until none of them shrinks the case.
  for (bool changed = true; changed;) {
    changed = false;
    if (violation.divergence_trial && *violation.divergence_trial + 1 < best.trials.size()) {
      AuditCase cut = best;
      cut.trials.resize(*violation.divergence_trial + 1);
      changed |= accept(std::move(cut));
    }
    // Drop trials from the back; earlier trials usually feed the divergence.
    for (std::size_t k = best.trials.size(); k-- > 0 && best.trials.size() > 1;) {
      if (k >= best.trials.size()) continue;
      AuditCase cand = best;
      cand.trials.erase(cand.trials.begin() + static_cast<std::ptrdiff_t>(k));
      changed |= accept(std::move(cand));
    }
    const auto linear = best.instance.linear_terms();
    for (const auto& [i, s] : linear) {
      AuditCase cand = best;
      cand.instance.set_linear(i, Coefficient(0));
      changed |= accept(std::move(cand));
    }
    const auto pairs = best.instance.pair_terms();
    for (const auto& [p, c] : pairs) {
      AuditCase cand = best;
      cand.instance.set_pair(p.i, p.j, Coefficient(0));
      changed |= accept(std::move(cand));
    }
    if (auto smaller = drop_idle_qubits(best)) changed |= accept(std::move(*smaller));
    while (best.b > kMinCounterBits) {
      AuditCase cand = best;
      --cand.b;
      if (!accept(std::move(cand))) break;
      changed = true;
    }
  }

  violation.counterexample = std::move(best);
  return violation;
}

AuditCase random_case(Rng& rng, const RandomAuditOptions& o) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, o.n_max));
  AuditCase c{IsingInstance(n, "random"), {}, 2};
  const auto span = static_cast<std::uint64_t>(o.coef_max - o.coef_min);
  auto draw_coef = [&] {
    return Coefficient(o.coef_min + static_cast<std::int64_t>(uniform_int(rng, 0, span)));
  };
  for (std::size_t i = 0; i < n; ++i) c.instance.set_linear(i, draw_coef());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.instance.set_pair(i, j, draw_coef());

  c.b = static_cast<int>(uniform_int(rng, static_cast<std::uint64_t>(o.b_min),
                                     static_cast<std::uint64_t>(o.b_max)));
  const auto t = static_cast<std::size_t>(uniform_int(rng, 1, o.t_max));
  // Biased marginals, some close to 0 or 1, so that counters fill up.
  std::vector<double> p(n);
  for (auto& pi : p) {
    const double u = rng.uniform();
    pi = u < 0.2 ? 0.0 : (u > 0.8 ? 1.0 : rng.uniform());
  }
  c.trials.reserve(t);
  for (std::size_t k = 0; k < t; ++k) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = rng.uniform() < p[i] ? 1 : 0;
    c.trials.emplace_back(std::move(bits));
  }
  return c;
}

AuditReport run_random_audit(const RandomAuditOptions& options) {
  if (options.n_max < 1 || options.t_max < 1 || options.b_min < kMinCounterBits ||
      options.b_max < options.b_min || options.b_max > kMaxCounterBits ||
      options.coef_max < options.coef_min) {
    throw DomainError("invalid random audit bounds");
  }
  AuditReport report;
  Rng rng(options.seed);
  for (std::size_t k = 0; k < options.instances; ++k) {
    const auto c = random_case(rng, options);
    ++report.cases;
    report.trials += c.trials.size();
    // Per-trial maximum is schedule-determined; recompute for the report.
    const auto bank = CounterBank::for_instance(c.instance, c.b);
    report.max_bits_in_trial = std::max(report.max_bits_in_trial, bank.slice_size());
    if (auto v = check_case(c, options.fault)) {
      report.violation = minimize_violation(std::move(*v), options.fault);
      break;
    }
  }
  return report;
}

AuditReport run_exhaustive_audit(const ExhaustiveAuditOptions& options) {
  if (options.n_max < 1 || options.n_max > 4 || options.t_max < 1 ||
      options.b < kMinCounterBits || options.b > kMaxCounterBits) {
    throw DomainError("exhaustive audit supports 1 <= N <= 4, T >= 1");
  }
  AuditReport report;
  const auto base = static_cast<std::int64_t>(2 * options.t_max + 1);

  for (std::size_t n = 1; n <= options.n_max && !report.violation; ++n) {
    const auto entries = provisioned_entry_count(n);
    const std::size_t strings = std::size_t{1} << n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << entries); ++mask) {
      IsingInstance inst(n, "exhaustive");
      std::int64_t weight = 1;
      for (std::size_t id = 0; id < entries; ++id) {
        if (!((mask >> id) & 1U)) continue;
        const auto term = entry_term(n, id);
        if (term.is_pair) {
          inst.set_pair(term.i, term.j, Coefficient(weight));
        } else {
          inst.set_linear(term.i, Coefficient(weight));
        }
        weight *= base;
      }
      ++report.cases;

      struct Node {
        CounterBank bank;
        RoomTempAccumulator acc;
        std::vector<BitString> prefix;
        std::vector<std::uint64_t> tally;
      };
      std::set<std::vector<std::int64_t>> seen;
      std::vector<Node> stack;
      stack.push_back(Node{CounterBank::for_instance(inst, options.b), {}, {}, {}});
      const auto m = stack.back().bank.active_count();
      const auto period = stack.back().bank.flush_period();
      stack.back().tally.assign(m, 0);
      std::vector<EntryTerm> terms;
      for (const auto id : stack.back().bank.active_ids()) terms.push_back(entry_term(n, id));

      while (!stack.empty() && !report.violation) {
        Node node = std::move(stack.back());
        stack.pop_back();
        for (std::size_t s = 0; s < strings; ++s) {
          Node child = node;
          const auto z = BitString::from_index(s, n);
          child.bank.record_trial(z);
          flush_msbs(child.bank, child.acc, options.fault);
          child.prefix.push_back(z);
          for (std::size_t p = 0; p < m; ++p) {
            const auto& term = terms[p];
            child.tally[p] += term.is_pair ? (z[term.i] != z[term.j]) : z[term.i];
          }

          // Cold-side evolution depends only on the trial index and entry
          // values; the reconstruction error (upper * 2^(b-1) + value -
          // tally) then shifts by amounts those determine. Equal keys
          // therefore have equal futures up to the same error.
          std::vector<std::int64_t> key{static_cast<std::int64_t>(child.prefix.size())};
          for (std::size_t p = 0; p < m; ++p) {
            const auto id = child.bank.active_ids()[p];
            const auto value = child.bank.entry_at(p).value();
            key.push_back(static_cast<std::int64_t>(value));
            key.push_back(static_cast<std::int64_t>(child.acc.upper_count(id) * period + value) -
                          static_cast<std::int64_t>(child.tally[p]));
          }
          if (!seen.insert(std::move(key)).second) continue;
          ++report.states;
          report.trials += child.prefix.size();

          AuditCase as_case{inst, child.prefix, options.b};
          if (auto why = check_smoothing(child.acc.received_bits_log(), m, period)) {
            report.violation = AuditViolation{"smoothing", *why, std::nullopt, as_case};
            break;
          }
          auto probe = child.bank;
          const auto collected = collect_non_msbs(probe, child.acc, Nanoseconds{1.0});
          const auto estimate =
              counter_energy_estimate(inst, collected.totals, child.prefix.size());
          const auto expected = sampled_energy(inst, child.prefix);
          if (estimate != expected) {
            report.violation = AuditViolation{
                "exactness",
                "counter estimate " + format_coefficient(estimate) +
                    " != sampled energy " + format_coefficient(expected),
                child.prefix.size() - 1, as_case};
            break;
          }
          if (child.prefix.size() < options.t_max) stack.push_back(std::move(child));
        }
      }
      if (report.violation) break;
    }
  }
  if (report.violation) {
    report.violation = minimize_violation(std::move(*report.violation), options.fault);
  }
  return report;
}

std::optional<AuditViolation> check_readout_round_trip(int b_min, int b_max) {
  for (int b = b_min; b <= b_max; ++b) {
    const std::uint64_t modulus = std::uint64_t{1} << b;
    ReadoutCounter shared(b);
    for (std::uint64_t v = 0; v < modulus; ++v) {
      CounterEntry entry(b, v);
      const auto ev = readout_entry(entry, shared, 0);
      if (ev.recovered_value != v || ev.pulse_count != modulus - v ||
          entry.value() != 0) {
        AuditViolation out;
        out.property = "readout";
        out.detail = "b=" + std::to_string(b) + " v=" + std::to_string(v) +
                     " recovered " + std::to_string(ev.recovered_value) + " after " +
                     std::to_string(ev.pulse_count) + " pulses";
        out.counterexample.b = b;
        return out;
      }
    }
  }
  return std::nullopt;
}

std::string format_violation(const AuditViolation& v) {
  std::ostringstream out;
  out << "# property: " << v.property << "\n";
  out << "# detail: " << v.detail << "\n";
  if (v.divergence_trial) out << "# divergence_trial: " << *v.divergence_trial << "\n";
  out << "# b: " << v.counterexample.b << "\n";
  out << format_instance(v.counterexample.instance);
  out << "[trials]\n";
  for (std::size_t t = 0; t < v.counterexample.trials.size(); ++t) {
    out << t << " = " << v.counterexample.trials[t].to_string() << "\n";
  }
  return out.str();
}

}  // namespace cryoqaoa
