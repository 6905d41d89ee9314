#include "cryoqaoa/counter_arch.hpp"

#include <algorithm>
#include <string>

#include "cryoqaoa/bandwidth.hpp"
#include "cryoqaoa/errors.hpp"

namespace cryoqaoa {
namespace {

void check_width(int width) {
  if (width < kMinCounterBits || width > kMaxCounterBits) {
    throw DomainError("counter width must be in [" + std::to_string(kMinCounterBits) +
                      ", " + std::to_string(kMaxCounterBits) + "]");
  }
}

}  // namespace

std::size_t provisioned_entry_count(std::size_t n_qubits) {
  return n_qubits * (n_qubits + 1) / 2;
}

std::size_t single_entry_id(std::size_t i) { return i; }

std::size_t pair_entry_id(std::size_t n_qubits, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n_qubits) throw ValidationError("invalid qubit pair");
  return n_qubits + i * (2 * n_qubits - i - 1) / 2 + (j - i - 1);
}

EntryTerm entry_term(std::size_t n_qubits, std::size_t entry_id) {
  if (entry_id < n_qubits) return EntryTerm{false, entry_id, 0};
  if (entry_id >= provisioned_entry_count(n_qubits)) {
    throw ValidationError("entry id " + std::to_string(entry_id) + " out of range");
  }
  std::size_t rest = entry_id - n_qubits;
  std::size_t i = 0;
  while (rest >= n_qubits - i - 1) {
    rest -= n_qubits - i - 1;
    ++i;
  }
  return EntryTerm{true, i, i + 1 + rest};
}

std::vector<std::size_t> active_entries(const IsingInstance& instance) {
  const auto n = instance.n_qubits();
  std::vector<std::size_t> ids;
  ids.reserve(instance.linear_count() + instance.pair_count());
  for (const auto& [i, s] : instance.linear_terms()) ids.push_back(single_entry_id(i));
  for (const auto& [p, c] : instance.pair_terms()) ids.push_back(pair_entry_id(n, p.i, p.j));
  std::sort(ids.begin(), ids.end());
  return ids;
}

CounterEntry::CounterEntry(int width, std::uint64_t value) : width_(width), value_(value) {
  check_width(width);
  if (value >= modulus()) throw DomainError("counter value exceeds its width");
}

bool CounterEntry::clear_msb() {
  const bool bit = msb();
  value_ &= ~msb_weight();
  return bit;
}

CounterBank::CounterBank(std::size_t n_qubits, int width,
                         std::vector<std::size_t> active_ids)
    : n_(n_qubits), width_(width), ids_(std::move(active_ids)) {
  if (n_ == 0) throw ValidationError("counter bank needs N >= 1");
  check_width(width_);
  if (!std::is_sorted(ids_.begin(), ids_.end()) ||
      std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw ValidationError("active entry ids must be strictly ascending");
  }
  terms_.reserve(ids_.size());
  entries_.reserve(ids_.size());
  for (const auto id : ids_) {
    terms_.push_back(entry_term(n_, id));
    entries_.emplace_back(width_);
  }
}

CounterBank CounterBank::for_instance(const IsingInstance& instance, int width) {
  return CounterBank(instance.n_qubits(), width, active_entries(instance));
}

std::optional<std::size_t> CounterBank::position_of(std::size_t entry_id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), entry_id);
  if (it == ids_.end() || *it != entry_id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t CounterBank::slice_size() const {
  const auto period = flush_period();
  return static_cast<std::size_t>((ids_.size() + period - 1) / period);
}

std::pair<std::size_t, std::size_t> CounterBank::flush_slice(std::uint64_t trial) const {
  const auto k = slice_size();
  const auto phase = static_cast<std::size_t>(trial % flush_period());
  const auto first = std::min(ids_.size(), phase * k);
  const auto last = std::min(ids_.size(), first + k);
  return {first, last};
}

void CounterBank::record_trial(const BitString& z) {
  if (z.size() != n_) {
    throw DimensionError("bitstring length " + std::to_string(z.size()) +
                         " does not match N = " + std::to_string(n_));
  }
  if (flush_pending_) {
    throw IntegrityError("record_trial called before the previous boundary flush");
  }
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    const auto& t = terms_[p];
    const bool inc = t.is_pair ? z[t.i] != z[t.j] : z[t.i] != 0;
    if (inc) entries_[p].increment();
  }
  ++trial_index_;
  flush_pending_ = true;
}

std::uint64_t RoomTempAccumulator::upper_count(std::size_t entry_id) const {
  const auto it = upper_.find(entry_id);
  return it == upper_.end() ? 0 : it->second;
}

void RoomTempAccumulator::receive(std::size_t entry_id, bool msb) {
  if (msb) ++upper_[entry_id];
}

FlushResult flush_msbs(CounterBank& bank, RoomTempAccumulator& accumulator,
                       Fault fault) {
  if (!bank.flush_pending()) {
    throw IntegrityError("flush_msbs called without a pending trial boundary");
  }
  FlushResult result;
  const auto [first, last] = bank.flush_slice(bank.trial_index() - 1);
  for (std::size_t p = first; p < last; ++p) {
    const auto id = bank.active_ids()[p];
    const bool bit = bank.entry_at(p).clear_msb();
    result.sent.push_back(SentBit{id, bit});
    if (fault != Fault::drop_msb) accumulator.receive(id, bit);
  }
  result.bits_sent = last - first;
  accumulator.close_trial(result.bits_sent);
  bank.mark_flushed();
  return result;
}

ReadoutEvent readout_entry(CounterEntry& entry, ReadoutCounter& shared,
                           std::size_t entry_id) {
  shared.reset();
  std::uint64_t pulses = 0;
  // The inhibit cell passes reset pulses to the readout line until the
  // entry wraps to zero.
  do {
    entry.increment();
    shared.pulse();
    ++pulses;
  } while (entry.value() != 0);
  const std::uint64_t counted = shared.value();
  return ReadoutEvent{entry_id, pulses, entry.modulus() - counted};
}

ReadoutEvent readout_entry(CounterEntry& entry, std::size_t entry_id) {
  ReadoutCounter shared(entry.width());
  return readout_entry(entry, shared, entry_id);
}

CollectionResult collect_non_msbs(CounterBank& bank,
                                  const RoomTempAccumulator& accumulator,
                                  Nanoseconds t_c, std::optional<Nanoseconds> t_qc) {
  if (!(t_c.count() > 0.0)) throw DomainError("t_C must be positive");
  if (bank.flush_pending()) {
    throw IntegrityError("collect_non_msbs called before the last boundary flush");
  }
  CollectionResult result;
  ReadoutCounter shared(bank.width());
  const auto weight = bank.flush_period();
  for (std::size_t p = 0; p < bank.active_count(); ++p) {
    const auto id = bank.active_ids()[p];
    auto ev = readout_entry(bank.entry_at(p), shared, id);
    result.totals[id] = accumulator.upper_count(id) * weight + ev.recovered_value;
    result.readouts.push_back(ev);
  }
  const auto m = static_cast<std::int64_t>(bank.active_count());
  result.bw_used_bps = m == 0 ? 0.0 : bw_non_msb(m, bank.width(), t_c);
  if (t_qc && m > 0) {
    result.exceeds_msb_bandwidth = t_c < min_collection_time(bank.width(), *t_qc);
  }
  return result;
}

Coefficient counter_energy_estimate(const IsingInstance& instance,
                                    const std::map<std::size_t, std::uint64_t>& totals,
                                    std::uint64_t trials) {
  if (trials == 0) throw DomainError("counter energy estimate needs T >= 1");
  const auto n = instance.n_qubits();
  auto total_of = [&](std::size_t id) {
    const auto it = totals.find(id);
    if (it == totals.end()) {
      throw IntegrityError("no counter total for entry " + std::to_string(id));
    }
    return static_cast<std::int64_t>(it->second);
  };
  Coefficient sum(0);
  for (const auto& [i, s] : instance.linear_terms()) sum += s * total_of(single_entry_id(i));
  for (const auto& [p, c] : instance.pair_terms()) {
    sum += c * total_of(pair_entry_id(n, p.i, p.j));
  }
  return sum / static_cast<std::int64_t>(trials);
}

BaselineResult run_baseline(const IsingInstance& instance,
                            std::span<const BitString> trials) {
  BaselineResult result;
  result.energy = sampled_energy(instance, trials);
  result.bits_per_trial.assign(trials.size(), instance.n_qubits());
  result.total_bits = static_cast<std::uint64_t>(trials.size()) * instance.n_qubits();
  return result;
}

ProposedResult run_proposed(const IsingInstance& instance,
                            std::span<const BitString> trials,
                            const ProposedOptions& options) {
  if (trials.empty()) throw DomainError("run_proposed needs at least one trial");
  auto bank = CounterBank::for_instance(instance, options.b);
  RoomTempAccumulator acc;
  ProposedResult result;
  result.active_count = bank.active_count();
  result.msb_bits_per_trial.reserve(trials.size());

  std::vector<std::uint64_t> tally;
  std::vector<EntryTerm> terms;
  if (options.check_reconstruction) {
    tally.assign(bank.active_count(), 0);
    for (const auto id : bank.active_ids()) terms.push_back(entry_term(bank.n_qubits(), id));
  }

  for (std::uint64_t t = 0; t < trials.size(); ++t) {
    const auto& z = trials[t];
    bank.record_trial(z);
    const auto flushed = flush_msbs(bank, acc, options.fault);
    result.msb_bits_per_trial.push_back(flushed.bits_sent);
    result.msb_bits_total += flushed.bits_sent;
    if (options.record_trace) {
      for (const auto& bit : flushed.sent) {
        result.trace.push_back(TraceEvent{t, 1, bit.entry_id, bit.value ? "msb1" : "msb0"});
      }
    }
    if (options.check_reconstruction && !result.first_divergence) {
      for (std::size_t p = 0; p < terms.size(); ++p) {
        const auto& term = terms[p];
        tally[p] += term.is_pair ? (z[term.i] != z[term.j]) : z[term.i];
        const auto id = bank.active_ids()[p];
        const auto rebuilt =
            acc.upper_count(id) * bank.flush_period() + bank.entry_at(p).value();
        if (rebuilt != tally[p]) {
          result.first_divergence = t;
          break;
        }
      }
    }
  }

  const auto t_c = options.t_c.value_or(min_collection_time(options.b, options.t_qc));
  result.collection = collect_non_msbs(bank, acc, t_c, options.t_qc);
  result.totals = result.collection.totals;
  result.readout_bits =
      static_cast<std::uint64_t>(options.b) * static_cast<std::uint64_t>(bank.active_count());
  if (options.record_trace) {
    for (const auto& ev : result.collection.readouts) {
      result.trace.push_back(TraceEvent{trials.size(), static_cast<std::size_t>(options.b),
                                        ev.entry_id, "readout"});
    }
  }
  result.energy = counter_energy_estimate(instance, result.totals, trials.size());
  return result;
}

}  // namespace cryoqaoa
