#pragma once

// Behavioral model of the 4-K counter bank that replaces per-trial readout.
//
// Every tracked term owns a b-bit counter entry: C_i counts trials with
// z_i = 1, C_ij counts trials with z_i != z_j. Under the MSB-sending policy
// each active entry has its MSB destructively read once every 2^(b-1)
// trials; the warm side books every received '1' as 2^(b-1) counts. After
// the last trial the residual b bits of each entry are read out through a
// single shared bit-parallel readout counter.
//
// Entry ids: qubit i -> i; pair (i, j), i < j -> N + lexicographic pair
// index. N(N+1)/2 entries are provisioned; only entries with a nonzero
// coefficient are active (M of them), scheduled and read.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cryoqaoa/ising.hpp"
#include "cryoqaoa/timing.hpp"

namespace cryoqaoa {

inline constexpr int kMinCounterBits = 2;
inline constexpr int kMaxCounterBits = 32;

std::size_t provisioned_entry_count(std::size_t n_qubits);
std::size_t single_entry_id(std::size_t i);
std::size_t pair_entry_id(std::size_t n_qubits, std::size_t i, std::size_t j);

struct EntryTerm {
  bool is_pair = false;
  std::size_t i = 0;
  std::size_t j = 0;  // unused for single-qubit entries
};
EntryTerm entry_term(std::size_t n_qubits, std::size_t entry_id);

// Ids of all entries wired to a nonzero coefficient, ascending.
std::vector<std::size_t> active_entries(const IsingInstance& instance);

class CounterEntry {
 public:
  explicit CounterEntry(int width, std::uint64_t value = 0);

  int width() const { return width_; }
  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return std::uint64_t{1} << width_; }
  std::uint64_t msb_weight() const { return std::uint64_t{1} << (width_ - 1); }
  bool msb() const { return (value_ & msb_weight()) != 0; }

  // Wraps modulo 2^b.
  void increment() { value_ = (value_ + 1) & (modulus() - 1); }
  // Destructive MSB read: returns the MSB and clears it.
  bool clear_msb();

 private:
  int width_;
  std::uint64_t value_;
};

class CounterBank {
 public:
  CounterBank(std::size_t n_qubits, int width, std::vector<std::size_t> active_ids);
  static CounterBank for_instance(const IsingInstance& instance, int width);

  std::size_t n_qubits() const { return n_; }
  int width() const { return width_; }
  std::size_t provisioned() const { return provisioned_entry_count(n_); }
  std::size_t active_count() const { return ids_.size(); }
  std::span<const std::size_t> active_ids() const { return ids_; }

  // Access by position in active_ids().
  const CounterEntry& entry_at(std::size_t position) const { return entries_[position]; }
  CounterEntry& entry_at(std::size_t position) { return entries_[position]; }
  std::optional<std::size_t> position_of(std::size_t entry_id) const;

  std::uint64_t trial_index() const { return trial_index_; }
  // 2^(b-1) trials between consecutive flushes of one entry.
  std::uint64_t flush_period() const { return std::uint64_t{1} << (width_ - 1); }
  // ceil(M / 2^(b-1)) entries flushed per trial at most.
  std::size_t slice_size() const;
  // Active positions [first, second) flushed at the boundary after trial t
  // (0-based). Entry p is flushed when t mod 2^(b-1) == p / slice_size().
  std::pair<std::size_t, std::size_t> flush_slice(std::uint64_t trial) const;

  // Adds z_i to each active single entry and z_i xor z_j to each active pair
  // entry. The boundary flush of the previous trial must have happened.
  void record_trial(const BitString& z);

  bool flush_pending() const { return flush_pending_; }
  void mark_flushed() { flush_pending_ = false; }

 private:
  std::size_t n_;
  int width_;
  std::vector<std::size_t> ids_;
  std::vector<EntryTerm> terms_;
  std::vector<CounterEntry> entries_;
  std::uint64_t trial_index_ = 0;
  bool flush_pending_ = false;
};

// Warm-side upper bits of the split counters.
class RoomTempAccumulator {
 public:
  // Units of 2^(b-1) counts; zero for entries that never sent a '1'.
  std::uint64_t upper_count(std::size_t entry_id) const;
  const std::map<std::size_t, std::uint64_t>& upper_counts() const { return upper_; }
  // Bits received at each trial boundary, in trial order.
  std::span<const std::size_t> received_bits_log() const { return log_; }

  void receive(std::size_t entry_id, bool msb);
  void close_trial(std::size_t bits_received) { log_.push_back(bits_received); }

 private:
  std::map<std::size_t, std::uint64_t> upper_;
  std::vector<std::size_t> log_;
};

enum class Fault {
  none,
  // The MSB is cleared on the cold side but the warm side drops the count.
  drop_msb,
};

struct SentBit {
  std::size_t entry_id = 0;
  bool value = false;
};

struct FlushResult {
  std::size_t bits_sent = 0;
  std::vector<SentBit> sent;
};

// One MSB-sending boundary: every entry in the current slice has its MSB
// read, cleared and sent (one bit each, '0' or '1').
FlushResult flush_msbs(CounterBank& bank, RoomTempAccumulator& accumulator,
                       Fault fault = Fault::none);

struct ReadoutEvent {
  std::size_t entry_id = 0;
  std::uint64_t pulse_count = 0;
  std::uint64_t recovered_value = 0;
};

// Shared bit-parallel readout counter; b + 1 bits so that 2^b pulses fit.
class ReadoutCounter {
 public:
  explicit ReadoutCounter(int entry_width) : width_(entry_width + 1) {}
  void reset() { value_ = 0; }
  void pulse() { value_ = (value_ + 1) & ((std::uint64_t{1} << width_) - 1); }
  std::uint64_t value() const { return value_; }

 private:
  int width_;
  std::uint64_t value_ = 0;
};

// Drives reset pulses into the entry until it overflows. Each pulse before
// the overflow appears on the readout line, so a value v emits 2^b - v
// pulses (2^b for v = 0). The entry is left cleared.
ReadoutEvent readout_entry(CounterEntry& entry, std::size_t entry_id = 0);
ReadoutEvent readout_entry(CounterEntry& entry, ReadoutCounter& shared,
                           std::size_t entry_id);

struct CollectionResult {
  std::map<std::size_t, std::uint64_t> totals;
  std::vector<ReadoutEvent> readouts;
  double bw_used_bps = 0.0;  // b M / t_C
  // Set when t_QC is known and t_C < b 2^(b-1) t_QC, i.e. residual
  // collection needs more bandwidth than MSB streaming.
  bool exceeds_msb_bandwidth = false;
};

// Reads every active entry one at a time through one ReadoutCounter and
// combines the residual with the warm-side upper counts.
CollectionResult collect_non_msbs(CounterBank& bank,
                                  const RoomTempAccumulator& accumulator,
                                  Nanoseconds t_c,
                                  std::optional<Nanoseconds> t_qc = std::nullopt);

// (1/T)(sum s_i C_i + sum c_ij C_ij). Throws IntegrityError when a nonzero
// coefficient has no total, DomainError for T = 0.
Coefficient counter_energy_estimate(const IsingInstance& instance,
                                    const std::map<std::size_t, std::uint64_t>& totals,
                                    std::uint64_t trials);

struct BaselineResult {
  Coefficient energy{0};
  std::vector<std::size_t> bits_per_trial;
  std::uint64_t total_bits = 0;
};

// Every trial ships all N measured bits and is evaluated warm-side.
BaselineResult run_baseline(const IsingInstance& instance,
                            std::span<const BitString> trials);

struct TraceEvent {
  std::uint64_t trial = 0;
  std::size_t bits_sent = 0;
  std::size_t entry_id = 0;
  std::string_view event;  // "msb0", "msb1" or "readout"
};

struct ProposedOptions {
  int b = 4;
  Fault fault = Fault::none;
  Nanoseconds t_qc = kCanonicalCircuitTime;
  // Defaults to b 2^(b-1) t_QC.
  std::optional<Nanoseconds> t_c;
  bool record_trace = false;
  // Compare the split-counter reconstruction with a running tally after
  // every boundary and report the first mismatching trial.
  bool check_reconstruction = false;
};

struct ProposedResult {
  Coefficient energy{0};
  std::size_t active_count = 0;  // M
  std::map<std::size_t, std::uint64_t> totals;
  std::vector<std::size_t> msb_bits_per_trial;
  std::uint64_t msb_bits_total = 0;
  std::uint64_t readout_bits = 0;  // b M
  CollectionResult collection;
  std::vector<TraceEvent> trace;
  std::optional<std::uint64_t> first_divergence;
};

ProposedResult run_proposed(const IsingInstance& instance,
                            std::span<const BitString> trials,
                            const ProposedOptions& options);

}  // namespace cryoqaoa
