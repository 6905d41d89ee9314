#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "cryoqaoa/bandwidth.hpp"
#include "cryoqaoa/counter_arch.hpp"
#include "cryoqaoa/errors.hpp"
#include "cryoqaoa/qaoa.hpp"

using namespace cryoqaoa;

namespace {

BitString bs(const char* s) { return BitString::from_string(s); }

// Per-entry tally straight from the trial list: z_i for linear entries,
// z_i xor z_j for pairs, keyed the way the bank numbers its entries.
std::map<std::size_t, std::uint64_t> tally_oracle(const IsingInstance& inst,
                                                  const std::vector<BitString>& trials) {
  const auto n = inst.n_qubits();
  std::map<std::size_t, std::uint64_t> out;
  for (const auto& [i, s] : inst.linear_terms()) {
    std::uint64_t c = 0;
    for (const auto& z : trials) c += z[i];
    out[i] = c;
  }
  for (const auto& [p, v] : inst.pair_terms()) {
    std::uint64_t c = 0;
    for (const auto& z : trials) c += z[p.i] != z[p.j];
    std::size_t id = n;
    for (std::size_t a = 0; a < p.i; ++a) id += n - a - 1;
    id += p.j - p.i - 1;
    out[id] = c;
  }
  return out;
}

IsingInstance dense_instance(std::size_t n, Rng& rng) {
  IsingInstance inst(n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.set_linear(i, Coefficient(static_cast<std::int64_t>(rng.next() % 11) - 5));
    for (std::size_t j = i + 1; j < n; ++j)
      inst.set_pair(i, j, Coefficient(static_cast<std::int64_t>(rng.next() % 11) - 5));
  }
  return inst;
}

}  // namespace

TEST(EntryIds, LayoutAndInverse) {
  EXPECT_EQ(provisioned_entry_count(1), 1u);
  EXPECT_EQ(provisioned_entry_count(4), 10u);
  EXPECT_EQ(single_entry_id(2), 2u);
  EXPECT_EQ(pair_entry_id(3, 0, 1), 3u);
  EXPECT_EQ(pair_entry_id(3, 0, 2), 4u);
  EXPECT_EQ(pair_entry_id(3, 1, 2), 5u);
  for (std::size_t n = 1; n <= 9; ++n) {
    for (std::size_t id = 0; id < provisioned_entry_count(n); ++id) {
      const auto t = entry_term(n, id);
      EXPECT_EQ(t.is_pair ? pair_entry_id(n, t.i, t.j) : single_entry_id(t.i), id);
    }
  }
}

TEST(EntryIds, ActiveEntriesFollowCoefficients) {
  IsingInstance inst(3);
  inst.set_linear(1, Coefficient(2));
  inst.set_pair(2, 0, Coefficient(-1));
  EXPECT_EQ(active_entries(inst), (std::vector<std::size_t>{1, 4}));
}

TEST(CounterEntry, WrapAndMsb) {
  CounterEntry e(3);
  for (int k = 0; k < 7; ++k) e.increment();
  EXPECT_EQ(e.value(), 7u);
  EXPECT_TRUE(e.msb());
  e.increment();
  EXPECT_EQ(e.value(), 0u);
  CounterEntry pinned(3, 7);
  EXPECT_TRUE(pinned.clear_msb());
  EXPECT_EQ(pinned.value(), 3u);
  EXPECT_FALSE(pinned.clear_msb());
  EXPECT_EQ(pinned.value(), 3u);
  EXPECT_THROW(CounterEntry(1), DomainError);
  EXPECT_THROW(CounterEntry(33), DomainError);
  EXPECT_THROW(CounterEntry(3, 8), DomainError);
}

TEST(CounterBank, RecordTrialUpdates) {
  IsingInstance inst(2);
  inst.set_linear(0, Coefficient(1));
  inst.set_linear(1, Coefficient(1));
  inst.set_pair(0, 1, Coefficient(1));
  auto bank = CounterBank::for_instance(inst, 4);
  RoomTempAccumulator acc;
  bank.record_trial(bs("00"));
  for (std::size_t p = 0; p < 3; ++p) EXPECT_EQ(bank.entry_at(p).value(), 0u);
  flush_msbs(bank, acc);
  bank.record_trial(bs("10"));
  EXPECT_EQ(bank.entry_at(*bank.position_of(0)).value(), 1u);
  EXPECT_EQ(bank.entry_at(*bank.position_of(1)).value(), 0u);
  EXPECT_EQ(bank.entry_at(*bank.position_of(2)).value(), 1u);
  EXPECT_THROW(bank.record_trial(bs("11")), IntegrityError);
  flush_msbs(bank, acc);
  EXPECT_THROW(flush_msbs(bank, acc), IntegrityError);
  EXPECT_THROW(bank.record_trial(bs("111")), DimensionError);
}

TEST(CounterBank, FlushClearsPinnedEntry) {
  IsingInstance inst(1);
  inst.set_linear(0, Coefficient(1));
  auto bank = CounterBank::for_instance(inst, 3);
  RoomTempAccumulator acc;
  bank.entry_at(0) = CounterEntry(3, 7);
  bank.record_trial(bs("0"));
  const auto r = flush_msbs(bank, acc);
  ASSERT_EQ(r.sent.size(), 1u);
  EXPECT_TRUE(r.sent[0].value);
  EXPECT_EQ(bank.entry_at(0).value(), 3u);
  EXPECT_EQ(acc.upper_count(0), 1u);
  // Single entry, period 4: the next three boundaries flush nothing.
  for (int k = 0; k < 3; ++k) {
    bank.record_trial(bs("1"));
    EXPECT_EQ(flush_msbs(bank, acc).bits_sent, 0u);
  }
  bank.record_trial(bs("1"));
  EXPECT_EQ(flush_msbs(bank, acc).bits_sent, 1u);
}

TEST(CounterBank, ZeroMsbSendsZeroBit) {
  IsingInstance inst(1);
  inst.set_linear(0, Coefficient(1));
  auto bank = CounterBank::for_instance(inst, 3);
  RoomTempAccumulator acc;
  bank.record_trial(bs("1"));
  const auto r = flush_msbs(bank, acc);
  ASSERT_EQ(r.sent.size(), 1u);
  EXPECT_FALSE(r.sent[0].value);
  EXPECT_EQ(acc.upper_count(0), 0u);
  EXPECT_EQ(bank.entry_at(0).value(), 1u);
}

TEST(CounterBank, EveryEntryOncePerWindow) {
  for (const int b : {2, 3, 4, 6}) {
    for (const std::size_t m : {1u, 3u, 5u, 8u, 13u, 40u}) {
      std::vector<std::size_t> ids(m);
      std::iota(ids.begin(), ids.end(), std::size_t{0});
      CounterBank bank(40, b, ids);
      const std::uint64_t w = bank.flush_period();
      for (std::uint64_t start = 0; start < 3 * w; ++start) {
        std::vector<int> hits(m, 0);
        std::size_t bits = 0;
        for (std::uint64_t t = start; t < start + w; ++t) {
          const auto [first, last] = bank.flush_slice(t);
          EXPECT_LE(last - first, (m + w - 1) / w);
          for (auto p = first; p < last; ++p) ++hits[p];
          bits += last - first;
        }
        EXPECT_EQ(bits, m);
        for (const int h : hits) EXPECT_EQ(h, 1);
      }
    }
  }
}

TEST(Readout, PulseCounts) {
  CounterEntry e(3, 5);
  auto ev = readout_entry(e, 12);
  EXPECT_EQ(ev.pulse_count, 3u);
  EXPECT_EQ(ev.recovered_value, 5u);
  EXPECT_EQ(ev.entry_id, 12u);
  EXPECT_EQ(e.value(), 0u);

  CounterEntry full(6, 63);
  EXPECT_EQ(readout_entry(full).pulse_count, 1u);

  CounterEntry zero(4, 0);
  ev = readout_entry(zero);
  EXPECT_EQ(ev.pulse_count, 16u);
  EXPECT_EQ(ev.recovered_value, 0u);
}

TEST(Readout, RoundTripAllValues) {
  for (int b = 2; b <= 12; ++b) {
    ReadoutCounter shared(b);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << b); ++v) {
      CounterEntry e(b, v);
      const auto ev = readout_entry(e, shared, 0);
      ASSERT_EQ(ev.recovered_value, v) << "b=" << b;
      ASSERT_EQ(ev.pulse_count, (std::uint64_t{1} << b) - v);
    }
  }
}

TEST(Readout, RoundTripWideCountersSampled) {
  Rng rng(20);
  for (int b = 17; b <= 20; ++b) {
    const std::uint64_t mod = std::uint64_t{1} << b;
    std::vector<std::uint64_t> values{0, 1, mod / 2 - 1, mod / 2, mod - 2, mod - 1};
    for (int k = 0; k < 20; ++k) values.push_back(rng.next() % mod);
    ReadoutCounter shared(b);
    for (const auto v : values) {
      CounterEntry e(b, v);
      EXPECT_EQ(readout_entry(e, shared, 0).recovered_value, v) << "b=" << b;
    }
  }
}

TEST(Collection, TotalsMatchTallies) {
  const auto path = worstcase_instance(5);
  const auto trials = synthetic_trials(BernoulliModel::uniform(5, 0.4, 17), 200);
  auto bank = CounterBank::for_instance(path, 3);
  RoomTempAccumulator acc;
  for (const auto& z : trials) {
    bank.record_trial(z);
    flush_msbs(bank, acc);
  }
  const auto res = collect_non_msbs(bank, acc, min_collection_time(3, kCanonicalCircuitTime),
                                    kCanonicalCircuitTime);
  EXPECT_EQ(res.totals, tally_oracle(path, trials));
  EXPECT_EQ(res.readouts.size(), 4u);
  EXPECT_DOUBLE_EQ(res.bw_used_bps, bw_msb(4, 3, kCanonicalCircuitTime));
  EXPECT_FALSE(res.exceeds_msb_bandwidth);
}

TEST(Collection, NoTrialsGivesZeroTotals) {
  const auto inst = worstcase_instance(3);
  auto bank = CounterBank::for_instance(inst, 4);
  const auto res = collect_non_msbs(bank, RoomTempAccumulator{}, Nanoseconds{100});
  for (const auto& [id, total] : res.totals) EXPECT_EQ(total, 0u);
  EXPECT_EQ(res.totals.size(), 2u);
}

TEST(Collection, FullPeriodsLeaveNoResidual) {
  IsingInstance inst(1);
  inst.set_linear(0, Coefficient(1));
  for (const int b : {2, 3, 5}) {
    const std::uint64_t w = std::uint64_t{1} << (b - 1);
    for (const std::uint64_t k : {1u, 2u, 7u}) {
      auto bank = CounterBank::for_instance(inst, b);
      RoomTempAccumulator acc;
      for (std::uint64_t t = 0; t < w * k; ++t) {
        bank.record_trial(bs("1"));
        flush_msbs(bank, acc);
      }
      // The entry's flush slot is phase 0, so after k full windows it
      // holds exactly the w - 1 counts seen since its last flush.
      EXPECT_EQ(acc.upper_count(0) * w + bank.entry_at(0).value(), w * k);
      const auto res = collect_non_msbs(bank, acc, Nanoseconds{1});
      EXPECT_EQ(res.totals.at(0), w * k);
    }
  }
}

TEST(Collection, ShortCollectionExceedsMsbBandwidth) {
  const auto inst = worstcase_instance(4);
  auto bank = CounterBank::for_instance(inst, 3);
  const auto t_min = min_collection_time(3, kCanonicalCircuitTime);
  EXPECT_FALSE(collect_non_msbs(bank, {}, t_min, kCanonicalCircuitTime).exceeds_msb_bandwidth);
  EXPECT_TRUE(collect_non_msbs(bank, {}, t_min / 2, kCanonicalCircuitTime).exceeds_msb_bandwidth);
  EXPECT_THROW(collect_non_msbs(bank, {}, Nanoseconds{0}), DomainError);
}

TEST(Estimate, Examples) {
  IsingInstance tri(3);
  tri.set_pair(0, 1, Coefficient(1));
  tri.set_pair(0, 2, Coefficient(1));
  tri.set_pair(1, 2, Coefficient(1));
  const std::vector<BitString> trials{bs("001"), bs("010"), bs("100"), bs("111")};
  const auto totals = tally_oracle(tri, trials);
  EXPECT_EQ(counter_energy_estimate(tri, totals, 4), Coefficient(3, 2));

  std::map<std::size_t, std::uint64_t> zeros{{3, 0}, {4, 0}, {5, 0}};
  EXPECT_EQ(counter_energy_estimate(tri, zeros, 9), Coefficient(0));
  std::map<std::size_t, std::uint64_t> missing{{3, 1}, {4, 1}};
  EXPECT_THROW(counter_energy_estimate(tri, missing, 1), IntegrityError);
  EXPECT_THROW(counter_energy_estimate(tri, totals, 0), DomainError);
}

TEST(Baseline, ShipsAllBits) {
  const auto inst = maxcut_instance(ring_edges(8), 8);
  const auto trials = synthetic_trials(BernoulliModel::uniform(8, 0.5, 2), 100);
  const auto r = run_baseline(inst, trials);
  EXPECT_EQ(r.total_bits, 800u);
  EXPECT_EQ(r.bits_per_trial, std::vector<std::size_t>(100, 8));
  EXPECT_EQ(r.energy, sampled_energy(inst, trials));
}

TEST(Proposed, MatchesTallyOracleAndEnergy) {
  Rng rng(31);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 1 + rng.next() % 6;
    const auto inst = dense_instance(n, rng);
    if (active_entries(inst).empty()) continue;
    const std::size_t t = 1 + rng.next() % 300;
    const auto trials = synthetic_trials(BernoulliModel::uniform(n, rng.uniform(), rng.next()), t);
    ProposedOptions opts;
    opts.b = 2 + static_cast<int>(rng.next() % 6);
    opts.check_reconstruction = true;
    const auto r = run_proposed(inst, trials, opts);
    EXPECT_EQ(r.totals, tally_oracle(inst, trials));
    EXPECT_EQ(r.energy, sampled_energy(inst, trials));
    EXPECT_FALSE(r.first_divergence);
    EXPECT_EQ(r.readout_bits, static_cast<std::uint64_t>(opts.b) * r.active_count);
  }
}

TEST(Proposed, TraceRecordsEveryBit) {
  const auto inst = maxcut_instance(ring_edges(6), 6);
  const auto trials = synthetic_trials(BernoulliModel::uniform(6, 0.5, 5), 37);
  ProposedOptions opts;
  opts.b = 3;
  opts.record_trace = true;
  const auto r = run_proposed(inst, trials, opts);
  std::size_t msb = 0, readout = 0;
  for (const auto& ev : r.trace) {
    if (ev.event == "readout") {
      ++readout;
      EXPECT_EQ(ev.trial, 37u);
    } else {
      ++msb;
      EXPECT_TRUE(ev.event == "msb0" || ev.event == "msb1");
    }
  }
  EXPECT_EQ(msb, r.msb_bits_total);
  EXPECT_EQ(readout, 6u);
}

TEST(Proposed, PeakBandwidthWithinReduction) {
  // Windowed peak: bits over any 2^(b-1) consecutive trials, per t_QC.
  const double eps = 1e-9;
  const auto t_qc = kCanonicalCircuitTime;
  for (const int b : {2, 3, 4, 5}) {
    const std::size_t n = 10;
    const auto inst = maxcut_instance(complete_edges(n), n);
    const auto trials = synthetic_trials(BernoulliModel::uniform(n, 0.5, 8), 300);
    ProposedOptions opts;
    opts.b = b;
    const auto r = run_proposed(inst, trials, opts);
    const std::size_t w = std::size_t{1} << (b - 1);
    std::size_t peak_window = 0;
    for (std::size_t s = 0; s + w <= trials.size(); ++s) {
      peak_window = std::max(peak_window, std::accumulate(r.msb_bits_per_trial.begin() + s,
                                                          r.msb_bits_per_trial.begin() + s + w,
                                                          std::size_t{0}));
    }
    const double proposed_peak = bits_per_second(static_cast<double>(peak_window) / w, t_qc);
    const double baseline_peak = bits_per_second(static_cast<double>(n), t_qc);
    const auto m = static_cast<std::int64_t>(r.active_count);
    EXPECT_LE(proposed_peak, baseline_peak * reduction_ratio(m, b, n) * (1 + eps)) << b;
  }
}

TEST(Proposed, DroppedMsbDiverges) {
  IsingInstance inst(1);
  inst.set_linear(0, Coefficient(-4));
  const std::vector<BitString> trials(3, bs("1"));
  ProposedOptions opts;
  opts.b = 2;
  opts.fault = Fault::drop_msb;
  opts.check_reconstruction = true;
  const auto r = run_proposed(inst, trials, opts);
  ASSERT_TRUE(r.first_divergence);
  EXPECT_EQ(*r.first_divergence, 2u);
  EXPECT_NE(r.energy, sampled_energy(inst, trials));
}
