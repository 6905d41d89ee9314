#include "cryoqaoa/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cryoqaoa/audit.hpp"
#include "cryoqaoa/bandwidth.hpp"
#include "cryoqaoa/cli/scenario.hpp"
#include "cryoqaoa/counter_arch.hpp"
#include "cryoqaoa/errors.hpp"
#include "cryoqaoa/kvfile.hpp"
#include "cryoqaoa/power.hpp"
#include "cryoqaoa/qaoa.hpp"

namespace cryoqaoa::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV goes to --out when given, else to `out`. The human summary goes to
// `out` when the CSV went to a file, else to `err`; --quiet drops it.
class Sinks {
 public:
  Sinks(const GlobalOptions& g, std::ostream& out, std::ostream& err)
      : out_(out), err_(err), quiet_(g.quiet) {
    if (g.out) {
      file_.open(*g.out);
      if (!file_) throw ConfigError(g.out->string(), 0, "cannot open output file");
      to_file_ = true;
    }
  }

  std::ostream& csv() { return to_file_ ? static_cast<std::ostream&>(file_) : out_; }
  std::ostream& err() { return err_; }

  template <typename... Args>
  void say(fmt::format_string<Args...> f, Args&&... args) {
    if (quiet_) return;
    std::ostream& s = to_file_ ? out_ : err_;
    s << fmt::format(f, std::forward<Args>(args)...) << "\n";
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::ofstream file_;
  bool quiet_;
  bool to_file_ = false;
};

std::optional<KvDocument> load_config(const GlobalOptions& g) {
  if (!g.config) return std::nullopt;
  return KvDocument::load(*g.config);
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

// Reads an optional key from a free-form config section.
template <typename T, typename Parse>
std::optional<T> config_value(const std::optional<KvDocument>& doc, std::string_view section,
                              std::string_view key, Parse&& parse) {
  if (!doc) return std::nullopt;
  const auto* e = doc->entry(section, key);
  if (!e) return std::nullopt;
  try {
    return parse(e->value);
  } catch (const ValidationError& ex) {
    throw ConfigError(doc->source(), e->line,
                      "field '" + std::string(section) + "." + std::string(key) + "': " +
                          ex.what());
  }
}

std::int64_t single_int(const std::string& v) {
  const auto list = parse_int_list(v);
  if (list.size() != 1) throw ValidationError("expected one integer");
  return list.front();
}

int resolve_run_b(const ScenarioConfig& c, std::size_t n, Sinks& sinks) {
  if (c.b_policy == "fixed") return c.b;
  if (c.b_policy == "log2n") return CounterWidthPolicy::log2_n().resolve(static_cast<std::int64_t>(n));
  const auto choice = choose_b(c.trials, c.r);
  if (choice.bound_unsatisfiable || choice.b < kMinCounterBits) {
    sinks.err() << fmt::format(
        "warning: b 2^b < 2rT admits no counter of >= {} bits for T={}, r={}; using b={}\n",
        kMinCounterBits, c.trials, c.r, kMinCounterBits);
    return kMinCounterBits;
  }
  return choice.b;
}

}  // namespace

int cmd_run(const GlobalOptions& g, const RunOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ScenarioConfig c;
    if (g.config) {
      c = load_scenario(*g.config);
    }
    if (g.seed) c.seed = *g.seed;
    if (o.trials) c.trials = *o.trials;
    if (o.b) c.b = *o.b;
    if (o.b_policy) c.b_policy = *o.b_policy;
    if (o.r) c.r = *o.r;
    if (o.sampler) c.sampler = *o.sampler;
    if (o.instance) {
      c.instance_file = std::filesystem::path(*o.instance);
      c.edge_file.reset();
    }
    if (o.generator) {
      c.generator = *o.generator;
      c.instance_file.reset();
      c.edge_file.reset();
    }
    if (o.n) c.generator_n = *o.n;
    if (o.trace) c.trace = *o.trace;
    if (g.out) c.out = *g.out;
    c.validate();

    GlobalOptions routed = g;
    routed.out = c.out;
    Sinks sinks(routed, out, err);

    std::vector<std::string> warnings;
    const auto instance = build_instance(c, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";

    const auto n = instance.n_qubits();
    const auto m = active_entries(instance).size();
    if (m == 0) throw ValidationError("instance has no nonzero terms to count");
    const int b = resolve_run_b(c, n, sinks);
    const auto trials_count = static_cast<std::size_t>(c.trials);

    QaoaParams params{c.gammas, c.betas, static_cast<int>(std::max<std::int64_t>(1, c.param_bits))};
    std::vector<BitString> trials;
    std::optional<OptimizeResult> optimized;
    if (c.sampler == "statevector") {
      if (n > kDefaultStatevectorLimit) {
        throw ValidationError(fmt::format(
            "N = {} exceeds the statevector limit of {}; use sampler = synthetic", n,
            kDefaultStatevectorLimit));
      }
      if (c.optimize_steps > 0) {
        OptimizeOptions opt;
        opt.steps = c.optimize_steps;
        opt.seed = c.seed;
        opt.trials_per_step = std::min<std::size_t>(trials_count, 1024);
        optimized = optimize(instance, params, opt);
        params = optimized->params;
      }
      trials = sample(prepare_state(instance, params), trials_count, c.seed);
    } else {
      trials = synthetic_trials(BernoulliModel::uniform(n, c.synthetic_p, c.seed), trials_count);
    }

    ExecutionProfile profile;
    profile.n_qubits = static_cast<std::int64_t>(n);
    profile.linear_terms = static_cast<std::int64_t>(instance.linear_count());
    profile.pair_terms = static_cast<std::int64_t>(instance.pair_count());
    profile.layers = static_cast<std::int64_t>(params.layers());
    profile.parallelism = c.parallelism == 0 ? profile.n_qubits : c.parallelism;
    profile.validate();

    BandwidthInputs bw_in;
    bw_in.timings = c.timings;
    bw_in.profile = profile;
    bw_in.param_bits = c.param_bits;
    bw_in.counters_in_use = static_cast<std::int64_t>(m);
    bw_in.b = b;
    bw_in.trials = c.trials;
    if (c.t_c_ns) bw_in.t_c = Nanoseconds{*c.t_c_ns};
    const auto report = bandwidth_report(bw_in);

    const auto baseline = run_baseline(instance, trials);
    ProposedOptions popts;
    popts.b = b;
    popts.t_qc = report.t_qc;
    popts.t_c = report.t_c;
    popts.record_trace = c.trace.has_value();
    const auto proposed = run_proposed(instance, trials, popts);

    auto& csv = sinks.csv();
    csv << "# config: " << c.describe() << "; resolved_b=" << b << "\n";
    csv << "trial,baseline_bits,proposed_bits\n";
    for (std::size_t t = 0; t < trials.size(); ++t) {
      csv << t << "," << baseline.bits_per_trial[t] << "," << proposed.msb_bits_per_trial[t]
          << "\n";
    }
    csv.flush();

    if (c.trace) {
      std::ofstream trace(*c.trace);
      if (!trace) throw ConfigError(c.trace->string(), 0, "cannot open trace file");
      trace << "# config: " << c.describe() << "; resolved_b=" << b << "\n";
      trace << "trial,bits_sent,entry_id,event\n";
      for (const auto& ev : proposed.trace) {
        trace << ev.trial << "," << ev.bits_sent << "," << ev.entry_id << "," << ev.event << "\n";
      }
    }

    const bool match = baseline.energy == proposed.energy;
    const auto peak_bits = *std::max_element(proposed.msb_bits_per_trial.begin(),
                                             proposed.msb_bits_per_trial.end());
    sinks.say("instance: {} (N={}, S={}, C={})", instance.label().empty() ? "unnamed" : instance.label(),
              n, instance.linear_count(), instance.pair_count());
    sinks.say("trials: T={} sampler={} seed={}", trials.size(), c.sampler, c.seed);
    if (optimized) sinks.say("optimizer: best sampled energy {} after {} steps", optimized->best_energy, c.optimize_steps);
    sinks.say("counters: b={} ({}), M={} in use, {} provisioned", b, c.b_policy, m,
              provisioned_entry_count(n));
    sinks.say("energy baseline: {} ({})", format_coefficient(baseline.energy), to_double(baseline.energy));
    sinks.say("energy counter:  {} ({})", format_coefficient(proposed.energy), to_double(proposed.energy));
    sinks.say("energies match: {}", match ? "yes" : "NO");
    sinks.say("t_QC: {} ns", report.t_qc.count());
    sinks.say("bw_inst: {} bps", report.bw_inst);
    sinks.say("bw_meas (baseline): {} bps", report.bw_meas);
    sinks.say("bw_msb (proposed, average): {} bps", report.bw_msb);
    sinks.say("proposed peak: {} bits in one trial = {} bps", peak_bits,
              bits_per_second(static_cast<double>(peak_bits), report.t_qc));
    sinks.say("bw_non_msb: {} bps over t_C = {} ns{}", report.bw_non_msb, report.t_c.count(),
              proposed.collection.exceeds_msb_bandwidth ? " (exceeds bw_msb)" : "");
    sinks.say("bw_proposed: {} bps", report.bw_proposed);
    sinks.say("reduction ratio: {}", report.reduction_ratio);
    sinks.say("overhead factor: {}", report.overhead_factor);
    sinks.say("bits moved: baseline {}, proposed {} (msb {} + readout {})", baseline.total_bits,
              proposed.msb_bits_total + proposed.readout_bits, proposed.msb_bits_total,
              proposed.readout_bits);
    if (!match) {
      err << "invariant violation: counter estimate differs from the sampled energy\n";
      return kExitViolation;
    }
    return kExitOk;
  });
}

int cmd_fig5a(const GlobalOptions& g, const Fig5aOptions& o, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_config(g);
    auto t_values = o.t_values
                        ? *o.t_values
                        : config_value<std::vector<std::int64_t>>(doc, "fig5a", "t_values", parse_int_list)
                              .value_or(std::vector<std::int64_t>{1000, 10000, 100000, 1000000, 10000000});
    std::vector<double> default_r;
    for (int k = 1; k <= 20; ++k) default_r.push_back(k / 200.0);
    auto r_grid = o.r_grid ? *o.r_grid
                           : config_value<std::vector<double>>(doc, "fig5a", "r_grid", parse_double_list)
                                 .value_or(default_r);
    const auto n = o.n ? *o.n : config_value<std::int64_t>(doc, "fig5a", "n", single_int).value_or(1000);
    if (t_values.empty() || r_grid.empty()) throw UsageError("fig5a needs nonempty T and r grids");
    for (const auto t : t_values) {
      if (t < 1) throw UsageError("T values must be >= 1");
    }
    for (const auto r : r_grid) {
      if (!(r > 0.0)) throw UsageError("r values must be > 0");
    }

    Sinks sinks(g, out, err);
    SweepContext ctx;
    ctx.n_qubits = n;
    const auto rows = staircase_sweep(t_values, r_grid, ctx);

    auto& csv = sinks.csv();
    std::string ts, rs;
    for (const auto t : t_values) ts += (ts.empty() ? "" : ",") + std::to_string(t);
    for (const auto r : r_grid) rs += (rs.empty() ? "" : ",") + fmt::format("{}", r);
    csv << fmt::format("# config: command=fig5a; t_values={}; r_grid={}; n={}; t_qc_ns={}; m=N\n",
                       ts, rs, n, ctx.t_qc.count());
    csv << "T,r,b,reduction_ratio,overhead_factor,bw_meas_bps,bw_proposed_bps\n";
    std::size_t clamped = 0;
    for (const auto& row : rows) {
      csv << fmt::format("{},{},{},{},{},{},{}\n", row.trials, row.r, row.b, row.reduction_ratio,
                         row.overhead_factor, row.bw_meas_bps, row.bw_proposed_bps);
      if (row.bound_unsatisfiable) ++clamped;
    }
    csv.flush();
    sinks.say("fig5a: {} rows ({} T values x {} r values)", rows.size(), t_values.size(), r_grid.size());
    if (clamped) sinks.say("warning: {} rows violate b 2^b < 2rT even at b=1 (clamped to b=1)", clamped);
    return kExitOk;
  });
}

int cmd_fig5b(const GlobalOptions& g, const Fig5bOptions& o, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_config(g);
    auto pick_int = [&](const std::optional<std::int64_t>& flag, const char* key, std::int64_t def) {
      return flag ? *flag : config_value<std::int64_t>(doc, "fig5b", key, single_int).value_or(def);
    };
    const auto n_min = pick_int(o.n_min, "n_min", 2);
    const auto n_max = pick_int(o.n_max, "n_max", 4096);
    const auto n_step = pick_int(o.n_step, "n_step", 1);
    const auto policy_name = o.b_policy ? *o.b_policy
                                        : config_value<std::string>(doc, "fig5b", "b_policy",
                                                                    [](const std::string& v) { return v; })
                                              .value_or("log2n");
    const int fixed_b = static_cast<int>(pick_int(o.b ? std::optional<std::int64_t>(*o.b) : std::nullopt, "b", 3));
    const auto t_qc_mode = o.t_qc ? *o.t_qc
                                  : config_value<std::string>(doc, "fig5b", "t_qc",
                                                              [](const std::string& v) { return v; })
                                        .value_or("preset");

    std::vector<std::int64_t> n_range;
    if (o.n_list) {
      n_range = *o.n_list;
    } else {
      if (n_min < 1 || n_max < n_min || n_step < 1) throw UsageError("invalid N range");
      for (auto n = n_min; n <= n_max; n += n_step) n_range.push_back(n);
    }
    if (n_range.empty()) throw UsageError("empty N range");

    ComparisonOptions opts;
    if (policy_name == "log2n") {
      opts.b_policy = CounterWidthPolicy::log2_n();
    } else if (policy_name == "fixed") {
      if (fixed_b < 2 || fixed_b > 62) throw UsageError("fixed b must be in [2, 62]");
      opts.b_policy = CounterWidthPolicy::fixed(fixed_b);
    } else {
      throw UsageError("b policy must be 'log2n' or 'fixed'");
    }
    if (t_qc_mode == "model") {
      opts.t_qc.reset();
    } else if (t_qc_mode != "preset") {
      throw UsageError("t_qc must be 'preset' or 'model'");
    }

    Sinks sinks(g, out, err);
    const auto table = system_comparison(n_range, opts);
    auto& csv = sinks.csv();
    csv << fmt::format(
        "# config: command=fig5b; n=[{}..{}] ({} rows); b_policy={}; b={}; t_qc={}; "
        "cable_heat_mw={}; cable_amp_mw={}; cable_bps={}; phi0_wb={}; freq_hz={}\n",
        n_range.front(), n_range.back(), n_range.size(), policy_name,
        policy_name == "fixed" ? std::to_string(fixed_b) : std::string("ceil(log2 N)"),
        t_qc_mode == "preset" ? fmt::format("{}ns", kCanonicalCircuitTime.count()) : std::string("model"),
        opts.cable.heat_inflow_mw, opts.cable.amp_power_mw, opts.cable.capacity_bps,
        opts.sfq.phi0_wb, opts.sfq.freq_hz);
    csv << "N,bw_baseline_bps,bw_proposed_bps,cables_baseline,cables_proposed,power_baseline_mw,"
           "power_proposed_mw\n";
    for (const auto& row : table.rows) {
      csv << fmt::format("{},{},{},{},{},{},{}\n", row.n_qubits, row.baseline.bw_required_bps,
                         row.proposed.bw_required_bps, row.baseline.n_cables,
                         row.proposed.n_cables, row.baseline.total_mw, row.proposed.total_mw);
    }
    csv.flush();
    if (table.crossover) {
      sinks.say("crossover N* = {}", *table.crossover);
    } else {
      sinks.say("crossover N* = none in range");
    }
    return kExitOk;
  });
}

int cmd_audit(const GlobalOptions& g, const AuditOptions& o, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_config(g);
    auto pick = [&](const auto& flag, const char* key, std::int64_t def) -> std::int64_t {
      if (flag) return static_cast<std::int64_t>(*flag);
      return config_value<std::int64_t>(doc, "audit", key, single_int).value_or(def);
    };
    Fault fault = Fault::none;
    if (o.inject) {
      if (*o.inject == "drop-msb") {
        fault = Fault::drop_msb;
      } else if (*o.inject != "none") {
        throw UsageError("unknown fault '" + *o.inject + "' (expected drop-msb)");
      }
    }
    const auto seed = g.seed ? *g.seed
                             : static_cast<std::uint64_t>(
                                   config_value<std::int64_t>(doc, "audit", "seed", single_int).value_or(1));
    const int readout_b_max = static_cast<int>(pick(o.readout_b_max, "readout_b_max", 12));
    if (readout_b_max < 2 || readout_b_max > 20) throw UsageError("readout b max must be in [2, 20]");

    // Never write a counterexample over the input config.
    const auto cex_path = g.out.value_or("audit-counterexample.txt");
    auto report_violation = [&](const AuditViolation& v) {
      std::ofstream cex(cex_path);
      if (cex) cex << format_violation(v);
      err << fmt::format("invariant violation: {} ({})\n", v.property, v.detail);
      if (v.divergence_trial) err << fmt::format("divergence at trial {}\n", *v.divergence_trial);
      err << fmt::format("minimized counterexample: N={}, T={}, b={} written to {}\n",
                         v.counterexample.instance.n_qubits(), v.counterexample.trials.size(),
                         v.counterexample.b, cex_path.string());
      return kExitViolation;
    };
    auto say = [&](const std::string& line) {
      if (!g.quiet) out << line << "\n";
    };

    if (o.exhaustive) {
      ExhaustiveAuditOptions ex;
      ex.n_max = static_cast<std::size_t>(pick(o.n_max, "n_max", 3));
      ex.t_max = static_cast<std::size_t>(pick(o.t_max, "t_max", 16));
      ex.b = static_cast<int>(pick(o.b_min, "b_min", 2));
      ex.fault = fault;
      if (ex.n_max < 1 || ex.n_max > 4) throw UsageError("exhaustive mode supports --n-max 1..4");
      if (ex.t_max < 1 || ex.t_max > 16) throw UsageError("exhaustive mode supports --t-max 1..16");
      const auto rep = run_exhaustive_audit(ex);
      say(fmt::format("exhaustive: N<={} T<={} b={}: {} coefficient patterns, {} distinct states",
                      ex.n_max, ex.t_max, ex.b, rep.cases, rep.states));
      if (rep.violation) return report_violation(*rep.violation);
    } else {
      RandomAuditOptions ro;
      ro.instances = static_cast<std::size_t>(pick(o.instances, "instances", 1000));
      ro.n_max = static_cast<std::size_t>(pick(o.n_max, "n_max", 12));
      ro.t_max = static_cast<std::size_t>(pick(o.t_max, "t_max", 500));
      ro.b_min = static_cast<int>(pick(o.b_min, "b_min", 2));
      ro.b_max = static_cast<int>(pick(o.b_max, "b_max", 8));
      ro.seed = seed;
      ro.fault = fault;
      if (ro.n_max < 1 || ro.n_max > 64) throw UsageError("--n-max must be in [1, 64]");
      if (ro.t_max < 1) throw UsageError("--t-max must be >= 1");
      if (ro.b_min < kMinCounterBits || ro.b_max < ro.b_min || ro.b_max > kMaxCounterBits) {
        throw UsageError("need 2 <= b-min <= b-max <= 32");
      }
      const auto rep = run_random_audit(ro);
      say(fmt::format("random: {} cases, {} trials (N<={}, T<={}, b in [{}, {}], seed {})",
                      rep.cases, rep.trials, ro.n_max, ro.t_max, ro.b_min, ro.b_max, ro.seed));
      if (rep.violation) return report_violation(*rep.violation);
    }
    if (auto v = check_readout_round_trip(kMinCounterBits, readout_b_max)) {
      return report_violation(*v);
    }
    say(fmt::format("readout round trip: all values for b in [2, {}]", readout_b_max));
    say("audit passed: exactness, reconstruction, smoothing, readout");
    return kExitOk;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bandwidth, power and counter-architecture simulator for cryogenic QAOA"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::string config_path, out_path;
  std::uint64_t seed = 0;
  auto* config_opt = app.add_option("--config", config_path, "Scenario/config file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  auto* out_opt = app.add_option("--out", out_path, "Write CSV (or audit counterexample) here");
  app.add_flag("--quiet", g.quiet, "Suppress the human-readable summary");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate baseline and counter readout end to end");
  std::int64_t trials = 0;
  int b = 0;
  double r = 0;
  std::size_t n = 0;
  std::string b_policy, sampler, instance, generator, trace;
  auto* o_trials = run_cmd->add_option("--trials", trials, "Trial count T");
  auto* o_b = run_cmd->add_option("--b", b, "Counter width (b_policy=fixed)");
  auto* o_policy = run_cmd->add_option("--b-policy", b_policy, "fixed | choose | log2n");
  auto* o_r = run_cmd->add_option("--r", r, "Execution-time overhead budget (b_policy=choose)");
  auto* o_sampler = run_cmd->add_option("--sampler", sampler, "statevector | synthetic");
  auto* o_instance = run_cmd->add_option("--instance", instance, "Instance file");
  auto* o_generator = run_cmd->add_option("--generator", generator,
                                          "maxcut-ring | maxcut-path | maxcut-complete | worstcase");
  auto* o_n = run_cmd->add_option("--n", n, "Generator size");
  auto* o_trace = run_cmd->add_option("--trace", trace, "Write the MSB/readout trace CSV here");

  Fig5aOptions f5a;
  auto* fig5a_cmd = app.add_subcommand("fig5a", "Counter width / reduction staircase vs overhead budget");
  std::string t_list, r_list;
  std::int64_t f5a_n = 0;
  auto* o_tl = fig5a_cmd->add_option("--t-values", t_list, "Comma-separated trial counts");
  auto* o_rl = fig5a_cmd->add_option("--r-grid", r_list, "Comma-separated overhead budgets");
  auto* o_f5n = fig5a_cmd->add_option("--n", f5a_n, "Qubits for the bandwidth columns");

  Fig5bOptions f5b;
  auto* fig5b_cmd = app.add_subcommand("fig5b", "Baseline vs proposed link power over N");
  std::int64_t n_min = 0, n_max = 0, n_step = 0;
  int f5b_b = 0;
  std::string n_list, f5b_policy, t_qc_mode;
  auto* o_nmin = fig5b_cmd->add_option("--n-min", n_min);
  auto* o_nmax = fig5b_cmd->add_option("--n-max", n_max);
  auto* o_nstep = fig5b_cmd->add_option("--n-step", n_step);
  auto* o_nlist = fig5b_cmd->add_option("--n-list", n_list, "Comma-separated N values");
  auto* o_f5policy = fig5b_cmd->add_option("--b-policy", f5b_policy, "log2n | fixed");
  auto* o_f5b = fig5b_cmd->add_option("--b", f5b_b, "Counter width for --b-policy fixed");
  auto* o_tqc = fig5b_cmd->add_option("--t-qc", t_qc_mode, "preset (750 ns) | model");

  AuditOptions aud;
  auto* audit_cmd = app.add_subcommand("audit", "Check counter-architecture invariants");
  std::size_t a_instances = 0, a_nmax = 0, a_tmax = 0;
  int a_bmin = 0, a_bmax = 0, a_readout = 0;
  std::string inject;
  auto* o_ai = audit_cmd->add_option("--instances", a_instances);
  auto* o_an = audit_cmd->add_option("--n-max", a_nmax);
  auto* o_at = audit_cmd->add_option("--t-max", a_tmax);
  auto* o_abmin = audit_cmd->add_option("--b-min", a_bmin);
  auto* o_abmax = audit_cmd->add_option("--b-max", a_bmax);
  auto* o_ar = audit_cmd->add_option("--readout-b-max", a_readout);
  audit_cmd->add_flag("--exhaustive", aud.exhaustive, "Enumerate all small cases");
  auto* o_inject = audit_cmd->add_option("--inject", inject, "Fault to inject: drop-msb");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (*config_opt) g.config = config_path;
  if (*seed_opt) g.seed = seed;
  if (*out_opt) g.out = out_path;

  if (*run_cmd) {
    if (*o_trials) run.trials = trials;
    if (*o_b) run.b = b;
    if (*o_policy) run.b_policy = b_policy;
    if (*o_r) run.r = r;
    if (*o_sampler) run.sampler = sampler;
    if (*o_instance) run.instance = instance;
    if (*o_generator) run.generator = generator;
    if (*o_n) run.n = n;
    if (*o_trace) run.trace = trace;
    return cmd_run(g, run, out, err);
  }
  if (*fig5a_cmd) {
    try {
      if (*o_tl) f5a.t_values = parse_int_list(t_list);
      if (*o_rl) f5a.r_grid = parse_double_list(r_list);
    } catch (const ValidationError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }
    if (*o_f5n) f5a.n = f5a_n;
    return cmd_fig5a(g, f5a, out, err);
  }
  if (*fig5b_cmd) {
    if (*o_nmin) f5b.n_min = n_min;
    if (*o_nmax) f5b.n_max = n_max;
    if (*o_nstep) f5b.n_step = n_step;
    try {
      if (*o_nlist) f5b.n_list = parse_int_list(n_list);
    } catch (const ValidationError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }
    if (*o_f5policy) f5b.b_policy = f5b_policy;
    if (*o_f5b) f5b.b = f5b_b;
    if (*o_tqc) f5b.t_qc = t_qc_mode;
    return cmd_fig5b(g, f5b, out, err);
  }
  if (*audit_cmd) {
    if (*o_ai) aud.instances = a_instances;
    if (*o_an) aud.n_max = a_nmax;
    if (*o_at) aud.t_max = a_tmax;
    if (*o_abmin) aud.b_min = a_bmin;
    if (*o_abmax) aud.b_max = a_bmax;
    if (*o_ar) aud.readout_b_max = a_readout;
    if (*o_inject) aud.inject = inject;
    return cmd_audit(g, aud, out, err);
  }
  return kExitUsage;
}

}  // namespace cryoqaoa::cli
