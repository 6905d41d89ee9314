#include "cryoqaoa/cli/scenario.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "cryoqaoa/errors.hpp"
#include "cryoqaoa/kvfile.hpp"

namespace cryoqaoa::cli {
namespace {

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

// Integers may be written as 1e7.
std::int64_t parse_integer(std::string_view text) {
  const double v = parse_double(text);
  if (std::floor(v) != v || std::fabs(v) > 9.0e15) {
    throw ValidationError("expected an integer, got '" + std::string(trim(text)) + "'");
  }
  return static_cast<std::int64_t>(v);
}

class Reader {
 public:
  explicit Reader(const KvDocument& doc) : doc_(doc) {}

  template <typename F>
  void with(std::string_view section, std::string_view key, F&& apply) {
    const auto* e = doc_.entry(section, key);
    if (!e) return;
    try {
      apply(e->value);
    } catch (const ValidationError& ex) {
      throw ConfigError(doc_.source(), e->line,
                        "field '" + std::string(section) + "." + std::string(key) +
                            "': " + ex.what());
    }
  }

 private:
  const KvDocument& doc_;
};

const std::set<std::string>& known_keys(const std::string& section) {
  static const std::set<std::string> instance{"file", "edges", "generator", "n"};
  static const std::set<std::string> qaoa{"sampler", "gammas", "betas", "p",
                                          "optimize_steps"};
  static const std::set<std::string> run{"trials", "b", "b_policy", "r", "seed",
                                         "parallelism", "param_bits", "t_c_ns",
                                         "trace", "out"};
  static const std::set<std::string> timings{"preset", "t_reset", "t_init", "t_rx",
                                             "t_rz", "t_cnot", "t_meas"};
  static const std::set<std::string> none;
  if (section == "instance") return instance;
  if (section == "qaoa") return qaoa;
  if (section == "run") return run;
  if (section == "timings") return timings;
  return none;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ",";
    out += fmt::format("{}", v[k]);
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const auto item = trim(std::string_view(text).substr(pos, comma - pos));
    if (!item.empty()) out.push_back(parse_double(item));
    pos = comma + 1;
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const double v : parse_double_list(text)) {
    if (std::floor(v) != v) throw ValidationError("expected integers in list");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

void ScenarioConfig::validate() const {
  auto fail = [&](const std::string& field, const std::string& why) {
    throw ConfigError(source.empty() ? std::string("<config>") : source.string(), 0,
                      "field '" + field + "': " + why);
  };
  if (!instance_file && !edge_file) {
    static const std::set<std::string> generators{"maxcut-ring", "maxcut-path",
                                                  "maxcut-complete", "worstcase"};
    if (!generators.count(generator)) fail("instance.generator", "unknown generator '" + generator + "'");
    if (generator_n < 2) fail("instance.n", "must be >= 2");
  }
  if (sampler != "statevector" && sampler != "synthetic") {
    fail("qaoa.sampler", "must be 'statevector' or 'synthetic'");
  }
  if (gammas.empty() || gammas.size() != betas.size()) {
    fail("qaoa.gammas", "gammas and betas need the same nonzero length");
  }
  if (!(synthetic_p >= 0.0 && synthetic_p <= 1.0)) fail("qaoa.p", "must be in [0, 1]");
  if (trials < 1) fail("run.trials", "must be >= 1");
  if (b_policy != "fixed" && b_policy != "choose" && b_policy != "log2n") {
    fail("run.b_policy", "must be fixed, choose or log2n");
  }
  if (b < 2 || b > 32) fail("run.b", "must be in [2, 32]");
  if (!(r > 0.0)) fail("run.r", "must be > 0");
  if (parallelism < 0) fail("run.parallelism", "must be >= 0");
  if (param_bits < 0) fail("run.param_bits", "must be >= 0");
  if (t_c_ns && !(*t_c_ns > 0.0)) fail("run.t_c_ns", "must be > 0");
  try {
    timings.validate();
  } catch (const DomainError& e) {
    fail("timings", e.what());
  }
}

std::string ScenarioConfig::describe() const {
  std::string instance = instance_file  ? "file:" + instance_file->string()
                         : edge_file    ? "edges:" + edge_file->string()
                                        : generator + ":" + std::to_string(generator_n);
  return fmt::format(
      "instance={}; sampler={}; gammas={}; betas={}; p={}; optimize_steps={}; trials={}; "
      "b_policy={}; b={}; r={}; seed={}; parallelism={}; param_bits={}; t_c_ns={}; "
      "timings={}; t_reset={}; t_init={}; t_rx={}; t_rz={}; t_cnot={}; t_meas={}",
      instance, sampler, join(gammas), join(betas), synthetic_p, optimize_steps, trials,
      b_policy, b, r, seed, parallelism == 0 ? std::string("N") : std::to_string(parallelism),
      param_bits, t_c_ns ? fmt::format("{}", *t_c_ns) : std::string("min"), timings_preset,
      timings.t_reset.count(), timings.t_init.count(), timings.t_rx.count(),
      timings.t_rz.count(), timings.t_cnot.count(), timings.t_meas.count());
}

ScenarioConfig scenario_from_document(const KvDocument& doc) {
  for (const auto& section : doc.sections()) {
    if (section.name.empty()) {
      if (!section.entries.empty()) {
        throw ConfigError(doc.source(), section.entries.front().line,
                          "keys must appear inside a [section]");
      }
      continue;
    }
    const auto& keys = known_keys(section.name);
    const bool free_form = section.name == "fig5a" || section.name == "fig5b" ||
                           section.name == "audit";
    if (keys.empty() && !free_form) {
      throw ConfigError(doc.source(), section.line, "unknown section [" + section.name + "]");
    }
    if (free_form) continue;
    for (const auto& e : section.entries) {
      if (!keys.count(e.key)) {
        throw ConfigError(doc.source(), e.line,
                          "unknown field '" + section.name + "." + e.key + "'");
      }
    }
  }

  ScenarioConfig c;
  c.source = doc.source();
  const auto base = std::filesystem::path(doc.source()).parent_path();
  auto resolve = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_absolute() ? p : base / p;
  };
  Reader r(doc);

  r.with("instance", "file", [&](const std::string& v) { c.instance_file = resolve(v); });
  r.with("instance", "edges", [&](const std::string& v) { c.edge_file = resolve(v); });
  r.with("instance", "generator", [&](const std::string& v) { c.generator = v; });
  r.with("instance", "n", [&](const std::string& v) {
    const auto n = parse_integer(v);
    if (n < 1) throw ValidationError("must be positive");
    c.generator_n = static_cast<std::size_t>(n);
  });

  r.with("qaoa", "sampler", [&](const std::string& v) { c.sampler = v; });
  r.with("qaoa", "gammas", [&](const std::string& v) { c.gammas = parse_double_list(v); });
  r.with("qaoa", "betas", [&](const std::string& v) { c.betas = parse_double_list(v); });
  r.with("qaoa", "p", [&](const std::string& v) { c.synthetic_p = parse_double(v); });
  r.with("qaoa", "optimize_steps", [&](const std::string& v) {
    const auto s = parse_integer(v);
    if (s < 0) throw ValidationError("must be >= 0");
    c.optimize_steps = static_cast<std::size_t>(s);
  });

  r.with("run", "trials", [&](const std::string& v) { c.trials = parse_integer(v); });
  r.with("run", "b", [&](const std::string& v) { c.b = static_cast<int>(parse_integer(v)); });
  r.with("run", "b_policy", [&](const std::string& v) { c.b_policy = v; });
  r.with("run", "r", [&](const std::string& v) { c.r = parse_double(v); });
  r.with("run", "seed", [&](const std::string& v) {
    const auto s = parse_integer(v);
    if (s < 0) throw ValidationError("must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  });
  r.with("run", "parallelism", [&](const std::string& v) { c.parallelism = parse_integer(v); });
  r.with("run", "param_bits", [&](const std::string& v) { c.param_bits = parse_integer(v); });
  r.with("run", "t_c_ns", [&](const std::string& v) { c.t_c_ns = parse_double(v); });
  r.with("run", "trace", [&](const std::string& v) { c.trace = resolve(v); });
  r.with("run", "out", [&](const std::string& v) { c.out = resolve(v); });

  r.with("timings", "preset", [&](const std::string& v) {
    const auto preset = timing_preset(v);
    if (!preset) throw ValidationError("unknown timing preset '" + v + "'");
    c.timings_preset = v;
    c.timings = *preset;
  });
  auto timing_field = [&](const char* key, Nanoseconds GateTimings::*field) {
    r.with("timings", key, [&](const std::string& v) {
      c.timings.*field = Nanoseconds{parse_double(v)};
      c.timings_preset = "custom";
    });
  };
  timing_field("t_reset", &GateTimings::t_reset);
  timing_field("t_init", &GateTimings::t_init);
  timing_field("t_rx", &GateTimings::t_rx);
  timing_field("t_rz", &GateTimings::t_rz);
  timing_field("t_cnot", &GateTimings::t_cnot);
  timing_field("t_meas", &GateTimings::t_meas);

  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return scenario_from_document(KvDocument::load(path));
}

IsingInstance build_instance(const ScenarioConfig& config,
                             std::vector<std::string>* warnings) {
  if (config.instance_file) {
    if (!std::filesystem::exists(*config.instance_file)) {
      throw ConfigError(config.instance_file->string(), 0, "instance file not found");
    }
    return load_instance_file(*config.instance_file, warnings);
  }
  if (config.edge_file) {
    if (!std::filesystem::exists(*config.edge_file)) {
      throw ConfigError(config.edge_file->string(), 0, "edge list not found");
    }
    const auto edges = load_edge_list(*config.edge_file);
    std::size_t n = 0;
    for (const auto& [i, j] : edges) n = std::max({n, i + 1, j + 1});
    if (n == 0) throw ConfigError(config.edge_file->string(), 0, "edge list is empty");
    return maxcut_instance(edges, n);
  }
  const auto n = config.generator_n;
  IsingInstance inst(1);
  if (config.generator == "maxcut-ring") {
    inst = maxcut_instance(ring_edges(n), n);
  } else if (config.generator == "maxcut-path") {
    inst = maxcut_instance(path_edges(n), n);
  } else if (config.generator == "maxcut-complete") {
    inst = maxcut_instance(complete_edges(n), n);
  } else {
    inst = worstcase_instance(n);
  }
  inst.set_label(config.generator + "-" + std::to_string(n));
  return inst;
}

}  // namespace cryoqaoa::cli
