#pragma once

// Scenario config for `run`, in the same key-value dialect as instance
// files:
//
//   [instance]   file = ring8.inst | edges = g.txt | generator = maxcut-ring
//                n = 8
//   [qaoa]       sampler = statevector | synthetic
//                gammas = 0.6, 0.2   betas = 0.35, 0.1   p = 0.5
//                optimize_steps = 0
//   [run]        trials = 4096  b = 4  b_policy = fixed | choose | log2n
//                r = 0.05  seed = 7  parallelism = 8  param_bits = 32
//                t_c_ns = ...  trace = trace.csv  out = run.csv
//   [timings]    preset = paper-v1  t_reset = 100 ...  (ns)
//
// Relative paths resolve against the config file's directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cryoqaoa/ising.hpp"
#include "cryoqaoa/timing.hpp"

namespace cryoqaoa {

class KvDocument;

namespace cli {

struct ScenarioConfig {
  std::filesystem::path source;

  std::optional<std::filesystem::path> instance_file;
  std::optional<std::filesystem::path> edge_file;
  std::string generator = "maxcut-ring";
  std::size_t generator_n = 8;

  std::string sampler = "statevector";
  std::vector<double> gammas{0.6};
  std::vector<double> betas{0.35};
  double synthetic_p = 0.5;
  std::size_t optimize_steps = 0;

  std::int64_t trials = 1024;
  std::string b_policy = "fixed";
  int b = 4;
  double r = 0.05;
  std::uint64_t seed = 1;
  std::int64_t parallelism = 0;  // 0: P = N
  std::int64_t param_bits = 32;
  std::optional<double> t_c_ns;

  std::string timings_preset = "paper-v1";
  GateTimings timings = v1_gate_timings();

  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> trace;

  // Throws ConfigError naming the offending field.
  void validate() const;
  // Single-line "key=value; ..." rendering of every resolved field.
  std::string describe() const;
};

ScenarioConfig scenario_from_document(const KvDocument& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Builds the instance named by the config; warnings from the instance file
// are appended to `warnings`.
IsingInstance build_instance(const ScenarioConfig& config,
                             std::vector<std::string>* warnings = nullptr);

std::vector<double> parse_double_list(const std::string& text);
std::vector<std::int64_t> parse_int_list(const std::string& text);

}  // namespace cli
}  // namespace cryoqaoa
