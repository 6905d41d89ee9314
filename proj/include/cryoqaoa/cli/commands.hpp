#pragma once

// Command implementations behind the `cryoqaoa` executable. Each returns the
// process exit code: 0 ok, 1 invariant violation, 2 usage/config error.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cryoqaoa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool quiet = false;
};

struct RunOptions {
  std::optional<std::int64_t> trials;
  std::optional<int> b;
  std::optional<std::string> b_policy;
  std::optional<double> r;
  std::optional<std::string> sampler;
  std::optional<std::string> instance;  // instance file path
  std::optional<std::string> generator;
  std::optional<std::size_t> n;
  std::optional<std::filesystem::path> trace;
};

struct Fig5aOptions {
  std::optional<std::vector<std::int64_t>> t_values;
  std::optional<std::vector<double>> r_grid;
  std::optional<std::int64_t> n;
};

struct Fig5bOptions {
  std::optional<std::int64_t> n_min;
  std::optional<std::int64_t> n_max;
  std::optional<std::int64_t> n_step;
  std::optional<std::vector<std::int64_t>> n_list;
  std::optional<std::string> b_policy;  // "log2n" or "fixed"
  std::optional<int> b;
  std::optional<std::string> t_qc;      // "preset" or "model"
};

struct AuditOptions {
  std::optional<std::size_t> instances;
  std::optional<std::size_t> n_max;
  std::optional<std::size_t> t_max;
  std::optional<int> b_min;
  std::optional<int> b_max;
  std::optional<int> readout_b_max;
  bool exhaustive = false;
  std::optional<std::string> inject;
};

int cmd_run(const GlobalOptions& g, const RunOptions& o, std::ostream& out, std::ostream& err);
int cmd_fig5a(const GlobalOptions& g, const Fig5aOptions& o, std::ostream& out,
              std::ostream& err);
int cmd_fig5b(const GlobalOptions& g, const Fig5bOptions& o, std::ostream& out,
              std::ostream& err);
int cmd_audit(const GlobalOptions& g, const AuditOptions& o, std::ostream& out,
              std::ostream& err);

// Full argument parsing and dispatch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cryoqaoa::cli
