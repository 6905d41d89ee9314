#pragma once

// Classical side of the QAOA problem: an Ising-form instance and the cost
// function C(z) = sum_i s_i z_i + sum_{i<j} c_ij (z_i xor z_j) evaluated on
// measured bitstrings. The artifact minimizes C(z).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace cryoqaoa {

class KvDocument;

// Coefficients are exact rationals. Integer, fraction ("3/4") and decimal
// ("0.25") inputs all convert without rounding, so energy comparisons between
// the baseline and the counter architecture can be exact.
using Coefficient = boost::rational<std::int64_t>;

Coefficient parse_coefficient(std::string_view text);
std::string format_coefficient(const Coefficient& c);
inline double to_double(const Coefficient& c) {
  return boost::rational_cast<double>(c);
}

// Unordered qubit pair stored canonically with i < j.
struct QubitPair {
  std::size_t i = 0;
  std::size_t j = 0;

  static QubitPair canonical(std::size_t a, std::size_t b) {
    return a < b ? QubitPair{a, b} : QubitPair{b, a};
  }
  auto operator<=>(const QubitPair&) const = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

// One measurement result z in {0,1}^N. Character k of the string form is
// qubit k, so "001" has z_2 = 1.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);
  static BitString from_string(std::string_view text);
  // Qubit k is bit k of `index`.
  static BitString from_index(std::uint64_t index, std::size_t n);
  static BitString zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t k) const { return bits_[k]; }
  void set(std::size_t k, bool v) { bits_[k] = v ? 1 : 0; }
  std::uint64_t to_index() const;
  std::string to_string() const;
  BitString complement() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class IsingInstance {
 public:
  explicit IsingInstance(std::size_t n_qubits, std::string label = {});

  std::size_t n_qubits() const { return n_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  // Setting a zero coefficient removes the term. Both return true when an
  // existing nonzero coefficient was replaced.
  bool set_linear(std::size_t i, Coefficient s);
  bool set_pair(std::size_t i, std::size_t j, Coefficient c);

  Coefficient linear(std::size_t i) const;
  Coefficient pair(std::size_t i, std::size_t j) const;

  const std::map<std::size_t, Coefficient>& linear_terms() const { return linear_; }
  const std::map<QubitPair, Coefficient>& pair_terms() const { return pairs_; }

  // S and C: nonzero linear and pairwise term counts.
  std::size_t linear_count() const { return linear_.size(); }
  std::size_t pair_count() const { return pairs_.size(); }

  bool all_linear_zero() const { return linear_.empty(); }

 private:
  void check_index(std::size_t i) const;

  std::size_t n_;
  std::string label_;
  std::map<std::size_t, Coefficient> linear_;
  std::map<QubitPair, Coefficient> pairs_;
};

Coefficient cost(const IsingInstance& instance, const BitString& z);

// (1/T) sum_t cost(z_t), exact.
Coefficient sampled_energy(const IsingInstance& instance,
                           std::span<const BitString> trials);

// c_ij = -1 per edge, s_i = 0, so minimizing C(z) maximizes the cut.
IsingInstance maxcut_instance(std::span<const Edge> edges, std::size_t n);

// Path graph on n nodes: S = 0, C = n - 1, connected.
IsingInstance worstcase_instance(std::size_t n);

std::vector<Edge> ring_edges(std::size_t n);
std::vector<Edge> path_edges(std::size_t n);
std::vector<Edge> complete_edges(std::size_t n);

// Connectivity of the interaction graph (nodes = qubits, edges = nonzero
// pair terms).
bool is_connected(const IsingInstance& instance);

// Instance file: root key `n`, optional `label`, sections [linear] with
// `i = s_i` and [pairs] with `i j = c_ij`. Duplicate keys replace earlier
// coefficients and append a message to `warnings`.
IsingInstance instance_from_document(const KvDocument& doc,
                                     std::vector<std::string>* warnings = nullptr);
IsingInstance load_instance_file(const std::filesystem::path& path,
                                 std::vector<std::string>* warnings = nullptr);
std::string format_instance(const IsingInstance& instance);

// Whitespace-separated `i j` lines; '#' starts a comment.
std::vector<Edge> parse_edge_list(std::string_view text,
                                  const std::string& source = "<edges>");
std::vector<Edge> load_edge_list(const std::filesystem::path& path);

}  // namespace cryoqaoa
