#include "cryoqaoa/ising.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cryoqaoa/errors.hpp"
#include "cryoqaoa/kvfile.hpp"

namespace cryoqaoa {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ValidationError("invalid " + std::string(what) + " '" +
                          std::string(text) + "'");
  }
  return value;
}

std::size_t parse_index(std::string_view text) {
  const auto v = parse_int(text, "qubit index");
  if (v < 0) throw ValidationError("negative qubit index '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

std::int64_t pow10(int k) {
  std::int64_t p = 1;
  for (int i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(p, 10, &p)) {
      throw ValidationError("coefficient has too many digits for exact storage");
    }
  }
  return p;
}

// "[-]digits[.digits][e[+-]digits]" as an exact rational.
Coefficient parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = static_cast<int>(parse_int(text.substr(e + 1), "exponent"));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (const char ch : mantissa) {
    if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_dot) ++frac_digits;
    } else {
      throw ValidationError("invalid coefficient '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) {
    throw ValidationError("invalid coefficient '" + std::string(text) + "'");
  }
  const auto start = digits.find_first_not_of('0');
  digits = start == std::string::npos ? "0" : digits.substr(start);
  std::int64_t num = parse_int(digits, "coefficient");
  if (negative) num = -num;
  const int scale = exponent - frac_digits;
  if (scale >= 0) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(num, pow10(scale), &out)) {
      throw ValidationError("coefficient out of range '" + std::string(text) + "'");
    }
    return Coefficient(out);
  }
  return Coefficient(num, pow10(-scale));
}

void append_warning(std::vector<std::string>* warnings, std::string msg) {
  if (warnings) warnings->push_back(std::move(msg));
}

}  // namespace

Coefficient parse_coefficient(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ValidationError("empty coefficient");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(trim(text.substr(0, slash)), "numerator");
    const auto den = parse_int(trim(text.substr(slash + 1)), "denominator");
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Coefficient(num, den);
  }
  return parse_decimal(text);
}

std::string format_coefficient(const Coefficient& c) {
  if (c.denominator() == 1) return std::to_string(c.numerator());
  return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw ValidationError("bit value outside {0,1}");
  }
}

BitString BitString::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (const char ch : text) {
    if (ch != '0' && ch != '1') {
      throw ValidationError("bitstring may only contain '0' and '1': '" +
                            std::string(text) + "'");
    }
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return BitString(std::move(bits));
}

BitString BitString::from_index(std::uint64_t index, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t k = 0; k < n; ++k) bits[k] = (index >> k) & 1U;
  return BitString(std::move(bits));
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 64) throw CapacityError("bitstring longer than 64 bits");
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    idx |= static_cast<std::uint64_t>(bits_[k]) << k;
  }
  return idx;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) s[k] = '1';
  }
  return s;
}

BitString BitString::complement() const {
  auto bits = bits_;
  for (auto& b : bits) b ^= 1U;
  return BitString(std::move(bits));
}

IsingInstance::IsingInstance(std::size_t n_qubits, std::string label)
    : n_(n_qubits), label_(std::move(label)) {
  if (n_ == 0) throw ValidationError("instance needs at least one qubit");
}

void IsingInstance::check_index(std::size_t i) const {
  if (i >= n_) {
    throw ValidationError("qubit index " + std::to_string(i) +
                          " outside [0, " + std::to_string(n_) + ")");
  }
}

bool IsingInstance::set_linear(std::size_t i, Coefficient s) {
  check_index(i);
  const bool replaced = linear_.erase(i) > 0;
  if (s.numerator() != 0) linear_.emplace(i, s);
  return replaced;
}

bool IsingInstance::set_pair(std::size_t i, std::size_t j, Coefficient c) {
  check_index(i);
  check_index(j);
  if (i == j) {
    throw ValidationError("self-loop on qubit " + std::to_string(i));
  }
  const auto key = QubitPair::canonical(i, j);
  const bool replaced = pairs_.erase(key) > 0;
  if (c.numerator() != 0) pairs_.emplace(key, c);
  return replaced;
}

Coefficient IsingInstance::linear(std::size_t i) const {
  const auto it = linear_.find(i);
  return it == linear_.end() ? Coefficient(0) : it->second;
}

Coefficient IsingInstance::pair(std::size_t i, std::size_t j) const {
  const auto it = pairs_.find(QubitPair::canonical(i, j));
  return it == pairs_.end() ? Coefficient(0) : it->second;
}

Coefficient cost(const IsingInstance& instance, const BitString& z) {
  if (z.size() != instance.n_qubits()) {
    throw DimensionError("bitstring length " + std::to_string(z.size()) +
                         " does not match N = " +
                         std::to_string(instance.n_qubits()));
  }
  Coefficient total(0);
  for (const auto& [i, s] : instance.linear_terms()) {
    if (z[i]) total += s;
  }
  for (const auto& [p, c] : instance.pair_terms()) {
    if (z[p.i] != z[p.j]) total += c;
  }
  return total;
}

Coefficient sampled_energy(const IsingInstance& instance,
                           std::span<const BitString> trials) {
  if (trials.empty()) throw DomainError("sampled_energy needs at least one trial");
  Coefficient sum(0);
  for (const auto& z : trials) sum += cost(instance, z);
  return sum / static_cast<std::int64_t>(trials.size());
}

IsingInstance maxcut_instance(std::span<const Edge> edges, std::size_t n) {
  IsingInstance inst(n, "maxcut");
  for (const auto& [i, j] : edges) {
    if (i == j) throw ValidationError("self-loop edge on node " + std::to_string(i));
    inst.set_pair(i, j, Coefficient(-1));
  }
  return inst;
}

IsingInstance worstcase_instance(std::size_t n) {
  if (n < 2) throw DomainError("worst-case instance needs n >= 2");
  IsingInstance inst(n, "worstcase-path");
  for (std::size_t i = 0; i + 1 < n; ++i) inst.set_pair(i, i + 1, Coefficient(1));
  return inst;
}

std::vector<Edge> ring_edges(std::size_t n) {
  std::vector<Edge> edges;
  if (n < 2) return edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  if (n > 2) edges.emplace_back(n - 1, 0);
  return edges;
}

std::vector<Edge> path_edges(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return edges;
}

std::vector<Edge> complete_edges(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return edges;
}

bool is_connected(const IsingInstance& instance) {
  const auto n = instance.n_qubits();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& [p, c] : instance.pair_terms()) {
    const auto a = find(p.i);
    const auto b = find(p.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

IsingInstance instance_from_document(const KvDocument& doc,
                                     std::vector<std::string>* warnings) {
  const auto* n_entry = doc.entry("", "n");
  if (!n_entry) throw ConfigError(doc.source(), 0, "missing 'n = <qubits>'");
  std::size_t n = 0;
  try {
    n = parse_index(n_entry->value);
  } catch (const ValidationError& e) {
    throw ConfigError(doc.source(), n_entry->line, e.what());
  }
  if (n == 0) throw ConfigError(doc.source(), n_entry->line, "n must be positive");
  IsingInstance inst(n, doc.get("", "label").value_or(""));

  for (const auto& section : doc.sections()) {
    for (const auto& e : section.entries) {
      try {
        if (section.name.empty()) {
          if (e.key != "n" && e.key != "label") {
            throw ValidationError("unknown key '" + e.key + "'");
          }
        } else if (section.name == "linear") {
          const auto i = parse_index(trim(e.key));
          if (inst.set_linear(i, parse_coefficient(e.value))) {
            append_warning(warnings, doc.source() + ":" + std::to_string(e.line) +
                                         ": duplicate linear term " + e.key +
                                         " replaces earlier coefficient");
          }
        } else if (section.name == "pairs") {
          std::istringstream ks(e.key);
          std::string a, b, extra;
          if (!(ks >> a >> b) || (ks >> extra)) {
            throw ValidationError("pair key must be 'i j'");
          }
          const auto i = parse_index(a);
          const auto j = parse_index(b);
          if (inst.set_pair(i, j, parse_coefficient(e.value))) {
            append_warning(warnings, doc.source() + ":" + std::to_string(e.line) +
                                         ": duplicate pair (" + a + "," + b +
                                         ") replaces earlier coefficient");
          }
        } else {
          throw ValidationError("unknown section [" + section.name + "]");
        }
      } catch (const ValidationError& ex) {
        throw ConfigError(doc.source(), e.line, ex.what());
      }
    }
    if (!section.name.empty() && section.name != "linear" && section.name != "pairs") {
      throw ConfigError(doc.source(), section.line,
                        "unknown section [" + section.name + "]");
    }
  }
  return inst;
}

IsingInstance load_instance_file(const std::filesystem::path& path,
                                 std::vector<std::string>* warnings) {
  return instance_from_document(KvDocument::load(path), warnings);
}

std::string format_instance(const IsingInstance& instance) {
  std::ostringstream out;
  out << "n = " << instance.n_qubits() << "\n";
  if (!instance.label().empty()) out << "label = " << instance.label() << "\n";
  if (!instance.linear_terms().empty()) {
    out << "[linear]\n";
    for (const auto& [i, s] : instance.linear_terms()) {
      out << i << " = " << format_coefficient(s) << "\n";
    }
  }
  if (!instance.pair_terms().empty()) {
    out << "[pairs]\n";
    for (const auto& [p, c] : instance.pair_terms()) {
      out << p.i << " " << p.j << " = " << format_coefficient(c) << "\n";
    }
  }
  return out.str();
}

std::vector<Edge> parse_edge_list(std::string_view text, const std::string& source) {
  std::vector<Edge> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    try {
      if (!(ls >> b) || (ls >> extra)) throw ValidationError("expected 'i j'");
      const auto i = parse_index(a);
      const auto j = parse_index(b);
      if (i == j) throw ValidationError("self-loop on node " + a);
      edges.emplace_back(i, j);
    } catch (const ValidationError& e) {
      throw ConfigError(source, line_no, e.what());
    }
  }
  return edges;
}

std::vector<Edge> load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str(), path.string());
}

}  // namespace cryoqaoa
