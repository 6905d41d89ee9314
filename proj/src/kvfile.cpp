#include "cryoqaoa/kvfile.hpp"

#include <fstream>
#include <sstream>

#include "cryoqaoa/errors.hpp"

namespace cryoqaoa {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

const KvEntry* KvSection::find(std::string_view key) const {
  // Later duplicates win, matching "last assignment" semantics.
  const KvEntry* found = nullptr;
  for (const auto& e : entries) {
    if (e.key == key) found = &e;
  }
  return found;
}

KvDocument KvDocument::parse(std::string_view text, std::string source) {
  KvDocument doc;
  doc.source_ = std::move(source);
  doc.sections_.push_back(KvSection{"", 0, {}});

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const auto line = trim(raw);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(doc.source_, line_no, "malformed section header");
      }
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) {
        throw ConfigError(doc.source_, line_no, "empty section name");
      }
      doc.sections_.push_back(KvSection{std::string(name), line_no, {}});
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(doc.source_, line_no, "expected 'key = value'");
      }
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key.empty()) {
        throw ConfigError(doc.source_, line_no, "missing key before '='");
      }
      doc.sections_.back().entries.push_back(
          KvEntry{std::string(key), std::string(value), line_no});
    }
    if (eol == text.size()) break;
  }
  return doc;
}

KvDocument KvDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string(), 0, "cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const KvSection* KvDocument::section(std::string_view name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const KvEntry* KvDocument::entry(std::string_view section_name,
                                 std::string_view key) const {
  const KvEntry* found = nullptr;
  for (const auto& s : sections_) {
    if (s.name != section_name) continue;
    if (const auto* e = s.find(key)) found = e;
  }
  return found;
}

std::optional<std::string> KvDocument::get(std::string_view section_name,
                                           std::string_view key) const {
  if (const auto* e = entry(section_name, key)) return e->value;
  return std::nullopt;
}

}  // namespace cryoqaoa
