#pragma once

// Human-readable key-value text used for instance files and scenario
// configs:
//
//   # comment
//   n = 5
//   [pairs]
//   0 1 = -1
//
// Keys are everything left of the first '=', trimmed; values everything to
// the right. Entries before the first [section] header belong to the
// unnamed root section "".

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cryoqaoa {

struct KvEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct KvSection {
  std::string name;
  int line = 0;
  std::vector<KvEntry> entries;

  const KvEntry* find(std::string_view key) const;
};

class KvDocument {
 public:
  static KvDocument parse(std::string_view text, std::string source = "<string>");
  static KvDocument load(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  const std::vector<KvSection>& sections() const { return sections_; }

  // First section with this name, or nullptr.
  const KvSection* section(std::string_view name) const;
  // Lookup `key` in `section`; nullopt when either is absent.
  std::optional<std::string> get(std::string_view section,
                                 std::string_view key) const;
  const KvEntry* entry(std::string_view section, std::string_view key) const;

 private:
  std::string source_;
  std::vector<KvSection> sections_;
};

std::string_view trim(std::string_view s);

}  // namespace cryoqaoa
