#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "lexacq/types.hpp"

namespace lexacq {

enum class AddOutcome { Added, Merged, GateRejected };

// The evolving word store. Entries are keyed by canonical id, so iteration
// is always in id order and every downstream output stays deterministic.
// Single writer; readers take an immutable snapshot (see DictView).
class Dictionary {
 public:
  std::uint64_t utterances_seen = 0;
  std::uint64_t maintenance_interval = 1000;

  // Validates the entry first. With gate_on, an entry with an empty sememe
  // set is reported as GateRejected and not stored. Re-adding an existing
  // id keeps the stored counters (Merged).
  AddOutcome add(const LexEntry& entry, bool gate_on);

  bool contains(const std::string& id) const { return entries_.count(id) != 0; }
  const LexEntry* find(const std::string& id) const;
  LexEntry* find(const std::string& id);
  void erase(const std::string& id);
  void reset_window_counts();

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, LexEntry>& entries() const { return entries_; }

  // Content version for parse caching: bumped when the set of (phones,
  // sememes) changes, not when counters move.
  std::uint64_t version() const { return version_; }

  bool operator==(const Dictionary& other) const {
    return utterances_seen == other.utterances_seen && entries_ == other.entries_;
  }

 private:
  std::map<std::string, LexEntry> entries_;
  std::uint64_t version_ = 0;
};

// Lexicon TSV, one entry per line, sorted by canonical id:
//   phones-dotted \t sememes-comma-joined \t use_count \t window_use_count \t created_at
// A header comment line carries utterances_seen / maintenance_interval so
// that save/load round-trips the whole Dictionary; loaders accept files
// without it.
std::string dictionary_to_tsv(const Dictionary& dict);
Dictionary dictionary_from_tsv(const std::string& text, bool gate_on);
void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path, bool gate_on);

}  // namespace lexacq
