#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lexacq {

// Malformed file or unparseable input. The message carries the line number
// where one exists.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A phone is an atomic speech-sound token ("dh", "@", "k"). A sememe is an
// atomic semantic identifier ("SOCK"). Both are plain strings compared by
// exact equality; see is_valid_phone / is_valid_sememe for the allowed
// alphabets.
using Phone = std::string;
using Sememe = std::string;
using PhoneSeq = std::vector<Phone>;
using SememeSet = std::set<Sememe>;

// Printable ASCII, no whitespace, and none of the separator characters
// ('.' '|') used by canonical ids. The separator exclusion is what makes
// canonical_id injective.
bool is_valid_phone(const std::string& symbol);

// [A-Z0-9_]+
bool is_valid_sememe(const std::string& symbol);

void validate_phones(const PhoneSeq& phones);    // throws std::invalid_argument
void validate_sememes(const SememeSet& sememes); // throws std::invalid_argument

// A dictionary word: a phone sequence plus the set of semantic symbols it
// accounts for, with usage bookkeeping for the maintenance passes.
struct LexEntry {
  PhoneSeq phones;
  SememeSet sememes;
  std::uint64_t use_count = 0;         // placements in accepted parses, ever
  std::uint64_t window_use_count = 0;  // same, since the last maintenance pass
  std::uint64_t created_at = 0;        // utterances seen when the entry was added

  bool operator==(const LexEntry& other) const = default;
};

// One training or test input: an unsegmented phone sequence paired with an
// unordered set of sememes.
struct Utterance {
  PhoneSeq phones;
  SememeSet sememes;

  bool operator==(const Utterance& other) const = default;
};

// "n.i.n.a|NINA" — phones joined by '.', then '|', then the sememes in
// lexicographic order joined by ','. Unique per (phones, sememes) pair.
std::string canonical_id(const PhoneSeq& phones, const SememeSet& sememes);
std::string canonical_id(const LexEntry& entry);

// Inverse of canonical_id; validates both halves. Throws FormatError.
std::pair<PhoneSeq, SememeSet> parse_canonical_id(const std::string& id);

std::vector<std::string> split(const std::string& s, char sep);
std::string join(const std::vector<std::string>& parts, const std::string& sep);
std::string join(const SememeSet& parts, const std::string& sep);

}  // namespace lexacq
