#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexacq/types.hpp"

namespace lexacq {

// Deterministic per-word lookup: every surface word has exactly one
// pronunciation, matching the fixed-pronunciation input regime.
struct PronunciationTable {
  std::map<std::string, PhoneSeq> words; // keys lowercased
};

struct SuffixRule {
  std::string suffix;
  std::string replacement; // "ies" -> "y", "ed" -> ""
};

struct StemMap {
  std::map<std::string, Sememe> stems; // surface word -> sememe
  std::vector<SuffixRule> suffix_rules; // matched longest suffix first
  std::set<std::string> function_words;
  bool zero_function_words = false; // function words contribute no sememes
};

// Lowercase, strip [.,?!"] and edge apostrophes; intra-word apostrophes
// survive so clitics can be listed directly ("rabbit's").
std::vector<std::string> tokenize_sentence(const std::string& sentence);

// Concatenated per-word phone sequences, no boundary markers. FormatError
// names the first out-of-vocabulary token and its position.
PhoneSeq g2p_transcribe(const PronunciationTable& table, const std::string& sentence);

// Union of per-token sememes; suffix rules map inflected forms onto their
// stems. FormatError names the first unresolvable token.
SememeSet utterance_semantics(const StemMap& map, const std::string& sentence);

struct GoldSpan {
  int start = 0;
  int end = 0; // exclusive
  std::string entry_id;

  bool operator==(const GoldSpan& other) const = default;
};

struct CorpusRecord {
  PhoneSeq phones;
  SememeSet sememes;
  bool has_gold = false;
  std::vector<GoldSpan> gold; // tiles the phone sequence when present
  std::string text;           // optional original sentence

  bool operator==(const CorpusRecord& other) const = default;
};

// Corpus TSV, one record per line:
//   phones-space-joined \t sememes-space-joined [\t gold-spans] [\t text]
// Gold spans are start:end:id, comma-joined; the field is left empty when a
// record carries text but no gold.
std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::vector<CorpusRecord>& records, const std::filesystem::path& path);
std::vector<CorpusRecord> corpus_from_tsv(const std::string& text);
std::string corpus_to_tsv(const std::vector<CorpusRecord>& records);

struct GeneratorConfig {
  int vocab_size = 60;
  std::vector<Phone> phone_alphabet = {"p", "t", "k", "b", "d", "m", "n", "s",
                                       "l", "r", "w", "y", "a", "e", "i", "o", "u"};
  std::pair<int, int> word_length_range = {2, 6};
  std::pair<int, int> utterance_length_range = {2, 5};
  double zipf_exponent = 1.0;
  // Suffix phones deliberately outside the default stem alphabet, so the
  // synthetic spellings (phone concatenations) stay collision-free.
  std::vector<PhoneSeq> suffix_inventory = {{"z"}, {"g"}};
  double substitution_noise_rate = 0.0; // applied after gold spans are fixed
  int homophone_pairs = 0;              // stem pairs sharing phones, distinct sememes
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  PronunciationTable table;
  StemMap stems;
  std::vector<CorpusRecord> records;
};

// Fully determined by cfg.seed. Stems get one sememe each; suffixed forms
// share their stem's sememe; word choice is Zipfian over all forms.
SyntheticCorpus generate_synthetic(const GeneratorConfig& cfg, int n_utterances);

// Distinct gold-span entries across the records, counters zeroed.
std::vector<LexEntry> gold_entries(const std::vector<CorpusRecord>& records);

// Pronunciation table TSV: word \t phones-space-joined
void save_pronunciation_table(const PronunciationTable& table, const std::filesystem::path& path);
PronunciationTable load_pronunciation_table(const std::filesystem::path& path);

// Stem map TSV: word \t SEMEME
void save_stem_map(const StemMap& map, const std::filesystem::path& path);
StemMap load_stem_map(const std::filesystem::path& path);

// Suffix rules TSV: suffix \t replacement (replacement may be empty)
std::vector<SuffixRule> load_suffix_rules(const std::filesystem::path& path);

// One word per line.
std::set<std::string> load_function_words(const std::filesystem::path& path);

}  // namespace lexacq
