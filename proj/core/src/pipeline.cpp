#include "lexacq/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace lexacq {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

int parse_int(const std::string& field, std::size_t line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": bad " + what + " '" + field + "'");
  }
  return value;
}

// "12:15:" prefix means a new span starts here; anything else is a comma
// that belongs to the previous span's canonical id.
bool looks_like_span_start(const std::string& piece) {
  std::size_t i = 0;
  while (i < piece.size() && std::isdigit(static_cast<unsigned char>(piece[i]))) ++i;
  if (i == 0 || i >= piece.size() || piece[i] != ':') return false;
  std::size_t j = ++i;
  while (j < piece.size() && std::isdigit(static_cast<unsigned char>(piece[j]))) ++j;
  return j > i && j < piece.size() && piece[j] == ':';
}

std::vector<GoldSpan> parse_gold_field(const std::string& field, std::size_t line_no,
                                       std::size_t n_phones) {
  std::vector<std::string> raw;
  for (auto& piece : split(field, ',')) {
    if (raw.empty() || looks_like_span_start(piece)) {
      raw.push_back(piece);
    } else {
      raw.back() += "," + piece;
    }
  }
  std::vector<GoldSpan> spans;
  for (const auto& s : raw) {
    auto c1 = s.find(':');
    auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw FormatError("line " + std::to_string(line_no) + ": bad gold span '" + s + "'");
    }
    GoldSpan span;
    span.start = parse_int(s.substr(0, c1), line_no, "gold span start");
    span.end = parse_int(s.substr(c1 + 1, c2 - c1 - 1), line_no, "gold span end");
    span.entry_id = s.substr(c2 + 1);
    auto [phones, sememes] = parse_canonical_id(span.entry_id);
    if (span.end - span.start != static_cast<int>(phones.size())) {
      throw FormatError("line " + std::to_string(line_no) + ": span " + s.substr(0, c2) +
                        " does not match the length of '" + span.entry_id + "'");
    }
    spans.push_back(std::move(span));
  }
  int expect = 0;
  for (const auto& span : spans) {
    if (span.start != expect) {
      throw FormatError("line " + std::to_string(line_no) + ": gold spans do not tile (position " +
                        std::to_string(expect) + ")");
    }
    expect = span.end;
  }
  if (expect != static_cast<int>(n_phones)) {
    throw FormatError("line " + std::to_string(line_no) + ": gold spans end at " +
                      std::to_string(expect) + ", phones end at " + std::to_string(n_phones));
  }
  return spans;
}

PhoneSeq parse_phone_field(const std::string& field, std::size_t line_no) {
  PhoneSeq phones;
  for (auto& tok : split(field, ' ')) {
    if (tok.empty()) continue;
    if (!is_valid_phone(tok)) {
      throw FormatError("line " + std::to_string(line_no) + ": invalid phone '" + tok + "'");
    }
    phones.push_back(tok);
  }
  return phones;
}

SememeSet parse_sememe_field(const std::string& field, std::size_t line_no) {
  SememeSet sememes;
  for (auto& tok : split(field, ' ')) {
    if (tok.empty()) continue;
    if (!is_valid_sememe(tok)) {
      throw FormatError("line " + std::to_string(line_no) + ": invalid sememe '" + tok + "'");
    }
    sememes.insert(tok);
  }
  return sememes;
}

// Deterministic sampling helpers; the standard distributions are not
// pinned down across library implementations, mt19937_64 itself is.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::uint64_t next() { return engine(); }

  int uniform_int(int lo, int hi) { // inclusive
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return lo + static_cast<int>(r % span);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct Form {
  PhoneSeq phones;
  std::string surface;
  Sememe sememe;
};

}  // namespace

std::vector<std::string> tokenize_sentence(const std::string& sentence) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&]() {
    while (!current.empty() && current.front() == '\'') current.erase(current.begin());
    while (!current.empty() && current.back() == '\'') current.pop_back();
    if (!current.empty()) tokens.push_back(current);
    current.clear();
  };
  for (char c : sentence) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    if (c == '.' || c == ',' || c == '?' || c == '!' || c == '"') continue;
    current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush();
  return tokens;
}

PhoneSeq g2p_transcribe(const PronunciationTable& table, const std::string& sentence) {
  PhoneSeq out;
  auto tokens = tokenize_sentence(sentence);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = table.words.find(tokens[i]);
    if (it == table.words.end()) {
      throw FormatError("token '" + tokens[i] + "' (word " + std::to_string(i + 1) +
                        ") not in the pronunciation table");
    }
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

SememeSet utterance_semantics(const StemMap& map, const std::string& sentence) {
  std::vector<SuffixRule> rules = map.suffix_rules;
  std::stable_sort(rules.begin(), rules.end(), [](const SuffixRule& a, const SuffixRule& b) {
    return a.suffix.size() > b.suffix.size();
  });
  SememeSet out;
  for (const auto& token : tokenize_sentence(sentence)) {
    if (map.zero_function_words && map.function_words.count(token)) continue;
    auto direct = map.stems.find(token);
    if (direct != map.stems.end()) {
      out.insert(direct->second);
      continue;
    }
    bool resolved = false;
    for (const auto& rule : rules) {
      if (token.size() <= rule.suffix.size()) continue;
      if (token.compare(token.size() - rule.suffix.size(), rule.suffix.size(), rule.suffix) != 0) continue;
      std::string stem = token.substr(0, token.size() - rule.suffix.size()) + rule.replacement;
      auto it = map.stems.find(stem);
      if (it != map.stems.end()) {
        out.insert(it->second);
        resolved = true;
        break;
      }
    }
    if (!resolved) throw FormatError("token '" + token + "' has no sememe mapping");
  }
  return out;
}

std::vector<CorpusRecord> corpus_from_tsv(const std::string& text) {
  std::vector<CorpusRecord> records;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 4) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 2-4 tab-separated fields, got " +
                        std::to_string(fields.size()));
    }
    CorpusRecord rec;
    rec.phones = parse_phone_field(fields[0], line_no);
    rec.sememes = parse_sememe_field(fields[1], line_no);
    if (fields.size() >= 3 && !fields[2].empty()) {
      rec.has_gold = true;
      rec.gold = parse_gold_field(fields[2], line_no, rec.phones.size());
    }
    if (fields.size() == 4) rec.text = fields[3];
    records.push_back(std::move(rec));
  }
  return records;
}

std::string corpus_to_tsv(const std::vector<CorpusRecord>& records) {
  std::ostringstream out;
  for (const auto& rec : records) {
    out << join(rec.phones, " ") << '\t' << join(rec.sememes, " ");
    if (rec.has_gold || !rec.text.empty()) {
      out << '\t';
      std::vector<std::string> spans;
      for (const auto& span : rec.gold) {
        spans.push_back(std::to_string(span.start) + ":" + std::to_string(span.end) + ":" + span.entry_id);
      }
      out << join(spans, ",");
    }
    if (!rec.text.empty()) out << '\t' << rec.text;
    out << '\n';
  }
  return out.str();
}

std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path) {
  return corpus_from_tsv(read_file(path));
}

void write_corpus(const std::vector<CorpusRecord>& records, const std::filesystem::path& path) {
  write_file(path, corpus_to_tsv(records));
}

SyntheticCorpus generate_synthetic(const GeneratorConfig& cfg, int n_utterances) {
  if (cfg.vocab_size < 1) throw std::invalid_argument("vocab_size must be >= 1");
  if (cfg.phone_alphabet.empty()) throw std::invalid_argument("phone alphabet is empty");
  if (cfg.substitution_noise_rate < 0.0 || cfg.substitution_noise_rate > 1.0) {
    throw std::invalid_argument("substitution_noise_rate must be in [0,1]");
  }
  if (cfg.substitution_noise_rate > 0.0 && cfg.phone_alphabet.size() < 2) {
    throw std::invalid_argument("substitution noise needs at least 2 alphabet phones");
  }
  if (cfg.word_length_range.first < 1 || cfg.word_length_range.first > cfg.word_length_range.second) {
    throw std::invalid_argument("bad word_length_range");
  }
  if (cfg.utterance_length_range.first < 1 ||
      cfg.utterance_length_range.first > cfg.utterance_length_range.second) {
    throw std::invalid_argument("bad utterance_length_range");
  }
  if (cfg.homophone_pairs * 2 > cfg.vocab_size) {
    throw std::invalid_argument("homophone_pairs needs vocab_size >= 2*pairs");
  }
  for (const auto& p : cfg.phone_alphabet) {
    if (!is_valid_phone(p)) throw std::invalid_argument("invalid alphabet phone '" + p + "'");
  }
  for (const auto& suffix : cfg.suffix_inventory) {
    validate_phones(suffix);
  }

  Rng rng(cfg.seed);

  // stems: pairwise-distinct phone strings and spellings
  std::vector<Form> stems;
  std::set<std::string> used_keys;
  for (int i = 0; i < cfg.vocab_size; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      int len = rng.uniform_int(cfg.word_length_range.first, cfg.word_length_range.second);
      PhoneSeq phones;
      for (int k = 0; k < len; ++k) {
        phones.push_back(cfg.phone_alphabet[rng.uniform_int(0, static_cast<int>(cfg.phone_alphabet.size()) - 1)]);
      }
      std::string key = join(phones, "\x01");
      if (used_keys.count(key)) continue;
      used_keys.insert(key);
      stems.push_back(Form{std::move(phones), "", "S" + std::to_string(i)});
      ok = true;
    }
    if (!ok) throw FormatError("vocabulary collision: could not sample a distinct word after 1000 tries");
  }
  for (int k = 0; k < cfg.homophone_pairs; ++k) {
    stems[2 * k + 1].phones = stems[2 * k].phones; // same sound, own sememe
  }
  for (int i = 0; i < cfg.vocab_size; ++i) {
    stems[i].surface = join(stems[i].phones, "");
    if (cfg.homophone_pairs > 0 && i < 2 * cfg.homophone_pairs && i % 2 == 1) {
      stems[i].surface += "2"; // homophones need a distinct spelling
    }
  }

  std::vector<Form> forms;
  for (const auto& stem : stems) {
    forms.push_back(stem);
    for (const auto& suffix : cfg.suffix_inventory) {
      Form f = stem;
      f.phones.insert(f.phones.end(), suffix.begin(), suffix.end());
      f.surface += join(suffix, "");
      forms.push_back(std::move(f));
    }
  }
  std::set<std::string> surfaces;
  for (const auto& f : forms) {
    if (!surfaces.insert(f.surface).second) {
      throw FormatError("surface collision '" + f.surface +
                        "'; pick a different seed, alphabet, or suffix inventory");
    }
  }

  std::vector<double> cumulative(forms.size());
  double total = 0.0;
  for (std::size_t r = 0; r < forms.size(); ++r) {
    total += std::pow(static_cast<double>(r + 1), -cfg.zipf_exponent);
    cumulative[r] = total;
  }

  SyntheticCorpus corpus;
  for (const auto& f : forms) {
    corpus.table.words[f.surface] = f.phones;
    corpus.stems.stems[f.surface] = f.sememe;
  }

  for (int u = 0; u < n_utterances; ++u) {
    int n_words = rng.uniform_int(cfg.utterance_length_range.first, cfg.utterance_length_range.second);
    CorpusRecord rec;
    rec.has_gold = true;
    std::vector<std::string> words;
    for (int k = 0; k < n_words; ++k) {
      double x = rng.uniform01() * total;
      std::size_t idx = std::lower_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin();
      if (idx >= forms.size()) idx = forms.size() - 1;
      const Form& f = forms[idx];
      GoldSpan span;
      span.start = static_cast<int>(rec.phones.size());
      span.end = span.start + static_cast<int>(f.phones.size());
      span.entry_id = canonical_id(f.phones, SememeSet{f.sememe});
      rec.gold.push_back(std::move(span));
      rec.phones.insert(rec.phones.end(), f.phones.begin(), f.phones.end());
      rec.sememes.insert(f.sememe);
      words.push_back(f.surface);
    }
    rec.text = join(words, " ");
    if (cfg.substitution_noise_rate > 0.0) {
      for (auto& phone : rec.phones) {
        if (rng.uniform01() >= cfg.substitution_noise_rate) continue;
        int alternatives = 0;
        for (const auto& p : cfg.phone_alphabet) {
          if (p != phone) ++alternatives;
        }
        if (alternatives == 0) continue;
        int pick = rng.uniform_int(0, alternatives - 1);
        for (const auto& p : cfg.phone_alphabet) {
          if (p == phone) continue;
          if (pick-- == 0) {
            phone = p;
            break;
          }
        }
      }
    }
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

std::vector<LexEntry> gold_entries(const std::vector<CorpusRecord>& records) {
  std::set<std::string> ids;
  for (const auto& rec : records) {
    for (const auto& span : rec.gold) ids.insert(span.entry_id);
  }
  std::vector<LexEntry> entries;
  entries.reserve(ids.size());
  for (const auto& id : ids) {
    auto [phones, sememes] = parse_canonical_id(id);
    entries.push_back(LexEntry{std::move(phones), std::move(sememes)});
  }
  return entries;
}

void save_pronunciation_table(const PronunciationTable& table, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& [word, phones] : table.words) out << word << '\t' << join(phones, " ") << '\n';
  write_file(path, out.str());
}

PronunciationTable load_pronunciation_table(const std::filesystem::path& path) {
  PronunciationTable table;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'word<TAB>phones'");
    }
    PhoneSeq phones = parse_phone_field(fields[1], line_no);
    if (phones.empty()) {
      throw FormatError("line " + std::to_string(line_no) + ": empty pronunciation for '" + fields[0] + "'");
    }
    table.words[fields[0]] = std::move(phones);
  }
  return table;
}

void save_stem_map(const StemMap& map, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& [word, sememe] : map.stems) out << word << '\t' << sememe << '\n';
  write_file(path, out.str());
}

StemMap load_stem_map(const std::filesystem::path& path) {
  StemMap map;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || !is_valid_sememe(fields[1])) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'word<TAB>SEMEME'");
    }
    map.stems[fields[0]] = fields[1];
  }
  return map;
}

std::vector<SuffixRule> load_suffix_rules(const std::filesystem::path& path) {
  std::vector<SuffixRule> rules;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() < 1 || fields.size() > 2 || fields[0].empty()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'suffix<TAB>replacement'");
    }
    rules.push_back(SuffixRule{fields[0], fields.size() == 2 ? fields[1] : std::string()});
  }
  return rules;
}

std::set<std::string> load_function_words(const std::filesystem::path& path) {
  std::set<std::string> words;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    words.insert(line);
  }
  return words;
}

}  // namespace lexacq
