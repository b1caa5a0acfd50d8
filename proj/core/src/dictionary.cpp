#include "lexacq/dictionary.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lexacq {

namespace {

std::uint64_t parse_u64(const std::string& field, std::size_t line_no, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": bad " + what + " '" + field + "'");
  }
  return value;
}

constexpr const char* kHeaderPrefix = "# lexacq-lexicon v1";

}  // namespace

AddOutcome Dictionary::add(const LexEntry& entry, bool gate_on) {
  validate_phones(entry.phones);
  validate_sememes(entry.sememes);
  if (entry.window_use_count > entry.use_count) {
    throw std::invalid_argument("window_use_count exceeds use_count");
  }
  if (gate_on && entry.sememes.empty()) return AddOutcome::GateRejected;
  std::string id = canonical_id(entry);
  auto [it, inserted] = entries_.try_emplace(std::move(id), entry);
  if (!inserted) return AddOutcome::Merged;
  ++version_;
  return AddOutcome::Added;
}

const LexEntry* Dictionary::find(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

LexEntry* Dictionary::find(const std::string& id) {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

void Dictionary::erase(const std::string& id) {
  if (entries_.erase(id) > 0) ++version_;
}

void Dictionary::reset_window_counts() {
  for (auto& [id, entry] : entries_) entry.window_use_count = 0;
}

std::string dictionary_to_tsv(const Dictionary& dict) {
  std::ostringstream out;
  out << kHeaderPrefix << " utterances_seen=" << dict.utterances_seen
      << " maintenance_interval=" << dict.maintenance_interval << "\n";
  for (const auto& [id, entry] : dict.entries()) {
    out << join(entry.phones, ".") << '\t' << join(entry.sememes, ",") << '\t'
        << entry.use_count << '\t' << entry.window_use_count << '\t' << entry.created_at << '\n';
  }
  return out.str();
}

Dictionary dictionary_from_tsv(const std::string& text, bool gate_on) {
  Dictionary dict;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(kHeaderPrefix, 0) == 0) {
        std::istringstream hdr(line.substr(std::string(kHeaderPrefix).size()));
        std::string kv;
        while (hdr >> kv) {
          auto eq = kv.find('=');
          if (eq == std::string::npos) continue;
          std::string key = kv.substr(0, eq);
          std::string value = kv.substr(eq + 1);
          if (key == "utterances_seen") dict.utterances_seen = parse_u64(value, line_no, "utterances_seen");
          if (key == "maintenance_interval") dict.maintenance_interval = parse_u64(value, line_no, "maintenance_interval");
        }
      }
      continue;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 5) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 5 tab-separated fields, got " +
                        std::to_string(fields.size()));
    }
    LexEntry entry;
    entry.phones = split(fields[0], '.');
    if (!fields[1].empty()) {
      for (auto& s : split(fields[1], ',')) entry.sememes.insert(s);
    }
    entry.use_count = parse_u64(fields[2], line_no, "use_count");
    entry.window_use_count = parse_u64(fields[3], line_no, "window_use_count");
    entry.created_at = parse_u64(fields[4], line_no, "created_at");
    try {
      validate_phones(entry.phones);
      validate_sememes(entry.sememes);
    } catch (const std::invalid_argument& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (entry.window_use_count > entry.use_count) {
      throw FormatError("line " + std::to_string(line_no) + ": window_use_count exceeds use_count");
    }
    if (gate_on && entry.sememes.empty()) {
      throw FormatError("line " + std::to_string(line_no) + ": empty sememe set with the empty-semantics gate on");
    }
    std::string id = canonical_id(entry);
    if (dict.contains(id)) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate canonical id '" + id + "'");
    }
    dict.add(entry, /*gate_on=*/false);
  }
  return dict;
}

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << dictionary_to_tsv(dict);
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

Dictionary load_dictionary(const std::filesystem::path& path, bool gate_on) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return dictionary_from_tsv(buffer.str(), gate_on);
}

}  // namespace lexacq
