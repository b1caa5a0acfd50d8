#include "lexacq/types.hpp"

#include <sstream>

namespace lexacq {

bool is_valid_phone(const std::string& symbol) {
  if (symbol.empty()) return false;
  for (unsigned char c : symbol) {
    if (c <= 0x20 || c >= 0x7f) return false;
    if (c == '.' || c == '|') return false;
  }
  return true;
}

bool is_valid_sememe(const std::string& symbol) {
  if (symbol.empty()) return false;
  for (unsigned char c : symbol) {
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

void validate_phones(const PhoneSeq& phones) {
  if (phones.empty()) throw std::invalid_argument("entry phone sequence is empty");
  for (const auto& p : phones) {
    if (!is_valid_phone(p)) throw std::invalid_argument("invalid phone symbol: '" + p + "'");
  }
}

void validate_sememes(const SememeSet& sememes) {
  for (const auto& s : sememes) {
    if (!is_valid_sememe(s)) throw std::invalid_argument("invalid sememe symbol: '" + s + "'");
  }
}

std::string canonical_id(const PhoneSeq& phones, const SememeSet& sememes) {
  std::string id = join(phones, ".");
  id += '|';
  id += join(sememes, ",");
  return id;
}

std::string canonical_id(const LexEntry& entry) {
  return canonical_id(entry.phones, entry.sememes);
}

std::pair<PhoneSeq, SememeSet> parse_canonical_id(const std::string& id) {
  auto bar = id.find('|');
  if (bar == std::string::npos) throw FormatError("canonical id missing '|': " + id);
  PhoneSeq phones = split(id.substr(0, bar), '.');
  SememeSet sememes;
  if (bar + 1 < id.size()) {
    for (auto& s : split(id.substr(bar + 1), ',')) sememes.insert(s);
  }
  try {
    validate_phones(phones);
    validate_sememes(sememes);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad canonical id '") + id + "': " + e.what());
  }
  return {std::move(phones), std::move(sememes)};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string join(const SememeSet& parts, const std::string& sep) {
  std::string out;
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += sep;
    out += p;
    first = false;
  }
  return out;
}

}  // namespace lexacq
