#include "lexacq/eval.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "lexacq/trace.hpp"

namespace lexacq {

namespace {

void check_aligned(const std::vector<SegmentedUtterance>& predicted,
                   const std::vector<SegmentedUtterance>& gold) {
  if (predicted.size() != gold.size()) {
    throw std::invalid_argument("prediction has " + std::to_string(predicted.size()) +
                                " utterances, gold has " + std::to_string(gold.size()));
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i].length != gold[i].length) {
      throw std::invalid_argument("utterance " + std::to_string(i) + ": prediction length " +
                                  std::to_string(predicted[i].length) + " != gold length " +
                                  std::to_string(gold[i].length));
    }
    for (const auto& t : predicted[i].tokens) {
      if (t.start < 0 || t.end > predicted[i].length || t.start >= t.end) {
        throw std::invalid_argument("utterance " + std::to_string(i) + ": token span " +
                                    std::to_string(t.start) + ":" + std::to_string(t.end) +
                                    " out of range");
      }
    }
  }
}

std::set<int> interior_boundaries(const SegmentedUtterance& utt) {
  std::set<int> out;
  for (const auto& t : utt.tokens) {
    if (t.start > 0 && t.start < utt.length) out.insert(t.start);
    if (t.end > 0 && t.end < utt.length) out.insert(t.end);
  }
  return out;
}

}  // namespace

BoundaryMetrics boundary_metrics(const std::vector<SegmentedUtterance>& predicted,
                                 const std::vector<SegmentedUtterance>& gold) {
  check_aligned(predicted, gold);
  std::size_t correct = 0;
  std::size_t n_predicted = 0;
  std::size_t n_gold = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    auto p = interior_boundaries(predicted[i]);
    auto g = interior_boundaries(gold[i]);
    n_predicted += p.size();
    n_gold += g.size();
    for (int b : p) {
      if (g.count(b)) ++correct;
    }
  }
  BoundaryMetrics m;
  m.degenerate_precision = n_predicted == 0;
  m.degenerate_recall = n_gold == 0;
  m.precision = n_predicted ? static_cast<double>(correct) / n_predicted : 0.0;
  m.recall = n_gold ? static_cast<double>(correct) / n_gold : 0.0;
  double pr = m.precision + m.recall;
  m.f1 = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
  return m;
}

TokenMetrics token_metrics(const std::vector<SegmentedUtterance>& predicted,
                           const std::vector<SegmentedUtterance>& gold) {
  check_aligned(predicted, gold);
  std::size_t matched = 0;
  std::size_t n_gold = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    // span + sememe set; the phones behind the id do not matter here
    std::set<std::pair<std::pair<int, int>, SememeSet>> pred;
    for (const auto& t : predicted[i].tokens) {
      pred.insert({{t.start, t.end}, parse_canonical_id(t.entry_id).second});
    }
    for (const auto& t : gold[i].tokens) {
      ++n_gold;
      if (pred.count({{t.start, t.end}, parse_canonical_id(t.entry_id).second})) ++matched;
    }
  }
  TokenMetrics m;
  m.degenerate = n_gold == 0;
  m.accuracy = n_gold ? static_cast<double>(matched) / n_gold : 0.0;
  return m;
}

LexiconMetrics lexicon_metrics(const Dictionary& learned, const std::vector<LexEntry>& gold) {
  std::set<std::string> gold_ids;
  for (const auto& entry : gold) gold_ids.insert(canonical_id(entry));
  std::size_t matched = 0;
  LexiconMetrics m;
  for (const auto& [id, entry] : learned.entries()) {
    if (gold_ids.count(id)) {
      ++matched;
    } else {
      m.error_listing.push_back(id);
    }
  }
  m.degenerate_precision = learned.size() == 0;
  m.degenerate_recall = gold_ids.empty();
  m.precision = learned.size() ? static_cast<double>(matched) / learned.size() : 0.0;
  m.recall = gold_ids.size() ? static_cast<double>(matched) / gold_ids.size() : 0.0;
  return m;
}

void write_metrics_report(std::ostream& out, const Metrics& metrics) {
  std::vector<std::string> degenerate;
  auto line = [&](const char* name, double value, bool flag) {
    out << name << '\t' << format_fixed(value) << '\n';
    if (flag) degenerate.push_back(name);
  };
  line("boundary_precision", metrics.boundary.precision, metrics.boundary.degenerate_precision);
  line("boundary_recall", metrics.boundary.recall, metrics.boundary.degenerate_recall);
  line("boundary_f1", metrics.boundary.f1, false);
  line("token_accuracy", metrics.token.accuracy, metrics.token.degenerate);
  if (metrics.has_lexicon) {
    line("lexicon_precision", metrics.lexicon.precision, metrics.lexicon.degenerate_precision);
    line("lexicon_recall", metrics.lexicon.recall, metrics.lexicon.degenerate_recall);
  }
  if (!degenerate.empty()) out << "zero_denominator\t" << join(degenerate, ",") << '\n';
  out << "# errors\n";
  for (const auto& id : metrics.lexicon.error_listing) out << id << '\n';
}

}  // namespace lexacq
