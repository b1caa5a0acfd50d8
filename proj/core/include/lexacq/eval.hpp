#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lexacq/dictionary.hpp"
#include "lexacq/types.hpp"

namespace lexacq {

struct Token {
  int start = 0;
  int end = 0; // exclusive
  std::string entry_id;
};

struct SegmentedUtterance {
  int length = 0; // phones in the utterance
  std::vector<Token> tokens;
};

struct BoundaryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate_precision = false; // no predicted interior boundaries
  bool degenerate_recall = false;    // no gold interior boundaries
};

// Interior word-boundary positions only (utterance edges score nothing).
// Utterances aggregate by summing counts (micro-average); zero denominators
// score 0 and set the degenerate flag. Throws std::invalid_argument on a
// length mismatch between prediction and gold.
BoundaryMetrics boundary_metrics(const std::vector<SegmentedUtterance>& predicted,
                                 const std::vector<SegmentedUtterance>& gold);

struct TokenMetrics {
  double accuracy = 0.0;
  bool degenerate = false; // no gold tokens
};

// A predicted token is correct when its span and its id's sememe set match
// a gold token exactly; accuracy = matched gold tokens / gold tokens.
TokenMetrics token_metrics(const std::vector<SegmentedUtterance>& predicted,
                           const std::vector<SegmentedUtterance>& gold);

struct LexiconMetrics {
  double precision = 0.0;
  double recall = 0.0;
  std::vector<std::string> error_listing; // learned ids with no gold match
  bool degenerate_precision = false;
  bool degenerate_recall = false;
};

// Exact (phones, sememes) matching between learned entries and the gold
// lexicon.
LexiconMetrics lexicon_metrics(const Dictionary& learned, const std::vector<LexEntry>& gold);

struct Metrics {
  BoundaryMetrics boundary;
  TokenMetrics token;
  LexiconMetrics lexicon;
  bool has_lexicon = false;
};

// Report file: `metric \t value` lines, then a `# errors` marker and one
// unmatched learned id per line.
void write_metrics_report(std::ostream& out, const Metrics& metrics);

}  // namespace lexacq
