#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexacq/types.hpp"

namespace lexacq {

// Scalar weights of the parse objective. The per-placement weight must stay
// below both per-phone weights so that covering a matchable span is never
// worse than leaving it unparsed.
struct CostWeights {
  double unparsed = 1.0;       // per phone covered by no placement
  double mismatch = 1.0;       // per mismatched aligned phone, per placement
  double missing_sememe = 1.0; // per utterance sememe covered by no placement
  double extra_sememe = 1.0;   // per placement sememe outside the utterance set
  double word = 0.01;          // per placement
};

struct SearchLimits {
  int exact_sememe_max = 12; // exact DP up to this many utterance sememes
  int exact_length_max = 64; // ... and this many utterance phones
  int beam_width = 64;       // beam search width beyond the exact regime
};

// One dictionary word laid over the utterance. mismatch_positions are the
// utterance positions where the aligned entry phone differs.
struct Placement {
  std::string entry_id;
  int offset = 0;
  std::vector<int> mismatch_positions; // ascending

  bool operator==(const Placement& other) const = default;
};

// The additive components the cost formula runs on.
struct ParseCounts {
  int unparsed = 0;
  int mismatched = 0;
  int missing = 0;
  int extra = 0;
  int words = 0;
};

// A set of word placements over one utterance, with its bookkeeping.
// Placements may overlap; a position covered by any placement is covered.
struct Parse {
  std::vector<Placement> placements;   // sorted by (offset, entry_id)
  std::vector<int> unparsed_positions; // ascending, covered by no placement
  int mismatched_count = 0;            // summed over placements
  SememeSet covered_sememes;           // union over placed entries
  SememeSet missing_sememes;           // utterance sememes minus covered
  int extra_sememe_count = 0;          // sum of |entry.sememes - utt.sememes|
  double cost = 0.0;

  ParseCounts counts() const {
    return ParseCounts{static_cast<int>(unparsed_positions.size()), mismatched_count,
                       static_cast<int>(missing_sememes.size()), extra_sememe_count,
                       static_cast<int>(placements.size())};
  }

  bool operator==(const Parse& other) const = default;
};

// cost = w_unparsed*unparsed + w_mismatch*mismatched + w_missing*missing
//      + w_extra*extra + w_word*words
double parse_cost(const ParseCounts& counts, const CostWeights& weights);

// Weights as exact micro-unit integers (1e-6 resolution). Every cost
// comparison inside the search engines runs on these, so equal decimal
// costs compare equal no matter how they were accumulated.
struct ScaledWeights {
  std::int64_t unparsed = 0;
  std::int64_t mismatch = 0;
  std::int64_t missing_sememe = 0;
  std::int64_t extra_sememe = 0;
  std::int64_t word = 0;

  static constexpr std::int64_t kScale = 1'000'000;

  // Validates the CostWeights invariants; throws std::invalid_argument.
  static ScaledWeights from(const CostWeights& weights);

  std::int64_t cost(const ParseCounts& counts) const;
  double to_double(std::int64_t scaled) const { return static_cast<double>(scaled) / kScale; }
};

}  // namespace lexacq
