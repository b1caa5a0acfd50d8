#include "lexacq/parse.hpp"

#include <algorithm>
#include <cmath>

namespace lexacq {

namespace {

std::int64_t scale_weight(double w, const char* name) {
  if (!(w >= 0.0)) throw std::invalid_argument(std::string(name) + " must be >= 0");
  double scaled = w * static_cast<double>(ScaledWeights::kScale);
  std::int64_t rounded = std::llround(scaled);
  if (std::abs(scaled - static_cast<double>(rounded)) > 1e-3) {
    throw std::invalid_argument(std::string(name) + " must be a multiple of 1e-6, got " + std::to_string(w));
  }
  return rounded;
}

}  // namespace

ScaledWeights ScaledWeights::from(const CostWeights& weights) {
  ScaledWeights sw;
  sw.unparsed = scale_weight(weights.unparsed, "w_unparsed");
  sw.mismatch = scale_weight(weights.mismatch, "w_mismatch");
  sw.missing_sememe = scale_weight(weights.missing_sememe, "w_missing_sem");
  sw.extra_sememe = scale_weight(weights.extra_sememe, "w_extra_sem");
  sw.word = scale_weight(weights.word, "w_word");
  if (sw.word >= std::min(sw.unparsed, sw.mismatch)) {
    throw std::invalid_argument("w_word must be smaller than both w_unparsed and w_mismatch");
  }
  return sw;
}

std::int64_t ScaledWeights::cost(const ParseCounts& counts) const {
  return unparsed * counts.unparsed + mismatch * counts.mismatched +
         missing_sememe * counts.missing + extra_sememe * counts.extra + word * counts.words;
}

double parse_cost(const ParseCounts& counts, const CostWeights& weights) {
  ScaledWeights sw = ScaledWeights::from(weights);
  return sw.to_double(sw.cost(counts));
}

}  // namespace lexacq
