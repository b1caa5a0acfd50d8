#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lexacq/dictionary.hpp"
#include "lexacq/parse.hpp"
#include "lexacq/types.hpp"

namespace lexacq {

// Immutable parsing snapshot of a dictionary. Owns copies of the entries,
// so it stays valid while the source dictionary is being mutated and can be
// shared across threads.
class DictView {
 public:
  struct Word {
    std::string id;
    PhoneSeq phones;
    SememeSet sememes;
  };

  DictView() = default;
  explicit DictView(const Dictionary& dict);
  // Snapshot without one entry; used by the decomposability check.
  DictView(const Dictionary& dict, const std::string& excluded_id);

  const std::vector<Word>& words() const { return words_; } // ascending id
  int max_len() const { return max_len_; }
  std::uint64_t version() const { return version_; }

 private:
  std::vector<Word> words_;
  int max_len_ = 0;
  std::uint64_t version_ = 0;
};

class InstanceTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum-cost cover of the utterance's phones and sememes by word
// placements. Within the exact regime of `limits` (few enough sememes,
// short enough phone sequence) the result is globally optimal; beyond it a
// beam search over the same state space returns a feasible parse whose cost
// upper-bounds the optimum. Ties break by (fewer placements, then
// lexicographically smaller sorted placement list); results are fully
// deterministic. An empty dictionary yields the all-unparsed parse.
Parse best_parse(const DictView& dict, const Utterance& utt, const CostWeights& weights,
                 const SearchLimits& limits = {});

struct BruteForceCaps {
  // Largest placement-set size enumerated. Negative = derive the bound
  // n_phones + n_sememes that no optimal parse can exceed while w_word > 0.
  int max_placements = -1;
  // Hard guard on enumerated sets; InstanceTooLargeError beyond it.
  std::int64_t max_nodes = 10'000'000;
};

// Exhaustive-enumeration oracle: every placement set up to the cap, same
// cost model and tie-breaking as best_parse. Independent of the DP/beam
// implementation; meant for tests and small instances only.
Parse brute_force_parse(const DictView& dict, const Utterance& utt, const CostWeights& weights,
                        const BruteForceCaps& caps = {});

// Segments a bare phone sequence into morpheme identifiers: best_parse with
// an empty sememe set and the sememe weights forced to zero. Returns
// (canonical id, offset) pairs in offset order.
std::vector<std::pair<std::string, int>> segment_phones(const DictView& dict, const PhoneSeq& phones,
                                                        const CostWeights& weights,
                                                        const SearchLimits& limits = {});

}  // namespace lexacq
