#pragma once

#include <random>
#include <string>
#include <vector>

#include "lexacq/dictionary.hpp"
#include "lexacq/parser.hpp"
#include "lexacq/types.hpp"

namespace lexacq::testing {

// Small seeded instances for the oracle-equivalence and monotonicity
// properties: phones <= 8 over {a,b,c,d}, up to 5 entries of length <= 4,
// up to 3 sememes. Half the entries are planted as (possibly corrupted)
// substrings of the utterance so that placements actually fire.
struct RandomInstance {
  Utterance utt;
  Dictionary dict;
};

inline RandomInstance make_random_instance(std::mt19937_64& rng) {
  static const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  static const std::vector<std::string> sememes = {"X", "Y", "Z"};
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };

  RandomInstance inst;
  int n = pick(0, 8);
  for (int i = 0; i < n; ++i) inst.utt.phones.push_back(alphabet[pick(0, 3)]);
  int n_sems = pick(0, 3);
  for (int i = 0; i < n_sems; ++i) inst.utt.sememes.insert(sememes[pick(0, 2)]);

  int n_entries = pick(0, 5);
  for (int i = 0; i < n_entries; ++i) {
    LexEntry entry;
    int len = pick(1, 4);
    if (n >= len && pick(0, 1) == 1) {
      int off = pick(0, n - len);
      entry.phones.assign(inst.utt.phones.begin() + off, inst.utt.phones.begin() + off + len);
      if (pick(0, 3) == 0) entry.phones[pick(0, len - 1)] = alphabet[pick(0, 3)];
    } else {
      for (int k = 0; k < len; ++k) entry.phones.push_back(alphabet[pick(0, 3)]);
    }
    int k_sems = pick(0, 2);
    for (int k = 0; k < k_sems; ++k) entry.sememes.insert(sememes[pick(0, 2)]);
    inst.dict.add(entry, /*gate_on=*/false);
  }
  return inst;
}

}  // namespace lexacq::testing
