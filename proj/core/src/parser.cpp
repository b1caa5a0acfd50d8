#include "lexacq/parser.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <functional>
#include <map>

namespace lexacq {

DictView::DictView(const Dictionary& dict) : DictView(dict, std::string()) {}

DictView::DictView(const Dictionary& dict, const std::string& excluded_id) {
  words_.reserve(dict.size());
  for (const auto& [id, entry] : dict.entries()) {
    if (id == excluded_id) continue;
    words_.push_back(Word{id, entry.phones, entry.sememes});
    max_len_ = std::max(max_len_, static_cast<int>(entry.phones.size()));
  }
  version_ = dict.version();
}

namespace {

// DP/beam values are (scaled cost, placement count) packed into one int64 so
// that integer comparison is the (cost, fewer-words) tie-break.
constexpr int kWordBits = 12;
constexpr std::int64_t kWordCountMask = (std::int64_t{1} << kWordBits) - 1;

std::int64_t pack_value(std::int64_t cost, std::int64_t words) {
  return (cost << kWordBits) | words;
}
std::int64_t packed_cost(std::int64_t v) { return v >> kWordBits; }
int packed_words(std::int64_t v) { return static_cast<int>(v & kWordCountMask); }

struct WordStats {
  std::uint64_t mask = 0; // utterance sememes this word covers (tracked bits)
  int gain = 0;           // |entry.sememes ∩ utt.sememes|
  int extra = 0;          // |entry.sememes \ utt.sememes|
};

struct Instance {
  const DictView* dict = nullptr;
  const PhoneSeq* phones = nullptr;
  const SememeSet* sememes = nullptr;
  ScaledWeights sw;
  int n = 0;
  std::vector<Sememe> sem_list; // sorted utterance sememes
  int tracked = 0;              // sememes representable in a 64-bit mask
  std::vector<WordStats> word_stats;
};

Instance make_instance(const DictView& dict, const Utterance& utt, const ScaledWeights& sw) {
  Instance inst;
  inst.dict = &dict;
  inst.phones = &utt.phones;
  inst.sememes = &utt.sememes;
  inst.sw = sw;
  inst.n = static_cast<int>(utt.phones.size());
  inst.sem_list.assign(utt.sememes.begin(), utt.sememes.end());
  inst.tracked = std::min<int>(static_cast<int>(inst.sem_list.size()), 64);
  std::map<Sememe, int> index;
  for (int i = 0; i < static_cast<int>(inst.sem_list.size()); ++i) index[inst.sem_list[i]] = i;
  inst.word_stats.reserve(dict.words().size());
  for (const auto& w : dict.words()) {
    WordStats st;
    for (const auto& s : w.sememes) {
      auto it = index.find(s);
      if (it == index.end()) {
        ++st.extra;
      } else {
        ++st.gain;
        if (it->second < inst.tracked) st.mask |= std::uint64_t{1} << it->second;
      }
    }
    inst.word_stats.push_back(st);
  }
  return inst;
}

int mismatch_count(const PhoneSeq& utt, const PhoneSeq& entry, int offset) {
  int mm = 0;
  for (int i = 0; i < static_cast<int>(entry.size()); ++i) {
    if (entry[i] != utt[offset + i]) ++mm;
  }
  return mm;
}

struct Candidate {
  int word = 0; // index into dict words, ascending id order
  int len = 0;
  std::int64_t own_cost = 0; // word + mismatch*mm + extra_sememe*extra
  std::uint64_t mask = 0;
};

// Placements grouped by offset, id-ascending within an offset.
std::vector<std::vector<Candidate>> build_candidates(const Instance& inst, bool prune_useless) {
  std::vector<std::vector<Candidate>> by_offset(inst.n);
  const auto& words = inst.dict->words();
  for (int p = 0; p < inst.n; ++p) {
    for (int w = 0; w < static_cast<int>(words.size()); ++w) {
      int len = static_cast<int>(words[w].phones.size());
      if (p + len > inst.n) continue;
      int mm = mismatch_count(*inst.phones, words[w].phones, p);
      const WordStats& st = inst.word_stats[w];
      std::int64_t own = inst.sw.word + inst.sw.mismatch * mm + inst.sw.extra_sememe * st.extra;
      if (prune_useless) {
        // A placement costing more than everything it could possibly save
        // (its whole span unparsed plus its utterance sememes missing)
        // appears in no optimal parse.
        std::int64_t best_gain = inst.sw.unparsed * len + inst.sw.missing_sememe * st.gain;
        if (own > best_gain) continue;
      }
      by_offset[p].push_back(Candidate{w, len, own, st.mask});
    }
  }
  return by_offset;
}

Parse assemble(const Instance& inst, std::vector<std::pair<int, int>> chosen /* (offset, word) */) {
  std::sort(chosen.begin(), chosen.end()); // (offset, word index) == (offset, id)
  Parse parse;
  const auto& words = inst.dict->words();
  std::vector<char> covered(inst.n, 0);
  for (auto [off, w] : chosen) {
    Placement pl;
    pl.entry_id = words[w].id;
    pl.offset = off;
    const PhoneSeq& ph = words[w].phones;
    for (int i = 0; i < static_cast<int>(ph.size()); ++i) {
      covered[off + i] = 1;
      if (ph[i] != (*inst.phones)[off + i]) pl.mismatch_positions.push_back(off + i);
    }
    parse.mismatched_count += static_cast<int>(pl.mismatch_positions.size());
    for (const auto& s : words[w].sememes) {
      parse.covered_sememes.insert(s);
      if (!inst.sememes->count(s)) ++parse.extra_sememe_count;
    }
    parse.placements.push_back(std::move(pl));
  }
  for (int p = 0; p < inst.n; ++p) {
    if (!covered[p]) parse.unparsed_positions.push_back(p);
  }
  for (const auto& s : *inst.sememes) {
    if (!parse.covered_sememes.count(s)) parse.missing_sememes.insert(s);
  }
  parse.cost = inst.sw.to_double(inst.sw.cost(parse.counts()));
  return parse;
}

// Exact search: dynamic programming over (position, coverage overhang,
// covered-sememe subset). The overhang h is how far chosen placements
// extend beyond the current position, capped by the longest entry; a
// position is unparsed exactly when h == 0 as it is passed. Placements are
// started at their offset, so any overlapping placement set maps to one DP
// path and vice versa. Values are computed backward (cost-to-go); the
// forward reconstruction then realizes the lexicographic tie-break by
// preferring the smallest-id placement at the earliest offset among the
// optimal transitions.
Parse exact_parse(const Instance& inst, const std::vector<std::vector<Candidate>>& cands) {
  const int n = inst.n;
  const int s = static_cast<int>(inst.sem_list.size());
  const std::size_t n_masks = std::size_t{1} << s;

  std::vector<int> hmax(n + 1);
  for (int p = 0; p <= n; ++p) hmax[p] = std::min(inst.dict->max_len(), n - p);

  std::vector<std::vector<std::int64_t>> value(n + 1);
  value[n].resize(n_masks);
  for (std::size_t m = 0; m < n_masks; ++m) {
    int missing = s - std::popcount(m);
    value[n][m] = pack_value(inst.sw.missing_sememe * missing, 0);
  }

  // Word starts stay at the same position and can only grow (popcount(mask),
  // h); processing masks by descending popcount and h downward makes every
  // same-position dependency already final.
  std::vector<std::uint32_t> order(n_masks);
  for (std::size_t m = 0; m < n_masks; ++m) order[m] = static_cast<std::uint32_t>(m);
  std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) > std::popcount(b);
  });

  for (int p = n - 1; p >= 0; --p) {
    std::vector<std::int64_t> row((static_cast<std::size_t>(hmax[p]) + 1) * n_masks);
    const auto& next = value[p + 1];
    for (std::uint32_t mask : order) {
      for (int h = hmax[p]; h >= 0; --h) {
        int h2 = h > 0 ? h - 1 : 0;
        std::int64_t adv = next[static_cast<std::size_t>(h2) * n_masks + mask];
        std::int64_t best =
            pack_value(packed_cost(adv) + (h == 0 ? inst.sw.unparsed : 0), packed_words(adv));
        for (const Candidate& c : cands[p]) {
          int ch = c.len > h ? c.len : h;
          std::uint64_t cm = mask | c.mask;
          if (ch == h && cm == mask) continue;
          std::int64_t tv = row[static_cast<std::size_t>(ch) * n_masks + cm];
          std::int64_t cv = pack_value(packed_cost(tv) + c.own_cost, packed_words(tv) + 1);
          if (cv < best) best = cv;
        }
        row[static_cast<std::size_t>(h) * n_masks + mask] = best;
      }
    }
    value[p] = std::move(row);
  }

  std::vector<std::pair<int, int>> chosen;
  int p = 0;
  int h = 0;
  std::uint64_t mask = 0;
  while (p < n) {
    std::int64_t target = value[p][static_cast<std::size_t>(h) * n_masks + mask];
    bool placed = false;
    for (const Candidate& c : cands[p]) {
      int ch = c.len > h ? c.len : h;
      std::uint64_t cm = mask | c.mask;
      if (ch == h && cm == mask) continue;
      std::int64_t tv = value[p][static_cast<std::size_t>(ch) * n_masks + cm];
      if (pack_value(packed_cost(tv) + c.own_cost, packed_words(tv) + 1) == target) {
        chosen.emplace_back(p, c.word);
        h = ch;
        mask = cm;
        placed = true;
        break;
      }
    }
    if (placed) continue;
    ++p;
    h = h > 0 ? h - 1 : 0;
  }
  return assemble(inst, chosen);
}

// Beam search over the same state space for utterances beyond the exact
// regime. Returns a feasible parse; its cost upper-bounds the optimum.
Parse beam_parse(const Instance& inst, const std::vector<std::vector<Candidate>>& cands,
                 int beam_width) {
  struct Node {
    int parent;
    int offset;
    int word;
  };
  struct State {
    int h = 0;
    std::uint64_t mask = 0;
    std::int64_t cost = 0;
    int words = 0;
    int node = 0;
  };
  auto state_less = [](const State& a, const State& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.words != b.words) return a.words < b.words;
    if (a.h != b.h) return a.h < b.h;
    return a.mask < b.mask;
  };

  std::vector<Node> arena{{-1, -1, -1}};
  std::vector<State> layer{State{}};

  for (int p = 0; p < inst.n; ++p) {
    // Let several words start at the same offset: each closure round chains
    // one more placement onto the states found so far.
    for (int round = 0; round < 8; ++round) {
      std::sort(layer.begin(), layer.end(), state_less);
      if (static_cast<int>(layer.size()) > beam_width) layer.resize(beam_width);
      std::map<std::pair<int, std::uint64_t>, int> index;
      for (int i = 0; i < static_cast<int>(layer.size()); ++i) {
        index[{layer[i].h, layer[i].mask}] = i;
      }
      bool improved = false;
      int base = static_cast<int>(layer.size());
      for (int i = 0; i < base; ++i) {
        State st = layer[i];
        for (const Candidate& c : cands[p]) {
          int ch = std::max(st.h, c.len);
          std::uint64_t cm = st.mask | c.mask;
          if (ch == st.h && cm == st.mask) continue;
          std::int64_t cost = st.cost + c.own_cost;
          int words = st.words + 1;
          auto it = index.find({ch, cm});
          if (it != index.end()) {
            State& cur = layer[it->second];
            if (cost < cur.cost || (cost == cur.cost && words < cur.words)) {
              arena.push_back({st.node, p, c.word});
              cur = State{ch, cm, cost, words, static_cast<int>(arena.size()) - 1};
              improved = true;
            }
          } else {
            arena.push_back({st.node, p, c.word});
            index[{ch, cm}] = static_cast<int>(layer.size());
            layer.push_back(State{ch, cm, cost, words, static_cast<int>(arena.size()) - 1});
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    std::sort(layer.begin(), layer.end(), state_less);
    if (static_cast<int>(layer.size()) > beam_width) layer.resize(beam_width);

    std::map<std::pair<int, std::uint64_t>, State> next;
    for (const State& st : layer) {
      State ns = st;
      ns.cost += st.h == 0 ? inst.sw.unparsed : 0;
      ns.h = st.h > 0 ? st.h - 1 : 0;
      auto key = std::make_pair(ns.h, ns.mask);
      auto it = next.find(key);
      if (it == next.end()) {
        next.emplace(key, ns);
      } else if (ns.cost < it->second.cost ||
                 (ns.cost == it->second.cost && ns.words < it->second.words)) {
        it->second = ns;
      }
    }
    layer.clear();
    for (auto& [key, st] : next) layer.push_back(st);
  }

  auto materialize = [&](int node) {
    std::vector<std::pair<int, int>> chosen;
    for (int cur = node; cur > 0; cur = arena[cur].parent) {
      chosen.emplace_back(arena[cur].offset, arena[cur].word);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  };

  // Untracked sememes (only possible past 64) cost every state the same, so
  // they do not influence the choice; assemble() recounts them exactly.
  bool have_best = false;
  std::int64_t best_total = 0;
  int best_words = 0;
  std::vector<std::pair<int, int>> best_chosen;
  for (const State& st : layer) {
    std::int64_t total =
        st.cost + inst.sw.missing_sememe * (inst.tracked - std::popcount(st.mask));
    if (have_best && (total > best_total || (total == best_total && st.words > best_words))) {
      continue;
    }
    auto chosen = materialize(st.node);
    if (!have_best || total < best_total ||
        (total == best_total && (st.words < best_words || chosen < best_chosen))) {
      have_best = true;
      best_total = total;
      best_words = st.words;
      best_chosen = std::move(chosen);
    }
  }
  return assemble(inst, best_chosen);
}

void validate_limits(const SearchLimits& limits) {
  if (limits.exact_sememe_max < 1 || limits.exact_length_max < 1 || limits.beam_width < 1) {
    throw std::invalid_argument("search limits must all be >= 1");
  }
}

}  // namespace

Parse best_parse(const DictView& dict, const Utterance& utt, const CostWeights& weights,
                 const SearchLimits& limits) {
  validate_limits(limits);
  ScaledWeights sw = ScaledWeights::from(weights);
  Instance inst = make_instance(dict, utt, sw);
  auto cands = build_candidates(inst, /*prune_useless=*/true);

  int s = static_cast<int>(inst.sem_list.size());
  if (s <= limits.exact_sememe_max && inst.n <= limits.exact_length_max && s <= 20) {
    // memory guard for user-enlarged limits; the default regime (64 phones,
    // 12 sememes) stays well inside it
    std::size_t cells = 0;
    for (int p = 0; p <= inst.n; ++p) {
      cells += static_cast<std::size_t>(std::min(dict.max_len(), inst.n - p)) + 1;
    }
    cells *= std::size_t{1} << s;
    if (cells <= (std::size_t{32} << 20)) return exact_parse(inst, cands);
  }
  return beam_parse(inst, cands, limits.beam_width);
}

Parse brute_force_parse(const DictView& dict, const Utterance& utt, const CostWeights& weights,
                        const BruteForceCaps& caps) {
  ScaledWeights sw = ScaledWeights::from(weights);
  Instance inst = make_instance(dict, utt, sw);
  const int n = inst.n;
  const int s = static_cast<int>(inst.sem_list.size());
  if (s > 64) throw InstanceTooLargeError("brute_force_parse: more than 64 utterance sememes");

  struct BCand {
    int offset;
    int word;
    int len;
    std::int64_t own;
    std::uint64_t mask;
    int mm;
    int extra;
  };
  std::vector<BCand> cands;
  const auto& words = dict.words();
  for (int p = 0; p < n; ++p) {
    for (int w = 0; w < static_cast<int>(words.size()); ++w) {
      int len = static_cast<int>(words[w].phones.size());
      if (p + len > n) continue;
      int mm = mismatch_count(*inst.phones, words[w].phones, p);
      const WordStats& st = inst.word_stats[w];
      std::int64_t own = sw.word + sw.mismatch * mm + sw.extra_sememe * st.extra;
      cands.push_back(BCand{p, w, len, own, st.mask, mm, st.extra});
    }
  }

  int max_placements = caps.max_placements;
  if (max_placements < 0) {
    if (sw.word <= 0) {
      throw std::invalid_argument("brute_force_parse needs an explicit max_placements when w_word is 0");
    }
    // No optimal parse can hold more placements: each one must uniquely
    // cover a position or uniquely provide a sememe, or dropping it would
    // win the (cost, fewer-placements) tie-break.
    max_placements = (sw.unparsed > 0 ? n : 0) + (sw.missing_sememe > 0 ? s : 0);
  }

  std::vector<int> coverage(n, 0);
  std::vector<int> chosen;
  std::vector<int> best_chosen;
  std::int64_t best_cost = 0;
  int best_words = 0;
  bool have_best = false;
  std::int64_t own_sum = 0;
  int mm_sum = 0;
  int extra_sum = 0;
  std::uint64_t mask = 0;
  std::vector<std::uint64_t> mask_stack;
  std::int64_t nodes = 0;

  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (++nodes > caps.max_nodes) {
      throw InstanceTooLargeError("brute_force_parse: enumeration guard of " +
                                  std::to_string(caps.max_nodes) + " sets exceeded");
    }
    int unparsed = 0;
    for (int p = 0; p < n; ++p) {
      if (coverage[p] == 0) ++unparsed;
    }
    ParseCounts counts{unparsed, mm_sum, s - std::popcount(mask), extra_sum,
                       static_cast<int>(chosen.size())};
    std::int64_t cost = sw.cost(counts);
    if (!have_best || cost < best_cost ||
        (cost == best_cost && (counts.words < best_words ||
                               (counts.words == best_words && chosen < best_chosen)))) {
      have_best = true;
      best_cost = cost;
      best_words = counts.words;
      best_chosen = chosen;
    }
    if (static_cast<int>(chosen.size()) >= max_placements) return;
    for (std::size_t j = start; j < cands.size(); ++j) {
      const BCand& c = cands[j];
      if (own_sum + c.own > best_cost) continue; // supersets cost at least this much
      chosen.push_back(static_cast<int>(j));
      own_sum += c.own;
      mm_sum += c.mm;
      extra_sum += c.extra;
      mask_stack.push_back(mask);
      mask |= c.mask;
      for (int i = 0; i < c.len; ++i) ++coverage[c.offset + i];
      dfs(j + 1);
      for (int i = 0; i < c.len; ++i) --coverage[c.offset + i];
      mask = mask_stack.back();
      mask_stack.pop_back();
      extra_sum -= c.extra;
      mm_sum -= c.mm;
      own_sum -= c.own;
      chosen.pop_back();
    }
  };
  dfs(0);

  std::vector<std::pair<int, int>> placements;
  placements.reserve(best_chosen.size());
  for (int idx : best_chosen) placements.emplace_back(cands[idx].offset, cands[idx].word);
  return assemble(inst, placements);
}

std::vector<std::pair<std::string, int>> segment_phones(const DictView& dict, const PhoneSeq& phones,
                                                        const CostWeights& weights,
                                                        const SearchLimits& limits) {
  CostWeights phonetic = weights;
  phonetic.missing_sememe = 0;
  phonetic.extra_sememe = 0;
  Parse parse = best_parse(dict, Utterance{phones, {}}, phonetic, limits);
  std::vector<std::pair<std::string, int>> out;
  out.reserve(parse.placements.size());
  for (const auto& pl : parse.placements) out.emplace_back(pl.entry_id, pl.offset);
  return out;
}

}  // namespace lexacq
