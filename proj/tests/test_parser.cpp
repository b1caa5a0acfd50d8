#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lexacq/parser.hpp"

using namespace lexacq;

namespace {

Dictionary sock_dictionary() {
  Dictionary dict;
  dict.add(LexEntry{{"y", "u"}, {"YOU"}}, true);
  dict.add(LexEntry{{"D", "@"}, {"THE"}}, true);
  dict.add(LexEntry{{"r", "s", "A", "k"}, {"SOCK"}}, true);
  return dict;
}

const Utterance kSockUtterance{
    {"y", "u", "k", "I", "k", "t", "O", "f", "D", "@", "s", "A", "k"},
    {"KICK", "YOU", "OFF", "SOCK", "THE"}};

}  // namespace

TEST_CASE("parse_cost formula") {
  CostWeights w;
  // empty parse of "n i n a" / {NINA}: 4 unparsed + 1 missing sememe
  CHECK(parse_cost(ParseCounts{4, 0, 1, 0, 0}, w) == 5.0);
  // one exact full-cover placement, all sememes covered
  CHECK(parse_cost(ParseCounts{0, 0, 0, 0, 1}, w) == 0.01);
  // partial sock parse: 6 unparsed, 1 mismatch, 2 missing, 3 placements
  CHECK(parse_cost(ParseCounts{6, 1, 2, 0, 3}, w) == 9.03);
}

TEST_CASE("parse_cost rejects bad weights") {
  ParseCounts counts{1, 0, 0, 0, 0};
  CostWeights negative;
  negative.mismatch = -1.0;
  CHECK_THROWS_AS(parse_cost(counts, negative), std::invalid_argument);
  CostWeights heavy_word;
  heavy_word.word = 1.0; // not below min(w_unparsed, w_mismatch)
  CHECK_THROWS_AS(parse_cost(counts, heavy_word), std::invalid_argument);
}

TEST_CASE("best_parse with an empty dictionary leaves everything unparsed") {
  Utterance utt{{"n", "i", "n", "a"}, {"NINA"}};
  Parse parse = best_parse(DictView(Dictionary{}), utt, CostWeights{});
  CHECK(parse.placements.empty());
  CHECK(parse.unparsed_positions == std::vector<int>{0, 1, 2, 3});
  CHECK(parse.missing_sememes == SememeSet{"NINA"});
  CHECK(parse.cost == 5.0);
}

TEST_CASE("best_parse covers an exact match with one placement") {
  Dictionary dict;
  dict.add(LexEntry{{"n", "i", "n", "a"}, {"NINA"}}, true);
  Utterance utt{{"n", "i", "n", "a"}, {"NINA"}};
  Parse parse = best_parse(DictView(dict), utt, CostWeights{});
  REQUIRE(parse.placements.size() == 1);
  CHECK(parse.placements[0].entry_id == "n.i.n.a|NINA");
  CHECK(parse.placements[0].offset == 0);
  CHECK(parse.placements[0].mismatch_positions.empty());
  CHECK(parse.unparsed_positions.empty());
  CHECK(parse.missing_sememes.empty());
  CHECK(parse.cost == 0.01);
}

TEST_CASE("best_parse reproduces the sock-utterance analysis") {
  Parse parse = best_parse(DictView(sock_dictionary()), kSockUtterance, CostWeights{});
  REQUIRE(parse.placements.size() == 3);
  CHECK(parse.placements[0].entry_id == "y.u|YOU");
  CHECK(parse.placements[0].offset == 0);
  CHECK(parse.placements[1].entry_id == "D.@|THE");
  CHECK(parse.placements[1].offset == 8);
  CHECK(parse.placements[2].entry_id == "r.s.A.k|SOCK");
  CHECK(parse.placements[2].offset == 9);
  CHECK(parse.placements[2].mismatch_positions == std::vector<int>{9});
  CHECK(parse.unparsed_positions == std::vector<int>{2, 3, 4, 5, 6, 7});
  CHECK(parse.mismatched_count == 1);
  CHECK(parse.missing_sememes == SememeSet{"KICK", "OFF"});
  CHECK(parse.extra_sememe_count == 0);
  CHECK(parse.cost == 9.03);
}

TEST_CASE("brute force agrees on the golden instances") {
  {
    Utterance utt{{"n", "i", "n", "a"}, {"NINA"}};
    CHECK(brute_force_parse(DictView(Dictionary{}), utt, CostWeights{}) ==
          best_parse(DictView(Dictionary{}), utt, CostWeights{}));
    Dictionary dict;
    dict.add(LexEntry{{"n", "i", "n", "a"}, {"NINA"}}, true);
    CHECK(brute_force_parse(DictView(dict), utt, CostWeights{}) ==
          best_parse(DictView(dict), utt, CostWeights{}));
  }
  {
    DictView view(sock_dictionary());
    CHECK(brute_force_parse(view, kSockUtterance, CostWeights{}) ==
          best_parse(view, kSockUtterance, CostWeights{}));
  }
}

TEST_CASE("oracle equivalence on random instances") {
  std::mt19937_64 rng(20240901);
  for (int i = 0; i < 60; ++i) {
    auto inst = lexacq::testing::make_random_instance(rng);
    DictView view(inst.dict);
    Parse fast = best_parse(view, inst.utt, CostWeights{});
    Parse slow = brute_force_parse(view, inst.utt, CostWeights{});
    CAPTURE(i);
    CHECK(fast.cost == slow.cost);
    CHECK(fast == slow); // same tie-breaking, so structurally identical
  }
}

TEST_CASE("tie-breaking picks the lexicographically smaller placement list") {
  Dictionary dict;
  dict.add(LexEntry{{"a"}, {"X"}}, true);
  dict.add(LexEntry{{"a"}, {"Y"}}, true);
  Utterance utt{{"a", "a"}, {"X", "Y"}};
  // a|X@0 + a|Y@1 and a|Y@0 + a|X@1 tie on cost and count
  Parse parse = best_parse(DictView(dict), utt, CostWeights{});
  REQUIRE(parse.placements.size() == 2);
  CHECK(parse.placements[0].entry_id == "a|X");
  CHECK(parse.placements[0].offset == 0);
  CHECK(parse.placements[1].entry_id == "a|Y");
  CHECK(parse.placements[1].offset == 1);
  CHECK(parse == brute_force_parse(DictView(dict), utt, CostWeights{}));
}

TEST_CASE("two placements can share an offset to cover sememes") {
  Dictionary dict;
  dict.add(LexEntry{{"a"}, {"X"}}, true);
  dict.add(LexEntry{{"a"}, {"Y"}}, true);
  Utterance utt{{"a"}, {"X", "Y"}};
  Parse parse = best_parse(DictView(dict), utt, CostWeights{});
  REQUIRE(parse.placements.size() == 2);
  CHECK(parse.placements[0].offset == 0);
  CHECK(parse.placements[1].offset == 0);
  CHECK(parse.missing_sememes.empty());
  CHECK(parse == brute_force_parse(DictView(dict), utt, CostWeights{}));
}

TEST_CASE("dictionary monotonicity: a superset never parses worse") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 40; ++i) {
    auto inst = lexacq::testing::make_random_instance(rng);
    auto extra = lexacq::testing::make_random_instance(rng);
    Dictionary superset = inst.dict;
    for (const auto& [id, entry] : extra.dict.entries()) superset.add(entry, false);
    Parse small = best_parse(DictView(inst.dict), inst.utt, CostWeights{});
    Parse big = best_parse(DictView(superset), inst.utt, CostWeights{});
    CAPTURE(i);
    CHECK(big.cost <= small.cost);
  }
}

TEST_CASE("parse bookkeeping invariants on random instances") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    auto inst = lexacq::testing::make_random_instance(rng);
    Parse parse = best_parse(DictView(inst.dict), inst.utt, CostWeights{});
    CAPTURE(i);

    // additivity: stored cost == recomputed cost
    CHECK(parse.cost == parse_cost(parse.counts(), CostWeights{}));

    // mismatch bookkeeping and coverage partition
    std::vector<bool> covered(inst.utt.phones.size(), false);
    int mismatches = 0;
    for (const auto& pl : parse.placements) {
      auto [phones, sememes] = parse_canonical_id(pl.entry_id);
      std::vector<int> expect;
      for (int k = 0; k < static_cast<int>(phones.size()); ++k) {
        covered[pl.offset + k] = true;
        if (phones[k] != inst.utt.phones[pl.offset + k]) expect.push_back(pl.offset + k);
      }
      CHECK(pl.mismatch_positions == expect);
      mismatches += static_cast<int>(expect.size());
    }
    CHECK(parse.mismatched_count == mismatches);
    std::vector<int> unparsed;
    for (int p = 0; p < static_cast<int>(covered.size()); ++p) {
      if (!covered[p]) unparsed.push_back(p);
    }
    CHECK(parse.unparsed_positions == unparsed);

    // determinism: a second call is structurally identical
    CHECK(parse == best_parse(DictView(inst.dict), inst.utt, CostWeights{}));
  }
}

TEST_CASE("beam mode stays feasible and deterministic beyond the exact regime") {
  Dictionary dict;
  dict.add(LexEntry{{"a", "b"}, {"X"}}, true);
  dict.add(LexEntry{{"b", "a"}, {"Y"}}, true);
  dict.add(LexEntry{{"a"}, {"Z"}}, true);
  Utterance utt;
  for (int i = 0; i < 10; ++i) {
    utt.phones.push_back(i % 2 ? "b" : "a");
  }
  utt.sememes = {"X", "Y", "Z"};

  SearchLimits tight;
  tight.exact_length_max = 4; // force the beam path
  Parse beam = best_parse(DictView(dict), utt, CostWeights{}, tight);
  Parse exact = best_parse(DictView(dict), utt, CostWeights{});
  CHECK(beam.cost >= exact.cost);
  CHECK(beam.cost == parse_cost(beam.counts(), CostWeights{}));
  CHECK(beam == best_parse(DictView(dict), utt, CostWeights{}, tight));
  // wide enough beam actually finds the optimum here
  CHECK(beam.cost == exact.cost);
}

TEST_CASE("brute force caps") {
  Dictionary dict;
  dict.add(LexEntry{{"a"}, {"X"}}, true);
  Utterance utt{{"a", "a", "a", "a", "a", "a"}, {"X"}};
  BruteForceCaps caps;
  caps.max_nodes = 3; // absurdly small guard
  CHECK_THROWS_AS(brute_force_parse(DictView(dict), utt, CostWeights{}, caps), InstanceTooLargeError);

  CostWeights free_words;
  free_words.word = 0.0;
  CHECK_THROWS_AS(brute_force_parse(DictView(dict), utt, free_words), std::invalid_argument);
  BruteForceCaps explicit_cap;
  explicit_cap.max_placements = 6;
  CHECK_NOTHROW(brute_force_parse(DictView(dict), utt, free_words, explicit_cap));
}

TEST_CASE("segment_phones returns morpheme identifiers in offset order") {
  Dictionary dict;
  dict.add(LexEntry{{"y", "u"}, {"YOU"}}, true);
  dict.add(LexEntry{{"n", "i", "n", "a"}, {"NINA"}}, true);

  auto segments = segment_phones(DictView(dict), {"y", "u", "n", "i", "n", "a"}, CostWeights{});
  REQUIRE(segments.size() == 2);
  CHECK(segments[0] == std::pair<std::string, int>("y.u|YOU", 0));
  CHECK(segments[1] == std::pair<std::string, int>("n.i.n.a|NINA", 2));

  CHECK(segment_phones(DictView(dict), {}, CostWeights{}).empty());
  CHECK(segment_phones(DictView(dict), {"q", "q"}, CostWeights{}).empty());
}
