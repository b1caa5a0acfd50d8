#include <doctest.h>

#include <random>
#include <set>

#include "lexacq/types.hpp"

using namespace lexacq;

TEST_CASE("canonical id format") {
  CHECK(canonical_id({"n", "i", "n", "a"}, {"NINA"}) == "n.i.n.a|NINA");
  CHECK(canonical_id({"a"}, {}) == "a|");
  CHECK(canonical_id({"s", "A", "k"}, {"SOCK"}) == "s.A.k|SOCK");
  CHECK(canonical_id({"k", "I", "k", "t", "O", "f"}, {"OFF", "KICK"}) == "k.I.k.t.O.f|KICK,OFF");
}

TEST_CASE("canonical id round trip") {
  auto [phones, sememes] = parse_canonical_id("k.I.k.t.O.f|KICK,OFF");
  CHECK(phones == PhoneSeq{"k", "I", "k", "t", "O", "f"});
  CHECK(sememes == SememeSet{"KICK", "OFF"});

  auto [p2, s2] = parse_canonical_id("a|");
  CHECK(p2 == PhoneSeq{"a"});
  CHECK(s2.empty());

  CHECK_THROWS_AS(parse_canonical_id("no-bar"), FormatError);
  CHECK_THROWS_AS(parse_canonical_id("|X"), FormatError);
  CHECK_THROWS_AS(parse_canonical_id("a|lower"), FormatError);
}

TEST_CASE("canonical id is injective over random distinct pairs") {
  std::mt19937_64 rng(7);
  std::set<std::pair<PhoneSeq, SememeSet>> pairs;
  std::set<std::string> ids;
  static const std::vector<std::string> alphabet = {"a", "b", "dh", "@"};
  static const std::vector<std::string> sems = {"X", "Y", "ZOO", "A1"};
  while (pairs.size() < 1000) {
    PhoneSeq phones;
    int len = 1 + rng() % 5;
    for (int i = 0; i < len; ++i) phones.push_back(alphabet[rng() % alphabet.size()]);
    SememeSet sememes;
    int k = rng() % 4;
    for (int i = 0; i < k; ++i) sememes.insert(sems[rng() % sems.size()]);
    if (!pairs.insert({phones, sememes}).second) continue;
    ids.insert(canonical_id(phones, sememes));
  }
  CHECK(ids.size() == 1000);
}

TEST_CASE("phone and sememe validation") {
  CHECK(is_valid_phone("dh"));
  CHECK(is_valid_phone("@"));
  CHECK_FALSE(is_valid_phone(""));
  CHECK_FALSE(is_valid_phone("a b"));
  CHECK_FALSE(is_valid_phone("a\tb"));
  CHECK_FALSE(is_valid_phone("a.b")); // would break canonical ids
  CHECK_FALSE(is_valid_phone("a|b"));

  CHECK(is_valid_sememe("KICK"));
  CHECK(is_valid_sememe("A1_B"));
  CHECK_FALSE(is_valid_sememe(""));
  CHECK_FALSE(is_valid_sememe("kick"));
  CHECK_FALSE(is_valid_sememe("K K"));
}
