#include <doctest.h>

#include <filesystem>

#include "lexacq/dictionary.hpp"

using namespace lexacq;

namespace {

LexEntry entry(PhoneSeq phones, SememeSet sememes) {
  return LexEntry{std::move(phones), std::move(sememes)};
}

}  // namespace

TEST_CASE("add with the empty-semantics gate") {
  Dictionary dict;
  CHECK(dict.add(entry({"n", "i", "n", "a"}, {"NINA"}), true) == AddOutcome::Added);
  CHECK(dict.size() == 1);

  CHECK(dict.add(entry({"I", "ng"}, {}), true) == AddOutcome::GateRejected);
  CHECK(dict.size() == 1);

  CHECK(dict.add(entry({"I", "ng"}, {}), false) == AddOutcome::Added);
  CHECK(dict.size() == 2);
}

TEST_CASE("re-adding an id keeps the stored counters") {
  Dictionary dict;
  LexEntry first = entry({"y", "u"}, {"YOU"});
  first.use_count = 5;
  first.window_use_count = 2;
  dict.add(first, true);

  LexEntry again = entry({"y", "u"}, {"YOU"});
  CHECK(dict.add(again, true) == AddOutcome::Merged);
  CHECK(dict.size() == 1);
  CHECK(dict.find("y.u|YOU")->use_count == 5);
  CHECK(dict.find("y.u|YOU")->window_use_count == 2);
}

TEST_CASE("save and load round-trips entries, counters, and utterances_seen") {
  Dictionary dict;
  dict.utterances_seen = 42;
  LexEntry a = entry({"y", "u"}, {"YOU"});
  a.use_count = 3;
  a.window_use_count = 1;
  a.created_at = 7;
  dict.add(a, true);
  dict.add(entry({"D", "@"}, {"THE"}), true);
  dict.add(entry({"r", "s", "A", "k"}, {"SOCK"}), true);

  auto path = std::filesystem::temp_directory_path() / "lexacq_dict_roundtrip.tsv";
  save_dictionary(dict, path);
  Dictionary loaded = load_dictionary(path, true);
  CHECK(loaded == dict);

  save_dictionary(loaded, path);
  Dictionary loaded2 = load_dictionary(path, true);
  CHECK(dictionary_to_tsv(loaded2) == dictionary_to_tsv(dict)); // byte-identical saves
  std::filesystem::remove(path);
}

TEST_CASE("load maps fields directly") {
  Dictionary dict = dictionary_from_tsv("n.i.n.a\tNINA\t5\t5\t0\n", true);
  REQUIRE(dict.size() == 1);
  const LexEntry* e = dict.find("n.i.n.a|NINA");
  REQUIRE(e != nullptr);
  CHECK(e->use_count == 5);
  CHECK(e->window_use_count == 5);
  CHECK(e->created_at == 0);
}

TEST_CASE("load errors carry line numbers") {
  CHECK_THROWS_WITH_AS(dictionary_from_tsv("a\tX\t1\t0\t0\nbroken line\n", true),
                       doctest::Contains("line 2"), FormatError);
  // empty sememes under gate-on validation
  CHECK_THROWS_WITH_AS(dictionary_from_tsv("x\t\t1\t0\t0\n", true),
                       doctest::Contains("empty sememe"), FormatError);
  CHECK_NOTHROW(dictionary_from_tsv("x\t\t1\t0\t0\n", false));
  // duplicate canonical id
  CHECK_THROWS_WITH_AS(dictionary_from_tsv("a\tX\t1\t0\t0\na\tX\t2\t0\t0\n", true),
                       doctest::Contains("duplicate"), FormatError);
  // counter invariant
  CHECK_THROWS_AS(dictionary_from_tsv("a\tX\t1\t2\t0\n", true), FormatError);
}

TEST_CASE("gate invariant holds after any add sequence") {
  Dictionary dict;
  dict.add(entry({"a"}, {"X"}), true);
  dict.add(entry({"b"}, {}), true);
  dict.add(entry({"c", "d"}, {"Y", "Z"}), true);
  dict.add(entry({"e"}, {}), true);
  for (const auto& [id, e] : dict.entries()) CHECK_FALSE(e.sememes.empty());
}
