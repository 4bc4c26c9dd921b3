#include <doctest.h>

#include <sstream>

#include "ngdep/errors.hpp"
#include "ngdep/paraphrase.hpp"

using namespace ngdep;

TEST_CASE("finalize sorts by count then word and truncates") {
  ParaphraseHarvest h;
  SlotTally& tally = h.queries["q1 q2"];
  tally.add(Slot::Mid, "public", 9);
  tally.add(Slot::Mid, "a", 7);
  ParaphraseLists lists = finalize_paraphrase(h, "web1t", "cfg");
  auto* mid = lists.slot("q1 q2", Slot::Mid);
  REQUIRE(mid);
  REQUIRE(mid->size() == 2);
  CHECK((*mid)[0].word == "public");
  CHECK((*mid)[1].word == "a");

  // 25 distinct mid words: 20 retained.
  ParaphraseHarvest big;
  for (int i = 0; i < 25; ++i)
    big.queries["q"].add(Slot::Mid, "w" + std::to_string(i), 100 - i);
  CHECK(finalize_paraphrase(big, "web1t", "cfg").slot("q", Slot::Mid)->size() ==
        20);
  // Edge slots keep 5.
  ParaphraseHarvest edges;
  for (int i = 0; i < 9; ++i)
    edges.queries["q"].add(Slot::Before, "w" + std::to_string(i), 5);
  CHECK(finalize_paraphrase(edges, "web1t", "cfg")
            .slot("q", Slot::Before)
            ->size() == 5);

  // Ties break lexicographically.
  ParaphraseHarvest tie;
  tie.queries["q"].add(Slot::Mid, "x", 5);
  tie.queries["q"].add(Slot::Mid, "a", 5);
  ParaphraseLists tied = finalize_paraphrase(tie, "web1t", "cfg");
  auto* ranked = tied.slot("q", Slot::Mid);
  CHECK((*ranked)[0].word == "a");
  CHECK((*ranked)[1].word == "x");
}

TEST_CASE("harvest merge sums tallies field-wise") {
  ParaphraseHarvest a, b;
  a.queries["q"].add(Slot::Mid, "w", 3);
  b.queries["q"].add(Slot::Mid, "w", 4);
  b.queries["q"].add(Slot::After, "z", 1);
  b.queries["other"].add(Slot::Before, "y", 2);
  a.merge(b);
  CHECK(a.queries["q"].words[static_cast<int>(Slot::Mid)]["w"] == 7);
  CHECK(a.queries["q"].words[static_cast<int>(Slot::After)]["z"] == 1);
  CHECK(a.queries["other"].words[static_cast<int>(Slot::Before)]["y"] == 2);
}

TEST_CASE("paraphrase files round trip") {
  ParaphraseHarvest h;
  h.queries["hold hearing"].add(Slot::Mid, "public", 9);
  h.queries["hold hearing"].add(Slot::Mid, "a", 7);
  h.queries["hold hearing"].add(Slot::Before, "will", 4);
  h.queries["hold hearing"].add(Slot::PosMid, "JJ", 9);
  ParaphraseLists lists = finalize_paraphrase(h, "web1t", "cfg");
  std::ostringstream first;
  write_paraphrase(first, lists);
  std::istringstream in(first.str());
  ParaphraseLists back = read_paraphrase(in, "mem");
  std::ostringstream second;
  write_paraphrase(second, back);
  CHECK(first.str() == second.str());
  CHECK(back.corpus_id == "web1t");
  CHECK(back.slot("hold hearing", Slot::Mid)->front().word == "public");

  std::istringstream bad("q\tmid\t2\tw\t3\n");
  CHECK_THROWS_AS(read_paraphrase(bad, "mem"), DataError);  // no meta
  std::istringstream badrank(
      "#meta\tcorpus\tweb1t\nq\tmid\t2\tw\t3\n");
  CHECK_THROWS_AS(read_paraphrase(badrank, "mem"), DataError);
}
