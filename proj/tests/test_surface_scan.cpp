#include <doctest.h>

#include <sstream>

#include "ngdep/errors.hpp"
#include "ngdep/surface_scan.hpp"
#include "oracles.hpp"

using namespace ngdep;

namespace {

NgramRecord rec(const std::vector<std::string>& tokens, std::uint64_t count) {
  return NgramRecord{tokens, count};
}

ArcCandidate arc_query(const std::string& q1, const std::string& q2) {
  // Linear order q1 before q2, head-left by convention.
  ArcCandidate a;
  a.head_form = q1;
  a.arg_form = q2;
  a.head_fpos = "H";
  a.arg_fpos = "A";
  a.head_position = 1;
  a.arg_position = 2;
  a.direction = Direction::HeadLeft;
  a.surface_distance = 1;
  return a;
}

TripleQuery triple_query(const std::string& q1, const std::string& q2,
                         const std::string& q3) {
  TripleQuery t;
  t.parent_form = q1;
  t.c1_form = q2;
  t.c2_form = q3;
  t.parent_fpos = t.c1_fpos = t.c2_fpos = "T";
  t.parent_position = 1;
  t.c1_position = 2;
  t.c2_position = 3;
  return t;
}

std::vector<std::string> random_vocab(int size) {
  std::vector<std::string> vocab;
  for (int i = 0; i < size; ++i) vocab.push_back("w" + std::to_string(i));
  return vocab;
}

}  // namespace

TEST_CASE("web1t lines parse into records") {
  NgramRecord r = parse_web1t_line("hold a hearing\t42");
  CHECK(r.tokens == std::vector<std::string>{"hold", "a", "hearing"});
  CHECK(r.count == 42);
  CHECK(parse_web1t_line("hold\t200").tokens.size() == 1);
  CHECK_THROWS_AS(parse_web1t_line("a b c d e f\t9"), DataError);
  CHECK_THROWS_AS(parse_web1t_line("no tab here"), DataError);
  CHECK_THROWS_AS(parse_web1t_line("w\tnot-a-number"), DataError);
  CHECK_THROWS_AS(parse_web1t_line("\t9"), DataError);
}

TEST_CASE("books lines carry match counts and years") {
  BooksRecord r = parse_books_line("hold a hearing\t1999\t12\t7");
  CHECK(r.record.tokens.size() == 3);
  CHECK(r.record.count == 12);
  CHECK(r.year == 1999);
  CHECK_THROWS_AS(parse_books_line("hold a hearing\t19x9\t12\t7"), DataError);
  CHECK_THROWS_AS(parse_books_line("hold\t1999\t12"), DataError);

  // Accumulating two year-rows of the same ngram sums to the total.
  std::vector<NgramRecord> records = {
      parse_books_line("hold a hearing\t1999\t12\t7").record,
      parse_books_line("hold a hearing\t2000\t30\t9").record};
  auto counts = scan_affinity(records, {arc_query("hold", "hearing")});
  CHECK(counts.at("hold hearing").gap1 == 42);
}

TEST_CASE("affinity counts follow the contig/gap patterns") {
  std::vector<NgramRecord> corpus = {
      rec({"hold", "hearing"}, 12),
      rec({"hold", "a", "hearing"}, 7),
      rec({"hold", "a", "public", "hearing"}, 3),
      rec({"hold", "a", "very", "public", "hearing"}, 2),
  };
  auto counts = scan_affinity(corpus, {arc_query("hold", "hearing")});
  AffinityCounts c = counts.at("hold hearing");
  CHECK(c.contig == 12);
  CHECK(c.gap1 == 7);
  CHECK(c.gap2 == 3);
  CHECK(c.gap3 == 2);
  CHECK(c.total() == 24);

  // Linear order is respected: the reversed query matches nothing.
  auto reversed = scan_affinity(corpus, {arc_query("hearing", "hold")});
  CHECK(reversed.find("hearing hold") == reversed.end());
}

TEST_CASE("every matching offset inside one record counts") {
  std::vector<NgramRecord> corpus = {rec({"hold", "hold", "hearing"}, 5)};
  auto counts = scan_affinity(corpus, {arc_query("hold", "hearing")});
  AffinityCounts c = counts.at("hold hearing");
  CHECK(c.contig == 5);
  CHECK(c.gap1 == 5);
}

TEST_CASE("triple counts sum the six configurations") {
  std::vector<NgramRecord> corpus = {
      rec({"hold", "hearing", "Tuesday"}, 4),
      rec({"hold", "a", "hearing", "Tuesday"}, 2),
      rec({"hold", "hearing", "next", "Tuesday"}, 1),
  };
  auto counts = scan_triple_counts(
      corpus, {triple_query("hold", "hearing", "Tuesday")});
  CHECK(counts.at("hold hearing Tuesday") == 7);

  // (q1 * q2 * q3) with both gaps.
  auto wide = scan_triple_counts(
      {rec({"hold", "a", "hearing", "on", "Tuesday"}, 3)},
      {triple_query("hold", "hearing", "Tuesday")});
  CHECK(wide.at("hold hearing Tuesday") == 3);

  auto none = scan_triple_counts({rec({"Tuesday", "hold", "hearing"}, 9)},
                                 {triple_query("hold", "hearing", "Tuesday")});
  CHECK(none.find("hold hearing Tuesday") == none.end());
}

TEST_CASE("paraphrase windows fill the three slots") {
  std::vector<NgramRecord> corpus = {
      rec({"hold", "public", "hearing"}, 9),
      rec({"hold", "a", "hearing"}, 7),
      rec({"will", "hold", "hearing"}, 4),
      rec({"hold", "hearing", "today"}, 5),
  };
  ParaphraseHarvest h =
      scan_paraphrase(corpus, {arc_query("hold", "hearing")});
  const SlotTally& tally = h.queries.at("hold hearing");
  CHECK(tally.words[static_cast<int>(Slot::Mid)].at("public") == 9);
  CHECK(tally.words[static_cast<int>(Slot::Mid)].at("a") == 7);
  CHECK(tally.words[static_cast<int>(Slot::Before)].at("will") == 4);
  CHECK(tally.words[static_cast<int>(Slot::After)].at("today") == 5);

  // Top mid word is "public".
  auto lists = finalize_paraphrase(h, "web1t", "h");
  CHECK(lists.slot("hold hearing", Slot::Mid)->front().word == "public");

  ParaphraseHarvest empty =
      scan_paraphrase(corpus, {arc_query("absent", "pair")});
  CHECK(empty.queries.find("absent pair") == empty.queries.end());
}

TEST_CASE("scanner equals the brute-force matcher on random corpora") {
  oracle::Rng rng(41);
  auto vocab = random_vocab(12);
  std::vector<NgramRecord> corpus;
  for (int i = 0; i < 800; ++i) {
    int len = rng.range(1, 5);
    std::vector<std::string> toks;
    for (int j = 0; j < len; ++j) toks.push_back(vocab[rng.below(12)]);
    corpus.push_back(rec(toks, 1 + rng.below(50)));
  }
  std::vector<ArcCandidate> arcs;
  std::vector<TripleQuery> triples;
  for (int q = 0; q < 60; ++q) {
    arcs.push_back(arc_query(vocab[rng.below(12)], vocab[rng.below(12)]));
    triples.push_back(triple_query(vocab[rng.below(12)], vocab[rng.below(12)],
                                   vocab[rng.below(12)]));
  }
  auto pair_counts = scan_affinity(corpus, arcs);
  auto triple_counts = scan_triple_counts(corpus, triples);
  auto harvest = scan_paraphrase(corpus, arcs);
  for (const auto& a : arcs) {
    auto q = a.surface_query();
    AffinityCounts expect = oracle::affinity(corpus, q[0], q[1]);
    AffinityCounts got;
    auto it = pair_counts.find(q[0] + " " + q[1]);
    if (it != pair_counts.end()) got = it->second;
    CHECK(got == expect);

    auto slots = oracle::paraphrase(corpus, q[0], q[1]);
    SlotTally tally;
    auto hit = harvest.queries.find(q[0] + " " + q[1]);
    if (hit != harvest.queries.end()) tally = hit->second;
    CHECK(tally.words[0] == slots[0]);
    CHECK(tally.words[1] == slots[1]);
    CHECK(tally.words[2] == slots[2]);
  }
  for (const auto& t : triples) {
    auto q = t.surface_query();
    std::uint64_t expect = oracle::triple_count(corpus, q[0], q[1], q[2]);
    std::uint64_t got = 0;
    auto it = triple_counts.find(q[0] + " " + q[1] + " " + q[2]);
    if (it != triple_counts.end()) got = it->second;
    CHECK(got == expect);
  }
}

TEST_CASE("shard merging equals a single pass") {
  oracle::Rng rng(43);
  auto vocab = random_vocab(8);
  std::vector<NgramRecord> corpus;
  for (int i = 0; i < 500; ++i) {
    int len = rng.range(2, 5);
    std::vector<std::string> toks;
    for (int j = 0; j < len; ++j) toks.push_back(vocab[rng.below(8)]);
    corpus.push_back(rec(toks, 1 + rng.below(30)));
  }
  QuerySet qs;
  for (int q = 0; q < 20; ++q)
    qs.arcs.push_back(arc_query(vocab[rng.below(8)], vocab[rng.below(8)]));
  auto queries = std::make_shared<const SurfaceQueries>(
      SurfaceQueries::build(qs));

  SurfaceAccumulator single(queries);
  for (const auto& r : corpus) single.accumulate(r);

  // Random 3-way sharding, merged in arbitrary grouping.
  SurfaceAccumulator shard_a(queries), shard_b(queries), shard_c(queries);
  for (const auto& r : corpus) {
    switch (rng.below(3)) {
      case 0: shard_a.accumulate(r); break;
      case 1: shard_b.accumulate(r); break;
      default: shard_c.accumulate(r); break;
    }
  }
  SurfaceAccumulator merged(queries);
  merged.merge(shard_b);
  merged.merge(shard_a);
  merged.merge(shard_c);
  CHECK(merged.pair_counts() == single.pair_counts());
  CHECK(merged.records_seen() == single.records_seen());
  std::ostringstream t1, t2;
  merged.to_count_table("web1t", "h").write(t1);
  single.to_count_table("web1t", "h").write(t2);
  CHECK(t1.str() == t2.str());
}

TEST_CASE("affinity counts never decrease as records are added") {
  oracle::Rng rng(47);
  auto vocab = random_vocab(5);
  QuerySet qs;
  qs.arcs.push_back(arc_query(vocab[0], vocab[1]));
  auto queries =
      std::make_shared<const SurfaceQueries>(SurfaceQueries::build(qs));
  SurfaceAccumulator acc(queries);
  AffinityCounts last;
  for (int i = 0; i < 300; ++i) {
    int len = rng.range(1, 5);
    std::vector<std::string> toks;
    for (int j = 0; j < len; ++j) toks.push_back(vocab[rng.below(5)]);
    acc.accumulate(rec(toks, 1 + rng.below(10)));
    AffinityCounts now;
    auto it = acc.pair_counts().find(vocab[0] + " " + vocab[1]);
    if (it != acc.pair_counts().end()) now = it->second;
    CHECK(now.contig >= last.contig);
    CHECK(now.gap1 >= last.gap1);
    CHECK(now.gap2 >= last.gap2);
    CHECK(now.gap3 >= last.gap3);
    last = now;
  }
}
