#include <doctest.h>

#include <set>
#include <sstream>

#include "ngdep/errors.hpp"
#include "ngdep/syntactic_scan.hpp"
#include "oracles.hpp"

using namespace ngdep;

namespace {

const char* kFixtureLine =
    "hold\thold/VB/ROOT/0 a/DT/det/3 hearing/NN/dobj/1\t15000\t2000,15000";

SyntacticNgramRecord fixture() { return parse_syngram_line(kFixtureLine); }

SyntacticLookupKey key_of(const ArcCandidate& arc, SynKeyKind kind) {
  for (auto& k : syntactic_lookup_keys(arc))
    if (k.kind == kind) return k;
  throw std::logic_error("kind not found");
}

ArcCandidate hold_hearing_arc() {
  ArcCandidate arc;
  arc.head_form = "hold";
  arc.head_fpos = "VB";
  arc.arg_form = "hearing";
  arc.arg_fpos = "NN";
  arc.head_position = 1;
  arc.arg_position = 3;
  arc.direction = Direction::HeadLeft;
  arc.surface_distance = 2;
  return arc;
}

// An 8-word fragment vocabulary for randomized fixtures.
SyntacticNgramRecord random_record(oracle::Rng& rng) {
  const char* forms[] = {"hold", "hearing", "a", "public", "next",
                         "week",  "could",   "w/x"};
  const char* tags[] = {"VB", "NN", "DT", "JJ"};
  int n = rng.range(1, 5);
  SyntacticNgramRecord rec;
  rec.total_count = 1 + rng.below(40);
  // Random tree over the fragment: token 1..n, one root, heads among others.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[static_cast<int>(rng.below(i + 1))]);
  std::vector<int> heads(n, 0);
  for (int i = 1; i < n; ++i) heads[order[i] - 1] = order[rng.below(i)];
  heads[order[0] - 1] = 0;
  for (int i = 0; i < n; ++i) {
    SynToken t;
    t.form = forms[rng.below(8)];
    t.fpos = tags[rng.below(4)];
    t.deplabel = "dep";
    t.head_index = heads[i];
    rec.tokens.push_back(t);
  }
  rec.head_word = rec.tokens[0].form;
  return rec;
}

}  // namespace

TEST_CASE("syntactic n-gram lines parse with right-split tokens") {
  SyntacticNgramRecord rec = fixture();
  CHECK(rec.head_word == "hold");
  CHECK(rec.total_count == 15000);
  REQUIRE(rec.tokens.size() == 3);
  CHECK(rec.tokens[0].form == "hold");
  CHECK(rec.tokens[0].fpos == "VB");
  CHECK(rec.tokens[0].head_index == 0);
  CHECK(rec.tokens[1].form == "a");
  CHECK(rec.tokens[1].head_index == 3);
  CHECK(record_arcs(rec) ==
        std::vector<std::pair<int, int>>{{3, 2}, {1, 3}});

  // Forms may contain '/': fields split from the right.
  auto slashy = parse_syngram_line("w\tw/x/NN/dobj/0\t5");
  CHECK(slashy.tokens[0].form == "w/x");
  CHECK(slashy.tokens[0].fpos == "NN");
}

TEST_CASE("fragment tree violations are rejected") {
  CHECK_THROWS_AS(parse_syngram_line("h\ta/X/d/0 b/X/d/0\t3"),
                  DataError);  // two roots
  CHECK_THROWS_AS(parse_syngram_line("h\ta/X/d/1\t3"), DataError);  // self
  CHECK_THROWS_AS(parse_syngram_line("h\ta/X/d/5 b/X/d/1\t3"),
                  DataError);  // head out of range
  CHECK_THROWS_AS(parse_syngram_line("h\ta/X/d/x\t3"), DataError);
  CHECK_THROWS_AS(parse_syngram_line("h\tnofields\t3"), DataError);
  CHECK_THROWS_AS(parse_syngram_line("h only two cols"), DataError);

  CHECK(record_arcs(parse_syngram_line("h\ta/X/d/0\t3")).empty());
  CHECK(record_arcs(parse_syngram_line("h\ta/X/d/0 b/X/d/1 c/X/d/2\t3"))
            .size() == 2);
}

TEST_CASE("first-order accumulation credits matching keys") {
  SyntacticNgramRecord rec = fixture();
  ArcCandidate arc = hold_hearing_arc();
  auto wwd = key_of(arc, SynKeyKind::WordWordDir);
  auto aw = key_of(arc, SynKeyKind::ArgWord);
  auto counts = accumulate_first_order(rec, {wwd, aw});
  CHECK(counts[wwd.table_key()] == 15000);
  CHECK(counts[aw.table_key()] == 15000);

  // No hearing->hold arc exists.
  ArcCandidate reversed;
  reversed.head_form = "hearing";
  reversed.head_fpos = "NN";
  reversed.arg_form = "hold";
  reversed.arg_fpos = "VB";
  reversed.head_position = 1;
  reversed.arg_position = 2;
  reversed.direction = Direction::HeadLeft;
  reversed.surface_distance = 1;
  auto ww = key_of(reversed, SynKeyKind::WordWord);
  auto zero = accumulate_first_order(rec, {ww});
  CHECK(zero.find(ww.table_key()) == zero.end());
}

TEST_CASE("second-order matching pins the parent position") {
  // hold ... hearing ... Tuesday with arcs hold->hearing, hold->Tuesday.
  auto rec = parse_syngram_line(
      "hold\thold/VB/ROOT/0 hearing/NN/dobj/1 Tuesday/NNP/tmod/1\t11\t");
  TripleQuery parent_first;
  parent_first.parent_form = "hold";
  parent_first.parent_fpos = "VB";
  parent_first.c1_form = "hearing";
  parent_first.c1_fpos = "NN";
  parent_first.c2_form = "Tuesday";
  parent_first.c2_fpos = "NNP";
  parent_first.parent_position = 1;
  parent_first.c1_position = 2;
  parent_first.c2_position = 3;
  auto counts = accumulate_second_order(rec, {parent_first}, {});
  CHECK(counts[syn2_word_table_key(ParentSide::First,
                                   {"hold", "hearing", "Tuesday"})] == 11);
  // POS triple accrues independently of the word triple.
  CHECK(counts[syn2_pos_table_key(ParentSide::First, {"VB", "NN", "NNP"})] ==
        11);

  // Same arcs, different linear order: hearing ... hold ... Tuesday.
  auto reordered = parse_syngram_line(
      "hold\thearing/NN/dobj/2 hold/VB/ROOT/0 Tuesday/NNP/tmod/2\t11\t");
  auto counts2 = accumulate_second_order(reordered, {parent_first}, {});
  CHECK(counts2.empty());
}

TEST_CASE("siblings need a shared parent and preserved order") {
  auto rec = parse_syngram_line(
      "hold\thold/VB/ROOT/0 hearing/NN/dobj/1 Tuesday/NNP/tmod/1\t7\t");
  SiblingQuery sib;
  sib.c1_form = "hearing";
  sib.c1_fpos = "NN";
  sib.c2_form = "Tuesday";
  sib.c2_fpos = "NNP";
  sib.c1_position = 1;
  sib.c2_position = 2;
  auto counts = accumulate_second_order(rec, {}, {sib});
  CHECK(counts[sib2_word_table_key({"hearing", "Tuesday"})] == 7);
  CHECK(counts[sib2_pos_table_key({"NN", "NNP"})] == 7);

  SiblingQuery reversed = sib;
  reversed.c1_position = 2;
  reversed.c2_position = 1;  // now Tuesday must precede hearing
  auto none = accumulate_second_order(rec, {}, {reversed});
  CHECK(none.find(sib2_word_table_key({"Tuesday", "hearing"})) == none.end());
}

TEST_CASE("paraphrase harvest splits context by linear position") {
  auto rec = parse_syngram_line(
      "hold\tcould/MD/aux/2 hold/VB/ROOT/0 a/DT/det/5 public/JJ/amod/5 "
      "hearing/NN/dobj/2 next/JJ/amod/7 week/NN/tmod/2\t9\t");
  ArcCandidate arc = hold_hearing_arc();
  ParaphraseHarvest h = harvest_syntactic_paraphrase(rec, {arc});
  const SlotTally& tally = h.queries.at("hold hearing");
  CHECK(tally.words[static_cast<int>(Slot::Before)].at("could") == 9);
  CHECK(tally.words[static_cast<int>(Slot::Mid)].at("a") == 9);
  CHECK(tally.words[static_cast<int>(Slot::Mid)].at("public") == 9);
  CHECK(tally.words[static_cast<int>(Slot::After)].at("next") == 9);
  CHECK(tally.words[static_cast<int>(Slot::After)].at("week") == 9);
  CHECK(tally.words[static_cast<int>(Slot::PosMid)].at("DT") == 9);
  CHECK(tally.words[static_cast<int>(Slot::PosMid)].at("JJ") == 9);

  // Adjacent endpoints leave the mid slot empty.
  auto adj = parse_syngram_line("hold\thold/VB/ROOT/0 hearing/NN/dobj/1\t4\t");
  ParaphraseHarvest h2 = harvest_syntactic_paraphrase(adj, {arc});
  CHECK(h2.queries.at("hold hearing")
            .words[static_cast<int>(Slot::Mid)]
            .empty());
}

TEST_CASE("dependency labels and extra context never affect matching") {
  auto base = parse_syngram_line(
      "hold\thold/VB/ROOT/0 hearing/NN/dobj/1\t5\t");
  auto relabeled = parse_syngram_line(
      "hold\thold/VB/xcomp/0 hearing/NN/weird/1\t5\t");
  auto padded = parse_syngram_line(
      "hold\thold/VB/ROOT/0 oh/UH/dep/1 hearing/NN/dobj/1\t5\t");
  ArcCandidate arc = hold_hearing_arc();
  auto keys = syntactic_lookup_keys(arc);
  auto c1 = accumulate_first_order(base, keys);
  auto c2 = accumulate_first_order(relabeled, keys);
  CHECK(c1 == c2);
  // Extra context tokens do not block the arc match.
  auto c3 = accumulate_first_order(padded, keys);
  CHECK(c3[key_of(arc, SynKeyKind::WordWord).table_key()] == 5);
}

TEST_CASE("word->word+dir totals obey arc conservation") {
  oracle::Rng rng(59);
  std::vector<SyntacticNgramRecord> corpus;
  for (int i = 0; i < 200; ++i) corpus.push_back(random_record(rng));
  // Query set: every wwd key instantiated anywhere in the corpus.
  QuerySet qs;
  std::set<std::string> seen;
  for (const auto& rec : corpus) {
    for (const auto& [h, a] : record_arcs(rec)) {
      ArcCandidate arc;
      arc.head_form = rec.tokens[h - 1].form;
      arc.head_fpos = rec.tokens[h - 1].fpos;
      arc.arg_form = rec.tokens[a - 1].form;
      arc.arg_fpos = rec.tokens[a - 1].fpos;
      arc.head_position = h;
      arc.arg_position = a;
      arc.direction = h < a ? Direction::HeadLeft : Direction::HeadRight;
      arc.surface_distance = std::abs(h - a);
      if (seen.insert(serialize(arc)).second) qs.arcs.push_back(arc);
    }
  }
  for (const ArcCandidate& a : qs.arcs)
    qs.syn_keys.push_back(key_of(a, SynKeyKind::WordWordDir));
  auto queries = std::make_shared<const SyntacticQueries>(
      SyntacticQueries::build(qs));
  SyntacticAccumulator acc(queries);
  std::uint64_t expected = 0;
  for (const auto& rec : corpus) {
    acc.accumulate(rec);
    expected += rec.total_count * record_arcs(rec).size();
  }
  std::uint64_t total = 0;
  for (const auto& [key, count] : acc.counts())
    if (key.rfind("syn:wwd:", 0) == 0) total += count;
  CHECK(total == expected);
}

TEST_CASE("accumulators equal the brute-force subtree matcher") {
  oracle::Rng rng(61);
  std::vector<SyntacticNgramRecord> corpus;
  for (int i = 0; i < 300; ++i) corpus.push_back(random_record(rng));

  // Random queries drawn from the same vocabulary.
  QuerySet qs;
  for (int i = 0; i < 40; ++i) {
    SyntacticNgramRecord probe = random_record(rng);
    if (probe.tokens.size() < 3) continue;
    TripleQuery t;
    t.parent_form = probe.tokens[0].form;
    t.parent_fpos = probe.tokens[0].fpos;
    t.c1_form = probe.tokens[1].form;
    t.c1_fpos = probe.tokens[1].fpos;
    t.c2_form = probe.tokens[2].form;
    t.c2_fpos = probe.tokens[2].fpos;
    if (rng.below(2)) {
      t.parent_position = 1;
      t.c1_position = 2;
      t.c2_position = 3;
    } else {
      t.parent_position = 3;
      t.c1_position = 2;
      t.c2_position = 1;
    }
    qs.triples.push_back(t);
    SiblingQuery s;
    s.c1_form = probe.tokens[1].form;
    s.c1_fpos = probe.tokens[1].fpos;
    s.c2_form = probe.tokens[2].form;
    s.c2_fpos = probe.tokens[2].fpos;
    s.c1_position = rng.below(2) ? 1 : 2;
    s.c2_position = s.c1_position == 1 ? 2 : 1;
    qs.siblings.push_back(s);
    ArcCandidate a;
    a.head_form = probe.tokens[0].form;
    a.head_fpos = probe.tokens[0].fpos;
    a.arg_form = probe.tokens[1].form;
    a.arg_fpos = probe.tokens[1].fpos;
    a.direction = rng.below(2) ? Direction::HeadLeft : Direction::HeadRight;
    a.head_position = a.direction == Direction::HeadLeft ? 1 : 2;
    a.arg_position = a.direction == Direction::HeadLeft ? 2 : 1;
    a.surface_distance = 1;
    qs.arcs.push_back(a);
    for (auto& k : syntactic_lookup_keys(a)) qs.syn_keys.push_back(k);
  }

  auto queries = std::make_shared<const SyntacticQueries>(
      SyntacticQueries::build(qs));
  SyntacticAccumulator acc(queries);
  for (const auto& rec : corpus) acc.accumulate(rec);

  for (const auto& key : qs.syn_keys) {
    std::uint64_t expect = 0;
    for (const auto& rec : corpus) expect += oracle::syn_first_order(rec, key);
    std::uint64_t got = 0;
    auto it = acc.counts().find(key.table_key());
    if (it != acc.counts().end()) got = it->second;
    CHECK(got == expect);
  }
  for (const auto& t : qs.triples) {
    for (bool by_pos : {false, true}) {
      std::uint64_t expect = 0;
      for (const auto& rec : corpus)
        expect += oracle::syn_triple(rec, t, by_pos);
      std::string key = by_pos
                            ? syn2_pos_table_key(t.side(), t.pos_query())
                            : syn2_word_table_key(t.side(), t.surface_query());
      std::uint64_t got = 0;
      auto it = acc.counts().find(key);
      if (it != acc.counts().end()) got = it->second;
      CHECK(got == expect);
    }
  }
  for (const auto& s : qs.siblings) {
    for (bool by_pos : {false, true}) {
      std::uint64_t expect = 0;
      for (const auto& rec : corpus)
        expect += oracle::syn_sibling(rec, s, by_pos);
      std::string key = by_pos ? sib2_pos_table_key(s.pos_query())
                               : sib2_word_table_key(s.surface_query());
      std::uint64_t got = 0;
      auto it = acc.counts().find(key);
      if (it != acc.counts().end()) got = it->second;
      CHECK(got == expect);
    }
  }

  // Shard-merge associativity on the same corpus.
  SyntacticAccumulator sa(queries), sb(queries);
  for (std::size_t i = 0; i < corpus.size(); ++i)
    (i % 2 ? sa : sb).accumulate(corpus[i]);
  SyntacticAccumulator merged(queries);
  merged.merge(sa);
  merged.merge(sb);
  CHECK(merged.counts() == acc.counts());
}
