#include <doctest.h>

#include <algorithm>
#include <map>

#include "ngdep/errors.hpp"
#include "ngdep/features.hpp"
#include "oracles.hpp"

using namespace ngdep;

namespace {

Sentence make_sentence(const std::vector<std::string>& forms,
                       const std::vector<std::string>& tags) {
  Sentence s;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Token t;
    t.index = static_cast<int>(i) + 1;
    t.form = forms[i];
    t.cpos = tags[i];
    t.fpos = tags[i];
    t.gold_head = i == 0 ? 0 : 1;
    s.tokens.push_back(t);
  }
  return s;
}

Sentence hold_sentence() {
  return make_sentence({"could", "hold", "a", "public", "hearing"},
                       {"MD", "VB", "DT", "JJ", "NN"});
}

UnigramTagger demo_tagger() {
  std::vector<Sentence> train = {
      make_sentence({"public", "public", "will"}, {"JJ", "JJ", "MD"})};
  return UnigramTagger::train(train);
}

std::size_t count_prefixed(const std::vector<std::string>& feats,
                           const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& f : feats)
    if (f.rfind(prefix, 0) == 0) ++n;
  return n;
}

std::size_t count_containing(const std::vector<std::string>& feats,
                             const std::string& needle) {
  std::size_t n = 0;
  for (const auto& f : feats)
    if (f.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST_CASE("unigram tagger picks the modal tag with string-order ties") {
  std::vector<Sentence> train = {
      make_sentence({"hearing", "hearing", "hearing", "hearing"},
                    {"NN", "NN", "NN", "VBG"}),
      make_sentence({"tiew", "tiew", "tiew", "tiew"},
                    {"VB", "NN", "VB", "NN"})};
  UnigramTagger tagger = UnigramTagger::train(train);
  CHECK(tagger.tag("hearing") == "NN");
  CHECK(tagger.tag("tiew") == "NN");  // tie NN/VB -> NN
  CHECK(tagger.tag("unseen-word") == "NN");  // global modal
  CHECK_THROWS_AS(UnigramTagger::train({}), DataError);
}

TEST_CASE("baseline features are deterministic and root-aware") {
  Sentence s = hold_sentence();
  auto a = baseline_arc_features(s, 2, 5);
  auto b = baseline_arc_features(s, 2, 5);
  CHECK(a == b);
  CHECK(!a.empty());

  auto root = baseline_arc_features(s, 0, 2);
  CHECK(count_prefixed(root, "b:hw=") == 0);
  CHECK(count_prefixed(root, "b:hwp=") == 0);
  CHECK(count_containing(root, "<ROOT>") > 0);
}

TEST_CASE("baseline template count follows the documented formula") {
  // Non-root arcs: 17 core templates plus one per token strictly between.
  Sentence s = hold_sentence();
  for (int h = 1; h <= s.size(); ++h) {
    for (int a = 1; a <= s.size(); ++a) {
      if (h == a) continue;
      int dist = std::abs(h - a);
      CHECK(baseline_arc_features(s, h, a).size() ==
            static_cast<std::size_t>(17 + dist - 1));
    }
  }
  // Root arcs drop the 7 head-word templates: 10 plus tokens before the arg.
  for (int a = 1; a <= s.size(); ++a)
    CHECK(baseline_arc_features(s, 0, a).size() ==
          static_cast<std::size_t>(10 + a - 1));
}

TEST_CASE("affinity bucketing emits the exact cumulative family") {
  Sentence s = hold_sentence();
  UnigramTagger tagger = demo_tagger();

  // Total 24 across the four patterns: bucket 0.
  CountTable table("web1t", "h");
  table.add(pair_table_key("contig", "hold", "hearing"), 12);
  table.add(pair_table_key("gap1", "hold", "hearing"), 7);
  table.add(pair_table_key("gap2", "hold", "hearing"), 3);
  table.add(pair_table_key("gap3", "hold", "hearing"), 2);

  FeatureGroups groups;
  groups.baseline = false;
  groups.surface_affinity = true;
  FeatureResources res;
  res.surface_table = &table;
  res.tagger = &tagger;
  FeatureExtractor fx(groups, res);
  std::vector<std::string> feats;
  fx.arc_features(s, 2, 5, feats);
  CHECK(count_containing(feats, ":b=") == 1);
  CHECK(count_containing(feats, ":b>=") == 1);
  CHECK(count_containing(feats, ":b=0") == 1);
  CHECK(count_containing(feats, "aff[web1t]:VB:NN:L:3") == 2);
}

TEST_CASE("cumulative features number B/5 + 1 for each bucket") {
  Sentence s = hold_sentence();
  const std::map<int, std::uint64_t> bucket_to_count = {
      {0, 1}, {5, 32}, {10, 1024}, {25, 1ULL << 25}};
  for (const auto& [bucket, count] : bucket_to_count) {
    CountTable table("web1t", "h");
    table.add(pair_table_key("contig", "hold", "hearing"), count);
    FeatureGroups groups;
    groups.baseline = false;
    groups.surface_affinity = true;
    FeatureResources res;
    res.surface_table = &table;
    FeatureExtractor fx(groups, res);
    std::vector<std::string> feats;
    fx.arc_features(s, 2, 5, feats);
    CHECK(count_containing(feats, ":b=") == 1);
    CHECK(count_containing(feats, ":b=" + std::to_string(bucket)) == 1);
    CHECK(count_containing(feats, ":b>=") ==
          static_cast<std::size_t>(bucket / 5 + 1));
  }
}

TEST_CASE("paraphrase features conjoin POS tags, the word and the slot") {
  Sentence s = hold_sentence();
  UnigramTagger tagger = demo_tagger();
  ParaphraseHarvest h;
  h.queries["hold hearing"].add(Slot::Mid, "public", 9);
  h.queries["hold hearing"].add(Slot::Mid, "a", 7);
  ParaphraseLists lists = finalize_paraphrase(h, "web1t", "cfg");

  FeatureGroups groups;
  groups.baseline = false;
  groups.surface_paraphrase = true;
  FeatureResources res;
  res.surface_paraphrase = &lists;
  res.tagger = &tagger;
  FeatureExtractor fx(groups, res);
  std::vector<std::string> feats;
  fx.arc_features(s, 2, 5, feats);
  CHECK(std::count(feats.begin(), feats.end(),
                   "par[web1t]:mid:VB:NN:w=public") == 1);
  CHECK(std::count(feats.begin(), feats.end(),
                   "par[web1t]:mid:VB:NN:w=a") == 1);
  // "public" tags as JJ via the unigram tagger; "a" is unseen and falls
  // back to the modal tag JJ, so the tag variant appears once.
  CHECK(std::count(feats.begin(), feats.end(),
                   "par[web1t]:mid:VB:NN:t=JJ") == 1);
}

TEST_CASE("every group disabled yields an empty vector") {
  Sentence s = hold_sentence();
  FeatureGroups none;
  none.baseline = false;
  FeatureExtractor fx(none, FeatureResources{});
  std::vector<std::string> feats;
  fx.arc_features(s, 2, 5, feats);
  fx.sibling_features(s, 2, 3, 5, feats);
  CHECK(feats.empty());
}

TEST_CASE("missing resources for an enabled group fail fast") {
  FeatureGroups groups;
  groups.surface_affinity = true;
  CHECK_THROWS_AS(FeatureExtractor(groups, FeatureResources{}), ConfigError);
  FeatureGroups para;
  para.syntactic_paraphrase = true;
  CHECK_THROWS_AS(FeatureExtractor(para, FeatureResources{}), ConfigError);
}

TEST_CASE("feature groups are additive") {
  Sentence s = hold_sentence();
  UnigramTagger tagger = demo_tagger();
  CountTable surface("web1t", "h");
  surface.add(pair_table_key("contig", "hold", "hearing"), 40);
  surface.add(triple_table_key("hold", "public", "hearing"), 7);
  CountTable syntactic("syntactic", "h");
  syntactic.add("syn:ww:hold hearing", 15000);
  ParaphraseHarvest h;
  h.queries["hold hearing"].add(Slot::Mid, "public", 9);
  ParaphraseLists lists = finalize_paraphrase(h, "web1t", "cfg");

  FeatureResources res;
  res.surface_table = &surface;
  res.surface_paraphrase = &lists;
  res.syntactic_table = &syntactic;
  res.syntactic_paraphrase = &lists;
  res.tagger = &tagger;

  auto feats_for = [&](const FeatureGroups& groups) {
    FeatureExtractor fx(groups, res);
    std::vector<std::string> feats;
    fx.arc_features(s, 2, 5, feats);
    fx.sibling_features(s, 2, 4, 5, feats);
    std::sort(feats.begin(), feats.end());
    return feats;
  };

  FeatureGroups a;  // baseline only
  FeatureGroups b;
  b.baseline = false;
  b.surface_affinity = true;
  b.syntactic_first_order = true;
  FeatureGroups both;
  both.surface_affinity = true;
  both.syntactic_first_order = true;

  auto fa = feats_for(a);
  auto fb = feats_for(b);
  auto fboth = feats_for(both);
  std::vector<std::string> merged;
  std::merge(fa.begin(), fa.end(), fb.begin(), fb.end(),
             std::back_inserter(merged));
  CHECK(fboth == merged);
}

TEST_CASE("sibling corpus features skip null and root cases") {
  Sentence s = hold_sentence();
  UnigramTagger tagger = demo_tagger();
  CountTable surface("web1t", "h");
  surface.add(pair_table_key("contig", "public", "hearing"), 64);
  surface.add(triple_table_key("hold", "public", "hearing"), 7);
  ParaphraseLists lists;
  lists.corpus_id = "web1t";
  FeatureGroups groups;
  groups.baseline = false;
  groups.surface_second_order = true;
  FeatureResources res;
  res.surface_table = &surface;
  res.surface_paraphrase = &lists;
  res.tagger = &tagger;
  FeatureExtractor fx(groups, res);

  std::vector<std::string> feats;
  fx.sibling_features(s, 2, 0, 5, feats);  // null first modifier
  CHECK(feats.empty());
  fx.sibling_features(s, 0, 3, 5, feats);  // root parent
  CHECK(feats.empty());

  fx.sibling_features(s, 2, 4, 5, feats);  // hold with public, hearing
  // Triple count 7 -> bucket 0; sibling pair 64 -> bucket 5 (one exact + two
  // cumulative).
  CHECK(count_prefixed(feats, "s2t[web1t]:VB:JJ:NN:R:1:b=0") == 1);
  CHECK(count_prefixed(feats, "s2s[web1t]:JJ:NN:R:1:b=5") == 1);
  CHECK(count_containing(feats, "s2s[web1t]:JJ:NN:R:1:b>=") == 2);
}

TEST_CASE("syntactic word and POS second-order variants stay distinct") {
  Sentence s = hold_sentence();
  CountTable syntactic("syntactic", "h");
  syntactic.add(syn2_word_table_key(ParentSide::First,
                                    {"hold", "public", "hearing"}),
                40000);
  syntactic.add(syn2_pos_table_key(ParentSide::First, {"VB", "JJ", "NN"}),
                90000);
  FeatureGroups groups;
  groups.baseline = false;
  groups.syntactic_second_order = true;
  FeatureResources res;
  res.syntactic_table = &syntactic;
  FeatureExtractor fx(groups, res);
  std::vector<std::string> feats;
  fx.sibling_features(s, 2, 4, 5, feats);
  CHECK(count_prefixed(feats, "y2tw[syntactic]:VB:JJ:NN:R:1:b=15") == 1);
  CHECK(count_prefixed(feats, "y2tp[syntactic]:VB:JJ:NN:R:1:b=15") == 1);
}

TEST_CASE("score tables are linear in the weights") {
  Sentence s = hold_sentence();
  FeatureExtractor fx(FeatureGroups{}, FeatureResources{});
  FeatureAlphabet alphabet;
  std::vector<double> zero;
  ScoreTables t0 = score_structures(s, fx, alphabet, zero, 2, true);
  for (double v : t0.arc) CHECK(v == 0.0);
  for (double v : t0.sib) CHECK(v == 0.0);

  // Perturbing one feature weight changes exactly the parts containing it.
  oracle::Rng rng(71);
  int idx = static_cast<int>(rng.below(alphabet.size()));
  std::vector<double> w(alphabet.size(), 0.0);
  w[idx] = 1.0;
  ScoreTables t1 = score_structures(s, fx, alphabet, w, 2, false);
  const std::string& feature = alphabet.feature(idx);
  std::vector<std::string> feats;
  for (int h = 0; h <= s.size(); ++h) {
    for (int a = 1; a <= s.size(); ++a) {
      if (h == a) continue;
      feats.clear();
      fx.arc_features(s, h, a, feats);
      double expected =
          static_cast<double>(std::count(feats.begin(), feats.end(), feature));
      CHECK(t1.arc_score(h, a) == doctest::Approx(expected));
    }
  }
}

TEST_CASE("tree features equal the sum of factorized part features") {
  Sentence s = hold_sentence();
  FeatureExtractor fx(FeatureGroups{}, FeatureResources{});
  FeatureAlphabet alphabet;
  std::vector<int> heads = {2, 0, 5, 5, 2};
  FeatureVector vec = tree_features(s, heads, fx, alphabet, 2, true);
  std::vector<double> w(alphabet.size());
  oracle::Rng rng(73);
  for (auto& x : w)
    x = static_cast<double>(static_cast<int>(rng.below(21)) - 10);
  ScoreTables tables = score_structures(s, fx, alphabet, w, 2, false);
  CHECK(vec.dot(w) == doctest::Approx(tree_score(tables, heads, 2)));
  CHECK(vec.dot(w) ==
        doctest::Approx(oracle::tree_score_oracle(tables, heads, true)));
}
