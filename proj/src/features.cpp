#include "ngdep/features.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "ngdep/errors.hpp"

namespace ngdep {

namespace {

constexpr const char* kRootPos = "<ROOT>";
constexpr const char* kNonePos = "<none>";

std::string pos_at(const Sentence& s, int i) {
  if (i == 0) return kRootPos;
  if (i < 0) return "<BOS>";
  if (i > s.size()) return "<EOS>";
  return s.tokens[i - 1].fpos;
}

}  // namespace

FeatureExtractor::FeatureExtractor(const FeatureGroups& groups,
                                   const FeatureResources& res)
    : groups_(groups), res_(res) {
  auto require = [](const void* p, const char* what, const char* group) {
    if (!p)
      throw ConfigError(std::string("feature group '") + group +
                        "' is enabled but no " + what + " was provided");
  };
  if (groups_.surface_affinity)
    require(res_.surface_table, "surface count table", "surface-affinity");
  if (groups_.surface_paraphrase) {
    require(res_.surface_paraphrase, "surface paraphrase file",
            "surface-paraphrase");
    require(res_.tagger, "unigram tagger", "surface-paraphrase");
  }
  if (groups_.surface_second_order) {
    require(res_.surface_table, "surface count table",
            "surface-second-order");
    require(res_.surface_paraphrase, "surface paraphrase file",
            "surface-second-order");
    require(res_.tagger, "unigram tagger", "surface-second-order");
  }
  if (groups_.syntactic_first_order)
    require(res_.syntactic_table, "syntactic count table",
            "syntactic-first-order");
  if (groups_.syntactic_second_order)
    require(res_.syntactic_table, "syntactic count table",
            "syntactic-second-order");
  if (groups_.syntactic_paraphrase)
    require(res_.syntactic_paraphrase, "syntactic paraphrase file",
            "syntactic-paraphrase");
  if (res_.surface_table)
    surface_tag_ = "[" + res_.surface_table->corpus_id() + "]";
  if (res_.surface_paraphrase)
    surface_para_tag_ = "[" + res_.surface_paraphrase->corpus_id + "]";
  if (res_.syntactic_table)
    syntactic_tag_ = "[" + res_.syntactic_table->corpus_id() + "]";
  if (res_.syntactic_paraphrase)
    syntactic_para_tag_ = "[" + res_.syntactic_paraphrase->corpus_id + "]";
}

void FeatureExtractor::bucket_family(const std::string& base,
                                     std::uint64_t count,
                                     std::vector<std::string>& out) const {
  auto bucket = bucket_label(count, res_.bucket_divisor);
  if (!bucket) return;  // absent counts emit nothing, not bucket 0
  out.push_back(base + ":b=" + std::to_string(*bucket));
  for (int b : cumulative_buckets(*bucket, res_.bucket_divisor))
    out.push_back(base + ":b>=" + std::to_string(b));
}

void FeatureExtractor::paraphrase_slots(const ParaphraseLists& lists,
                                        const std::string& key,
                                        const std::string& group_tag,
                                        const std::string& ctx,
                                        bool tagger_tags,
                                        std::vector<std::string>& out) const {
  static constexpr Slot kWordSlots[3] = {Slot::Before, Slot::Mid, Slot::After};
  for (Slot slot : kWordSlots) {
    const auto* ranked = lists.slot(key, slot);
    if (!ranked) continue;
    std::set<std::string> seen_tags;
    for (const RankedWord& rw : *ranked) {
      out.push_back(group_tag + ":" + slot_id(slot) + ":" + ctx +
                    ":w=" + rw.word);
      if (tagger_tags) {
        const std::string& tag = res_.tagger->tag(rw.word);
        if (seen_tags.insert(tag).second)
          out.push_back(group_tag + ":" + slot_id(slot) + ":" + ctx +
                        ":t=" + tag);
      }
    }
  }
  if (!tagger_tags) {
    // POS slots carry corpus-side tags directly.
    static constexpr Slot kPosSlots[3] = {Slot::PosBefore, Slot::PosMid,
                                          Slot::PosAfter};
    for (Slot slot : kPosSlots) {
      const auto* ranked = lists.slot(key, slot);
      if (!ranked) continue;
      for (const RankedWord& rw : *ranked)
        out.push_back(group_tag + ":" + slot_id(slot) + ":" + ctx +
                      ":p=" + rw.word);
    }
  }
}

void FeatureExtractor::arc_features(const Sentence& s, int head, int arg,
                                    std::vector<std::string>& out) const {
  if (groups_.baseline) baseline_arc(s, head, arg, out);
  if (head == 0) return;  // the root has no surface form to query
  if (groups_.any_surface()) surface_arc(s, head, arg, out);
  if (groups_.any_syntactic()) syntactic_arc(s, head, arg, out);
}

void FeatureExtractor::baseline_arc(const Sentence& s, int head, int arg,
                                    std::vector<std::string>& out) const {
  const bool root = head == 0;
  const std::string hp = pos_at(s, head);
  const std::string& ap = s.tokens[arg - 1].fpos;
  const std::string& aw = s.tokens[arg - 1].form;
  const std::string hw = root ? "" : s.tokens[head - 1].form;
  const int dist = head < arg ? arg - head : head - arg;
  std::string suffix = ":";
  suffix += head < arg ? 'L' : 'R';
  suffix += ':';
  suffix += distance_bin(dist);

  auto emit = [&](std::string body) { out.push_back(body + suffix); };
  // Unigram and bigram templates; word templates for the head are dropped
  // for the root.
  if (!root) emit("b:hw=" + hw);
  emit("b:hp=" + hp);
  if (!root) emit("b:hwp=" + hw + "_" + hp);
  emit("b:aw=" + aw);
  emit("b:ap=" + ap);
  emit("b:awp=" + aw + "_" + ap);
  if (!root) {
    emit("b:hwp,awp=" + hw + "_" + hp + "|" + aw + "_" + ap);
    emit("b:hwp,aw=" + hw + "_" + hp + "|" + aw);
    emit("b:hw,awp=" + hw + "|" + aw + "_" + ap);
    emit("b:hwp,ap=" + hw + "_" + hp + "|" + ap);
    emit("b:hw,aw=" + hw + "|" + aw);
  }
  emit("b:hp,awp=" + hp + "|" + aw + "_" + ap);
  emit("b:hp,ap=" + hp + "|" + ap);
  // POS of every token strictly between head and argument.
  int lo = std::min(head, arg), hi = std::max(head, arg);
  for (int b = lo + 1; b < hi; ++b)
    emit("b:btw=" + hp + "_" + pos_at(s, b) + "_" + ap);
  // Surrounding POS 4-grams.
  emit("b:ctx1=" + hp + "_" + pos_at(s, head + 1) + "_" +
       pos_at(s, arg - 1) + "_" + ap);
  emit("b:ctx2=" + pos_at(s, head - 1) + "_" + hp + "_" +
       pos_at(s, arg - 1) + "_" + ap);
  emit("b:ctx3=" + hp + "_" + pos_at(s, head + 1) + "_" + ap + "_" +
       pos_at(s, arg + 1));
  emit("b:ctx4=" + pos_at(s, head - 1) + "_" + hp + "_" + ap + "_" +
       pos_at(s, arg + 1));
}

void FeatureExtractor::surface_arc(const Sentence& s, int head, int arg,
                                   std::vector<std::string>& out) const {
  const Token& ht = s.tokens[head - 1];
  const Token& at = s.tokens[arg - 1];
  const char d = head < arg ? 'L' : 'R';
  const int dist = head < arg ? arg - head : head - arg;
  const std::string ctx = ht.fpos + ":" + at.fpos + ":" + d + ":" +
                          distance_bin(dist);
  const std::string& q1 = head < arg ? ht.form : at.form;
  const std::string& q2 = head < arg ? at.form : ht.form;

  if (groups_.surface_affinity) {
    std::uint64_t total = 0;
    for (const char* pattern : kPairPatterns)
      total += res_.surface_table->get(pair_table_key(pattern, q1, q2));
    bucket_family("aff" + surface_tag_ + ":" + ctx, total, out);
  }
  if (groups_.surface_paraphrase) {
    paraphrase_slots(*res_.surface_paraphrase,
                     surface_paraphrase_key(q1, q2),
                     "par" + surface_para_tag_,
                     ht.fpos + ":" + at.fpos, /*tagger_tags=*/true, out);
  }
}

void FeatureExtractor::syntactic_arc(const Sentence& s, int head, int arg,
                                     std::vector<std::string>& out) const {
  const Token& ht = s.tokens[head - 1];
  const Token& at = s.tokens[arg - 1];
  const char d = head < arg ? 'L' : 'R';
  const int dist = head < arg ? arg - head : head - arg;
  const std::string ctx = ht.fpos + ":" + at.fpos + ":" + d + ":" +
                          distance_bin(dist);

  if (groups_.syntactic_first_order) {
    ArcCandidate arc;
    arc.head_form = ht.form;
    arc.head_fpos = ht.fpos;
    arc.arg_form = at.form;
    arc.arg_fpos = at.fpos;
    arc.head_position = head;
    arc.arg_position = arg;
    arc.direction = head < arg ? Direction::HeadLeft : Direction::HeadRight;
    arc.surface_distance = dist;
    for (const SyntacticLookupKey& key : syntactic_lookup_keys(arc)) {
      std::uint64_t count = res_.syntactic_table->get(key.table_key());
      bucket_family("syn" + syntactic_tag_ + ":" + syn_key_kind_id(key.kind) +
                        ":" + ctx,
                    count, out);
    }
  }
  if (groups_.syntactic_paraphrase) {
    paraphrase_slots(*res_.syntactic_paraphrase,
                     syn_paraphrase_key(ht.form, at.form),
                     "synpar" + syntactic_para_tag_,
                     ht.fpos + ":" + at.fpos, /*tagger_tags=*/false, out);
  }
}

void FeatureExtractor::sibling_features(const Sentence& s, int parent,
                                        int prev, int mod,
                                        std::vector<std::string>& out) const {
  const bool root = parent == 0;
  const bool first = prev == 0;
  const std::string pp = pos_at(s, parent);
  const std::string c1p = first ? kNonePos : s.tokens[prev - 1].fpos;
  const std::string c1w = first ? kNonePos : s.tokens[prev - 1].form;
  const std::string& c2p = s.tokens[mod - 1].fpos;
  const std::string& c2w = s.tokens[mod - 1].form;
  const char side = parent < mod ? 'R' : 'L';
  const int cdist = first ? std::abs(parent - mod) : std::abs(prev - mod);
  std::string suffix = ":";
  suffix += side;
  suffix += ':';
  suffix += distance_bin(cdist);

  if (groups_.baseline) {
    auto emit = [&](std::string body) { out.push_back(body + suffix); };
    emit("b2:pp,c1p,c2p=" + pp + "_" + c1p + "_" + c2p);
    emit("b2:c1p,c2p=" + c1p + "_" + c2p);
    emit("b2:c1w,c2w=" + c1w + "_" + c2w);
    emit("b2:c1p,c2w=" + c1p + "_" + c2w);
    emit("b2:c1w,c2p=" + c1w + "_" + c2p);
  }
  // Corpus counts exist only for real sibling pairs under a real parent.
  if (root || first) return;

  const std::string ctx3 = pp + ":" + c1p + ":" + c2p + suffix;
  const std::string ctx2 = c1p + ":" + c2p + suffix;
  // Linear order of the pair and of the triple.
  const std::string& s1w = prev < mod ? c1w : c2w;
  const std::string& s2w = prev < mod ? c2w : c1w;

  if (groups_.surface_second_order) {
    std::array<int, 3> pos = {parent, prev, mod};
    std::sort(pos.begin(), pos.end());
    std::string tkey = triple_table_key(s.tokens[pos[0] - 1].form,
                                        s.tokens[pos[1] - 1].form,
                                        s.tokens[pos[2] - 1].form);
    bucket_family("s2t" + surface_tag_ + ":" + ctx3,
                  res_.surface_table->get(tkey), out);
    std::uint64_t pair_total = 0;
    for (const char* pattern : kPairPatterns)
      pair_total += res_.surface_table->get(pair_table_key(pattern, s1w, s2w));
    bucket_family("s2s" + surface_tag_ + ":" + ctx2, pair_total, out);
    paraphrase_slots(*res_.surface_paraphrase,
                     surface_paraphrase_key(s1w, s2w),
                     "s2par" + surface_para_tag_, c1p + ":" + c2p,
                     /*tagger_tags=*/true, out);
  }
  if (groups_.syntactic_second_order) {
    ParentSide pside =
        parent < std::min(prev, mod) ? ParentSide::First : ParentSide::Last;
    TripleQuery tq;
    tq.parent_form = s.tokens[parent - 1].form;
    tq.parent_fpos = s.tokens[parent - 1].fpos;
    tq.c1_form = c1w;
    tq.c1_fpos = c1p;
    tq.c2_form = c2w;
    tq.c2_fpos = c2p;
    tq.parent_position = parent;
    tq.c1_position = prev;
    tq.c2_position = mod;
    bucket_family(
        "y2tw" + syntactic_tag_ + ":" + ctx3,
        res_.syntactic_table->get(syn2_word_table_key(pside,
                                                      tq.surface_query())),
        out);
    bucket_family(
        "y2tp" + syntactic_tag_ + ":" + ctx3,
        res_.syntactic_table->get(syn2_pos_table_key(pside, tq.pos_query())),
        out);
    SiblingQuery sq;
    sq.c1_form = c1w;
    sq.c1_fpos = c1p;
    sq.c2_form = c2w;
    sq.c2_fpos = c2p;
    sq.c1_position = prev;
    sq.c2_position = mod;
    bucket_family(
        "y2sw" + syntactic_tag_ + ":" + ctx2,
        res_.syntactic_table->get(sib2_word_table_key(sq.surface_query())),
        out);
    bucket_family(
        "y2sp" + syntactic_tag_ + ":" + ctx2,
        res_.syntactic_table->get(sib2_pos_table_key(sq.pos_query())), out);
  }
}

std::vector<std::string> baseline_arc_features(const Sentence& s, int head,
                                               int arg) {
  FeatureExtractor fx(FeatureGroups{}, FeatureResources{});
  std::vector<std::string> out;
  fx.arc_features(s, head, arg, out);
  return out;
}

FeatureVector index_features(const std::vector<std::string>& features,
                             FeatureAlphabet& alphabet, bool add) {
  FeatureVector vec;
  for (const std::string& f : features)
    vec.add(add ? alphabet.lookup_or_add(f) : alphabet.lookup(f));
  return vec;
}

ScoreTables score_structures(const Sentence& s, const FeatureExtractor& fx,
                             FeatureAlphabet& alphabet,
                             const std::vector<double>& weights, int order,
                             bool grow_alphabet) {
  const int n = s.size();
  ScoreTables tables;
  tables.n = n;
  tables.arc.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
  if (order >= 2)
    tables.sib.assign(
        static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1), 0.0);

  std::vector<std::string> feats;
  auto score_of = [&](auto&& emit) {
    feats.clear();
    emit(feats);
    double sum = 0;
    for (const std::string& f : feats) {
      int idx = grow_alphabet ? alphabet.lookup_or_add(f) : alphabet.lookup(f);
      if (idx >= 0 && idx < static_cast<int>(weights.size()))
        sum += weights[idx];
    }
    return sum;
  };

  for (int h = 0; h <= n; ++h) {
    for (int a = 1; a <= n; ++a) {
      if (h == a) continue;
      tables.arc[static_cast<std::size_t>(h) * (n + 1) + a] = score_of(
          [&](std::vector<std::string>& f) { fx.arc_features(s, h, a, f); });
    }
  }
  if (order >= 2) {
    for (int p = 0; p <= n; ++p) {
      for (int m = 1; m <= n; ++m) {
        if (m == p) continue;
        // prev = 0 (first modifier) or strictly between p and m.
        auto put = [&](int prev) {
          tables.sib[(static_cast<std::size_t>(p) * (n + 1) + prev) *
                         (n + 1) +
                     m] = score_of([&](std::vector<std::string>& f) {
            fx.sibling_features(s, p, prev, m, f);
          });
        };
        put(0);
        if (p == 0) continue;  // single-root: the root takes one modifier
        int lo = std::min(p, m), hi = std::max(p, m);
        for (int prev = lo + 1; prev < hi; ++prev) put(prev);
      }
    }
  }
  return tables;
}

std::vector<std::array<int, 3>> sibling_chains(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  std::vector<std::vector<int>> children(n + 1);
  for (int a = 1; a <= n; ++a) children[heads[a - 1]].push_back(a);
  std::vector<std::array<int, 3>> chains;
  for (int p = 0; p <= n; ++p) {
    std::vector<int> left, right;
    for (int c : children[p]) {
      if (c < p)
        left.push_back(c);
      else
        right.push_back(c);
    }
    std::sort(left.begin(), left.end(), std::greater<int>());  // inner first
    std::sort(right.begin(), right.end());
    int prev = 0;
    for (int c : left) {
      chains.push_back({p, prev, c});
      prev = c;
    }
    prev = 0;
    for (int c : right) {
      chains.push_back({p, prev, c});
      prev = c;
    }
  }
  return chains;
}

FeatureVector tree_features(const Sentence& s, const std::vector<int>& heads,
                            const FeatureExtractor& fx,
                            FeatureAlphabet& alphabet, int order,
                            bool grow_alphabet) {
  std::vector<std::string> feats;
  for (int a = 1; a <= static_cast<int>(heads.size()); ++a)
    fx.arc_features(s, heads[a - 1], a, feats);
  if (order >= 2)
    for (const auto& [p, prev, mod] : sibling_chains(heads))
      fx.sibling_features(s, p, prev, mod, feats);
  return index_features(feats, alphabet, grow_alphabet);
}

double tree_score(const ScoreTables& tables, const std::vector<int>& heads,
                  int order) {
  double sum = 0;
  for (int a = 1; a <= static_cast<int>(heads.size()); ++a)
    sum += tables.arc_score(heads[a - 1], a);
  if (order >= 2)
    for (const auto& [p, prev, mod] : sibling_chains(heads))
      sum += tables.sib_score(p, prev, mod);
  return sum;
}

}  // namespace ngdep
