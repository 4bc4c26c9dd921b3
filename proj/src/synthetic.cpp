#include "ngdep/synthetic.hpp"

#include <map>

namespace ngdep {

namespace {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

Token make_token(int index, std::string form, std::string fpos,
                 int gold_head) {
  Token t;
  t.index = index;
  t.form = std::move(form);
  t.cpos = fpos.substr(0, 2);
  t.fpos = std::move(fpos);
  t.gold_head = gold_head;
  return t;
}

Sentence build_sentence(const std::vector<std::string>& forms,
                        const std::vector<std::string>& tags,
                        const std::vector<int>& heads) {
  Sentence s;
  for (std::size_t i = 0; i < forms.size(); ++i)
    s.tokens.push_back(
        make_token(static_cast<int>(i) + 1, forms[i], tags[i], heads[i]));
  return s;
}

std::string numbered(char prefix, std::uint64_t i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%c%03u", prefix,
                static_cast<unsigned>(i));
  return buf;
}

}  // namespace

std::vector<Sentence> make_separable_treebank(int n_sentences,
                                              std::uint64_t seed) {
  const std::vector<std::string> nn = {"car",   "dog",   "idea",  "report",
                                       "window", "door",  "tree",  "house",
                                       "paper", "clock"};
  const std::vector<std::string> vbd = {"saw",   "held", "made",
                                        "found", "kept", "moved"};
  const std::vector<std::string> dt = {"the", "a", "this"};
  const std::vector<std::string> jj = {"big", "red", "old", "new"};
  const std::vector<std::string> in = {"in", "on", "near"};
  const std::vector<std::string> rb = {"quickly", "slowly", "today"};

  Rng rng(seed);
  auto pick = [&](const std::vector<std::string>& v) {
    return v[rng.below(v.size())];
  };

  std::vector<Sentence> out;
  for (int i = 0; i < n_sentences; ++i) {
    switch (i % 6) {
      case 0:
        out.push_back(build_sentence(
            {pick(dt), pick(nn), pick(vbd), pick(dt), pick(nn)},
            {"DT", "NN", "VBD", "DT", "NN"}, {2, 3, 0, 5, 3}));
        break;
      case 1:
        out.push_back(build_sentence({pick(nn), pick(vbd), pick(jj), pick(nn)},
                                     {"NN", "VBD", "JJ", "NN"}, {2, 0, 4, 2}));
        break;
      case 2:
        out.push_back(build_sentence({pick(dt), pick(jj), pick(nn), pick(vbd)},
                                     {"DT", "JJ", "NN", "VBD"}, {3, 3, 4, 0}));
        break;
      case 3:
        out.push_back(build_sentence(
            {pick(nn), pick(vbd), pick(in), pick(dt), pick(nn)},
            {"NN", "VBD", "IN", "DT", "NN"}, {2, 0, 2, 5, 3}));
        break;
      case 4:
        out.push_back(build_sentence({pick(dt), pick(nn), pick(vbd), pick(rb)},
                                     {"DT", "NN", "VBD", "RB"}, {2, 3, 0, 3}));
        break;
      default:
        out.push_back(build_sentence(
            {pick(nn), pick(vbd), pick(dt), pick(jj), pick(nn), "."},
            {"NN", "VBD", "DT", "JJ", "NN", "."}, {2, 0, 5, 5, 2, 2}));
        break;
    }
  }
  return out;
}

AmbiguousWorld make_ambiguous_world(int n_train, int n_heldout,
                                    std::uint64_t seed) {
  // Index ranges [0, 40) are training vocabulary, [40, 60) held-out only.
  constexpr int kTrainVocab = 40;
  constexpr int kHeldVocab = 20;
  Rng rng(seed);

  // Fixed lexical attachment preference per modifier / preposition word.
  auto prefers_verb = [](std::uint64_t word_index) {
    return word_index % 2 == 0;
  };

  AmbiguousWorld world;
  std::map<std::string, std::uint64_t> pair_counts;
  std::map<std::string, std::uint64_t> fragment_counts;

  auto gen_sentence = [&](bool heldout) {
    const std::uint64_t lo = heldout ? kTrainVocab : 0;
    const std::uint64_t range = heldout ? kHeldVocab : kTrainVocab;
    auto word = [&](char prefix) {
      return numbered(prefix, lo + rng.below(range));
    };
    const std::string subj = word('s');
    const std::string verb = word('v');
    const std::string obj = word('o');
    std::uint64_t mod_index = lo + rng.below(range);
    const bool use_pp = rng.below(2) == 1;
    const bool to_verb = prefers_verb(mod_index);

    std::vector<std::string> forms, tags;
    std::vector<int> heads;
    std::string attach_host;  // the word the ambiguous token attaches to
    std::string mod_form;
    if (use_pp) {
      mod_form = numbered('p', mod_index);
      const std::string obj2 = word('q');
      forms = {subj, verb, obj, mod_form, obj2};
      tags = {"NN", "VB", "NN", "IN", "NN"};
      heads = {2, 0, 2, to_verb ? 2 : 3, 4};
      attach_host = to_verb ? verb : obj;
    } else {
      mod_form = numbered('m', mod_index);
      forms = {subj, verb, obj, mod_form};
      tags = {"NN", "VB", "NN", "RB"};
      heads = {2, 0, 2, to_verb ? 2 : 3};
      attach_host = to_verb ? verb : obj;
    }

    // Corpus evidence for the gold attachment: the host and the modifier
    // co-occur; counts vary so several buckets appear.
    std::uint64_t c = 20000 + (rng.next() % 60000);
    auto& pair = pair_counts[attach_host + " " + mod_form];
    if (pair == 0) pair = c;
    // Unambiguous subject/object evidence as well.
    auto& sv = pair_counts[subj + " " + verb];
    if (sv == 0) sv = 20000 + (rng.next() % 60000);

    // Matching dependency fragment: host/tag with the modifier attached.
    std::string frag;
    if (use_pp) {
      frag = attach_host + "\t" + attach_host + "/" +
             (to_verb ? "VB" : "NN") + "/ROOT/0 " + mod_form +
             "/IN/prep/1\t";
    } else {
      frag = attach_host + "\t" + attach_host + "/" +
             (to_verb ? "VB" : "NN") + "/ROOT/0 " + mod_form +
             "/RB/advmod/1\t";
    }
    auto& fc = fragment_counts[frag];
    if (fc == 0) fc = 20000 + (rng.next() % 60000);

    return build_sentence(forms, tags, heads);
  };

  for (int i = 0; i < n_train; ++i) world.train.push_back(gen_sentence(false));
  for (int i = 0; i < n_heldout; ++i)
    world.heldout.push_back(gen_sentence(true));

  for (const auto& [pair, count] : pair_counts)
    world.web1t_lines.push_back(pair + "\t" + std::to_string(count));
  // Filler entries that match no query.
  for (int i = 0; i < 50; ++i)
    world.web1t_lines.push_back(numbered('x', static_cast<std::uint64_t>(i)) +
                                " " + numbered('x', rng.below(50)) + "\t" +
                                std::to_string(1 + rng.below(100)));
  for (const auto& [frag, count] : fragment_counts)
    world.syngram_lines.push_back(frag + std::to_string(count) + "\t2000," +
                                  std::to_string(count));
  return world;
}

}  // namespace ngdep
