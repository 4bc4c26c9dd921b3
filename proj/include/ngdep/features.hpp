#pragma once

#include <string>
#include <vector>

#include "ngdep/alphabet.hpp"
#include "ngdep/conll.hpp"
#include "ngdep/count_store.hpp"
#include "ngdep/paraphrase.hpp"
#include "ngdep/query.hpp"
#include "ngdep/surface_scan.hpp"
#include "ngdep/tagger.hpp"

namespace ngdep {

struct FeatureGroups {
  bool baseline = true;
  bool surface_affinity = false;
  bool surface_paraphrase = false;
  bool surface_second_order = false;
  bool syntactic_first_order = false;
  bool syntactic_second_order = false;
  bool syntactic_paraphrase = false;

  bool any_surface() const {
    return surface_affinity || surface_paraphrase || surface_second_order;
  }
  bool any_syntactic() const {
    return syntactic_first_order || syntactic_second_order ||
           syntactic_paraphrase;
  }
};

// Read-only lookup resources backing the enabled count-feature groups.
struct FeatureResources {
  const CountTable* surface_table = nullptr;
  const ParaphraseLists* surface_paraphrase = nullptr;
  const CountTable* syntactic_table = nullptr;
  const ParaphraseLists* syntactic_paraphrase = nullptr;
  const UnigramTagger* tagger = nullptr;
  int bucket_divisor = 5;
};

// Emits feature strings for first-order arcs and second-order sibling
// parts. Pure given (sentence, structure, resources): identical inputs
// always produce identical strings in identical order.
class FeatureExtractor {
 public:
  // Throws ConfigError when an enabled group lacks its resources.
  FeatureExtractor(const FeatureGroups& groups, const FeatureResources& res);

  // head in [0, n] (0 = root), arg in [1, n].
  void arc_features(const Sentence& s, int head, int arg,
                    std::vector<std::string>& out) const;

  // prev == 0 marks the first modifier on its side; no corpus-count
  // features are emitted for it or for a root parent.
  void sibling_features(const Sentence& s, int parent, int prev, int mod,
                        std::vector<std::string>& out) const;

  const FeatureGroups& groups() const { return groups_; }

 private:
  void baseline_arc(const Sentence& s, int head, int arg,
                    std::vector<std::string>& out) const;
  void surface_arc(const Sentence& s, int head, int arg,
                   std::vector<std::string>& out) const;
  void syntactic_arc(const Sentence& s, int head, int arg,
                     std::vector<std::string>& out) const;
  void bucket_family(const std::string& base, std::uint64_t count,
                     std::vector<std::string>& out) const;
  void paraphrase_slots(const ParaphraseLists& lists, const std::string& key,
                        const std::string& group_tag, const std::string& ctx,
                        bool tagger_tags, std::vector<std::string>& out) const;

  FeatureGroups groups_;
  FeatureResources res_;
  std::string surface_tag_;        // e.g. "[web1t]"
  std::string surface_para_tag_;   // from the paraphrase file's corpus id
  std::string syntactic_tag_;
  std::string syntactic_para_tag_;
};

// Baseline-only template emission; handy for tests.
std::vector<std::string> baseline_arc_features(const Sentence& s, int head,
                                               int arg);

// Converts emitted strings to a sparse vector. With `add` the alphabet
// grows; otherwise unseen features are dropped (score 0 at test time).
FeatureVector index_features(const std::vector<std::string>& features,
                             FeatureAlphabet& alphabet, bool add);

// Dense score tables over all candidate structures of one sentence.
struct ScoreTables {
  int n = 0;
  std::vector<double> arc;  // (n+1)*(n+1), [head][arg]
  std::vector<double> sib;  // (n+1)*(n+1)*(n+1), [parent][prev][mod]

  double arc_score(int head, int arg) const {
    return arc[static_cast<std::size_t>(head) * (n + 1) + arg];
  }
  double sib_score(int parent, int prev, int mod) const {
    return sib[(static_cast<std::size_t>(parent) * (n + 1) + prev) * (n + 1) +
               mod];
  }
};

// order 1 skips sibling scores entirely.
ScoreTables score_structures(const Sentence& s, const FeatureExtractor& fx,
                             FeatureAlphabet& alphabet,
                             const std::vector<double>& weights, int order,
                             bool grow_alphabet);

// The adjacent-sibling chains of a tree: (parent, prev, mod) triples with
// prev = 0 for each side's first modifier, inner to outer.
std::vector<std::array<int, 3>> sibling_chains(const std::vector<int>& heads);

// Full factorized feature vector of a tree (arcs + sibling chains for
// order 2).
FeatureVector tree_features(const Sentence& s, const std::vector<int>& heads,
                            const FeatureExtractor& fx,
                            FeatureAlphabet& alphabet, int order,
                            bool grow_alphabet);

// Factorized score of a tree under the given tables.
double tree_score(const ScoreTables& tables, const std::vector<int>& heads,
                  int order);

}  // namespace ngdep
