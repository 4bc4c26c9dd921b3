#pragma once

#include <cstdint>
#include <vector>

#include "ngdep/conll.hpp"
#include "ngdep/decoder.hpp"
#include "ngdep/features.hpp"
#include "ngdep/model.hpp"
#include "ngdep/punct.hpp"

namespace ngdep {

// True when every arc (h, a) covers only descendants of h.
bool is_projective(const std::vector<int>& heads);

// Repeatedly lifts the dependent of the shortest non-projective arc to its
// grandparent until the tree is projective. Arcs out of the unique root
// child are never non-projective, so single-rootedness is preserved.
std::vector<int> projectivize(std::vector<int> heads);

// Hamming attachment loss; with `exclude_punct`, punctuation tokens are not
// counted.
int attachment_loss(const Sentence& s, const std::vector<int>& predicted,
                    const std::vector<int>& target, bool exclude_punct,
                    const PunctPolicy& punct);

// Minimum-norm solution of the k-constraint margin QP via Hildreth's
// iterative procedure: maximize over alpha >= 0 with constraint directions
// `dirs` and required margins `margins`.
std::vector<double> hildreth(const std::vector<FeatureVector>& dirs,
                             const std::vector<double>& margins,
                             double tolerance = 1e-8, int max_iter = 10000);

// One k-best MIRA step for a single instance: decode, build margin
// constraints against the (projectivized) target, solve the QP, and return
// the weighted update direction. Depends only on this instance and the
// current weights.
FeatureVector mira_update_direction(const Sentence& s,
                                    const std::vector<int>& target_heads,
                                    const FeatureExtractor& fx,
                                    FeatureAlphabet& alphabet,
                                    const std::vector<double>& weights,
                                    const TrainConfig& config,
                                    const PunctPolicy& punct,
                                    bool grow_alphabet);

// Averaged k-best MIRA over `iters` passes. The alphabet grows during the
// first pass only. `meta_json` is stored verbatim in the model.
Model train_model(const std::vector<Sentence>& train,
                  const FeatureGroups& groups, FeatureResources resources,
                  const TrainConfig& config, const PunctPolicy& punct,
                  const std::string& meta_json, bool verbose = false);

// Decodes one sentence with the model's averaged weights.
DependencyTree parse_sentence(const Sentence& s, const Model& model,
                              const FeatureResources& resources);
std::vector<DependencyTree> parse_sentences(
    const std::vector<Sentence>& sentences, const Model& model,
    FeatureResources resources);

}  // namespace ngdep
