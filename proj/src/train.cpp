#include "ngdep/train.hpp"

#include <algorithm>
#include <iostream>
#include <limits>

#include "ngdep/errors.hpp"

namespace ngdep {

namespace {

// Descendant bitmap per head, O(n^2).
std::vector<std::vector<bool>> descendants(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  std::vector<std::vector<bool>> desc(n + 1, std::vector<bool>(n + 1, false));
  for (int a = 1; a <= n; ++a) {
    int cur = a;
    while (cur != 0) {
      cur = heads[cur - 1];
      desc[cur][a] = true;
    }
  }
  return desc;
}

// A non-projective arc has some token strictly between its endpoints that
// is not a descendant of the head.
bool arc_projective(const std::vector<std::vector<bool>>& desc, int head,
                    int arg) {
  int lo = std::min(head, arg), hi = std::max(head, arg);
  for (int b = lo + 1; b < hi; ++b)
    if (!desc[head][b]) return false;
  return true;
}

}  // namespace

bool is_projective(const std::vector<int>& heads) {
  auto desc = descendants(heads);
  for (int a = 1; a <= static_cast<int>(heads.size()); ++a)
    if (!arc_projective(desc, heads[a - 1], a)) return false;
  return true;
}

std::vector<int> projectivize(std::vector<int> heads) {
  const int n = static_cast<int>(heads.size());
  while (true) {
    auto desc = descendants(heads);
    int best_arg = -1, best_span = n + 1;
    for (int a = 1; a <= n; ++a) {
      int h = heads[a - 1];
      if (arc_projective(desc, h, a)) continue;
      int span = std::abs(h - a);
      if (span < best_span || (span == best_span && a < best_arg)) {
        best_span = span;
        best_arg = a;
      }
    }
    if (best_arg < 0) return heads;
    heads[best_arg - 1] = heads[heads[best_arg - 1] - 1];  // lift to grandparent
  }
}

int attachment_loss(const Sentence& s, const std::vector<int>& predicted,
                    const std::vector<int>& target, bool exclude_punct,
                    const PunctPolicy& punct) {
  int loss = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (exclude_punct && punct.is_punct(s.tokens[i])) continue;
    if (predicted[i] != target[i]) ++loss;
  }
  return loss;
}

std::vector<double> hildreth(const std::vector<FeatureVector>& dirs,
                             const std::vector<double>& margins,
                             double tolerance, int max_iter) {
  const std::size_t k = dirs.size();
  std::vector<double> alpha(k, 0.0);
  if (k == 0) return alpha;
  std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j)
      gram[i][j] = gram[j][i] = dirs[i].dot(dirs[j]);

  std::vector<double> kkt = margins;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < k; ++i)
      if (kkt[i] > kkt[best]) best = i;
    if (kkt[best] < tolerance) break;
    double step;
    if (gram[best][best] <= 0.0) {
      // Degenerate direction; its constraint cannot be tightened.
      kkt[best] = -std::numeric_limits<double>::infinity();
      continue;
    }
    step = kkt[best] / gram[best][best];
    if (alpha[best] + step < 0.0) step = -alpha[best];
    if (step == 0.0) {
      kkt[best] = -std::numeric_limits<double>::infinity();
      continue;
    }
    alpha[best] += step;
    for (std::size_t j = 0; j < k; ++j) kkt[j] -= step * gram[best][j];
  }
  return alpha;
}

FeatureVector mira_update_direction(const Sentence& s,
                                    const std::vector<int>& target_heads,
                                    const FeatureExtractor& fx,
                                    FeatureAlphabet& alphabet,
                                    const std::vector<double>& weights,
                                    const TrainConfig& config,
                                    const PunctPolicy& punct,
                                    bool grow_alphabet) {
  ScoreTables tables = score_structures(s, fx, alphabet, weights,
                                        config.order, grow_alphabet);
  std::vector<ScoredTree> kbest =
      decode_second_order(tables, config.training_k);
  FeatureVector gold_vec = tree_features(s, target_heads, fx, alphabet,
                                         config.order, grow_alphabet);
  const double gold_score = tree_score(tables, target_heads, config.order);
  const bool nopunc = config.loss_type == "nopunc";

  std::vector<FeatureVector> dirs;
  std::vector<double> margins;
  for (const ScoredTree& cand : kbest) {
    int loss = attachment_loss(s, cand.tree.heads, target_heads, nopunc,
                               punct);
    double violation = static_cast<double>(loss) - (gold_score - cand.score);
    if (cand.tree.heads == target_heads) continue;  // zero loss, zero dir
    FeatureVector cand_vec = tree_features(s, cand.tree.heads, fx, alphabet,
                                           config.order, grow_alphabet);
    dirs.push_back(FeatureVector::difference(gold_vec, cand_vec));
    margins.push_back(violation);
  }
  std::vector<double> alpha = hildreth(dirs, margins);
  FeatureVector update;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    for (const auto& [idx, value] : dirs[i].entries())
      update.add(idx, alpha[i] * value);
  }
  return update;
}

Model train_model(const std::vector<Sentence>& train,
                  const FeatureGroups& groups, FeatureResources resources,
                  const TrainConfig& config, const PunctPolicy& punct,
                  const std::string& meta_json, bool verbose) {
  if (train.empty()) throw DataError("training treebank is empty");
  if (config.loss_type != "nopunc" && config.loss_type != "punc")
    throw ConfigError("unknown loss-type '" + config.loss_type + "'");
  if (config.order != 1 && config.order != 2)
    throw ConfigError("order must be 1 or 2");
  if (config.training_k < 1) throw ConfigError("training-k must be >= 1");
  if (config.iters < 0) throw ConfigError("iters must be >= 0");

  Model model;
  model.config = config;
  model.groups = groups;
  model.meta_json = meta_json;
  model.tagger = UnigramTagger::train(train);
  resources.tagger = &model.tagger;
  FeatureExtractor fx(groups, resources);

  // Projectivized single-root training targets; evaluation elsewhere keeps
  // the original gold heads.
  std::vector<std::vector<int>> targets;
  targets.reserve(train.size());
  int lifted = 0;
  for (const Sentence& s : train) {
    std::vector<int> gold = s.gold_heads();
    // Extra root children (possible under relaxed parsing) reattach to the
    // first root child so the target stays reachable for the decoder.
    int first_root = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (gold[i] != 0) continue;
      if (first_root == 0)
        first_root = static_cast<int>(i) + 1;
      else
        gold[i] = first_root;
    }
    std::vector<int> proj = projectivize(gold);
    if (proj != s.gold_heads()) ++lifted;
    targets.push_back(std::move(proj));
  }
  if (lifted > 0)
    std::cerr << "note: projectivized " << lifted
              << " non-projective gold trees for training targets\n";

  std::vector<double> wsum;
  std::uint64_t steps = 0;
  for (int iter = 1; iter <= config.iters; ++iter) {
    const bool grow = iter == 1;
    for (std::size_t i = 0; i < train.size(); ++i) {
      FeatureVector update =
          mira_update_direction(train[i], targets[i], fx, model.alphabet,
                                model.weights, config, punct, grow);
      update.scale_into(model.weights, 1.0);
      if (wsum.size() < model.weights.size())
        wsum.resize(model.weights.size(), 0.0);
      for (std::size_t w = 0; w < model.weights.size(); ++w)
        wsum[w] += model.weights[w];
      ++steps;
    }
    if (grow) model.alphabet.freeze();
    if (verbose)
      std::cerr << "iter " << iter << ": " << model.alphabet.size()
                << " features\n";
  }
  model.weights.resize(model.alphabet.size(), 0.0);
  wsum.resize(model.alphabet.size(), 0.0);
  model.averaged.assign(model.alphabet.size(), 0.0);
  if (steps > 0)
    for (std::size_t w = 0; w < wsum.size(); ++w)
      model.averaged[w] = wsum[w] / static_cast<double>(steps);
  return model;
}

DependencyTree parse_sentence(const Sentence& s, const Model& model,
                              const FeatureResources& resources) {
  FeatureExtractor fx(model.groups, resources);
  FeatureAlphabet& alphabet = const_cast<FeatureAlphabet&>(model.alphabet);
  ScoreTables tables = score_structures(s, fx, alphabet, model.averaged,
                                        model.config.order,
                                        /*grow_alphabet=*/false);
  return decode_second_order(tables, 1).front().tree;
}

std::vector<DependencyTree> parse_sentences(
    const std::vector<Sentence>& sentences, const Model& model,
    FeatureResources resources) {
  resources.tagger = &model.tagger;
  FeatureExtractor fx(model.groups, resources);
  FeatureAlphabet& alphabet = const_cast<FeatureAlphabet&>(model.alphabet);
  std::vector<DependencyTree> out;
  out.reserve(sentences.size());
  for (const Sentence& s : sentences) {
    ScoreTables tables = score_structures(s, fx, alphabet, model.averaged,
                                          model.config.order,
                                          /*grow_alphabet=*/false);
    out.push_back(decode_second_order(tables, 1).front().tree);
  }
  return out;
}

}  // namespace ngdep
