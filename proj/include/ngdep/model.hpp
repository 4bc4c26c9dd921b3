#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ngdep/alphabet.hpp"
#include "ngdep/features.hpp"
#include "ngdep/tagger.hpp"

namespace ngdep {

struct TrainConfig {
  int order = 2;
  int training_k = 5;
  int iters = 10;
  std::string loss_type = "nopunc";  // or "punc"
};

// Trained parser: frozen alphabet, raw and averaged weights, the training
// configuration and the unigram tagger (needed at parse time for paraphrase
// tag features).
struct Model {
  FeatureAlphabet alphabet;
  std::vector<double> weights;
  std::vector<double> averaged;
  TrainConfig config;
  FeatureGroups groups;
  UnigramTagger tagger;
  std::string meta_json;  // effective pipeline configuration, verbatim

  // Versioned container: text header, then length-prefixed sections
  // (meta, info, alphabet, weights, avgweights, tagger). Saving
  // canonicalizes the alphabet to sorted order, permuting both weight
  // arrays, so save(load(save(m))) is byte-identical to save(m).
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static Model load(std::istream& in, const std::string& source_name);
  static Model load_file(const std::string& path);
};

}  // namespace ngdep
