#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ngdep/conll.hpp"

namespace ngdep {

// Deterministic treebank whose attachments are a pure function of the POS
// sequence; an online large-margin learner separates it within a few
// passes.
std::vector<Sentence> make_separable_treebank(int n_sentences,
                                              std::uint64_t seed);

// A generated world with POS-ambiguous attachments (adverb and PP
// attachment sites) whose resolution is only recoverable from n-gram
// counts: held-out vocabulary is disjoint from training vocabulary, so
// lexical baseline features cannot carry over, while the bundled corpus
// covers both splits.
struct AmbiguousWorld {
  std::vector<Sentence> train;
  std::vector<Sentence> heldout;
  std::vector<std::string> web1t_lines;     // "tokens<TAB>count"
  std::vector<std::string> syngram_lines;   // syntactic n-gram format
};

AmbiguousWorld make_ambiguous_world(int n_train, int n_heldout,
                                    std::uint64_t seed);

}  // namespace ngdep
