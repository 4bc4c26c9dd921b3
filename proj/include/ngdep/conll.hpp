#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ngdep {

// One CoNLL-X row. `gold_head` is 0 for the artificial root. The LEMMA,
// FEATS, DEPREL, PHEAD and PDEPREL columns are kept verbatim so unparsed
// files round-trip byte-exactly, but nothing downstream reads them.
struct Token {
  int index = 0;  // 1-based position
  std::string form;
  std::string lemma = "_";
  std::string cpos;
  std::string fpos;
  std::string feats = "_";
  int gold_head = 0;
  std::string deprel = "_";
  std::string phead = "_";
  std::string pdeprel = "_";
};

struct Sentence {
  std::vector<Token> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  std::vector<int> gold_heads() const;
};

// Predicted (or gold) head indices, one per token, 0 = root.
struct DependencyTree {
  std::vector<int> heads;

  int size() const { return static_cast<int>(heads.size()); }
  bool operator==(const DependencyTree&) const = default;
};

struct ConllOptions {
  // Exactly one child of the artificial root, which is what standard
  // constituency-to-dependency conversions emit; turn off only for
  // robustness experiments.
  bool single_root = true;
};

// Validates that `heads` forms a tree over 1..n rooted at 0 (acyclic, all
// tokens reach 0, heads in range). Returns a description of the first
// violation, or nullopt if valid.
std::optional<std::string> tree_violation(const std::vector<int>& heads,
                                          bool single_root);

// Reads CoNLL-X: 10 tab-separated columns, blank-line sentence separation,
// comment lines starting '#' skipped. Throws DataError naming the line of
// the first malformed row.
std::vector<Sentence> parse_conll(std::istream& in,
                                  const ConllOptions& opts = {});
std::vector<Sentence> parse_conll_file(const std::string& path,
                                       const ConllOptions& opts = {});

// Writes sentences back out. With `predicted` given, the HEAD column holds
// the predicted heads and DEPREL is "_"; lengths must match.
void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const std::vector<DependencyTree>* predicted = nullptr);
void write_conll_file(const std::string& path,
                      const std::vector<Sentence>& sentences,
                      const std::vector<DependencyTree>* predicted = nullptr);

}  // namespace ngdep
