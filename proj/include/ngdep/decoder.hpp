#pragma once

#include <vector>

#include "ngdep/conll.hpp"
#include "ngdep/features.hpp"

namespace ngdep {

struct ScoredTree {
  DependencyTree tree;
  double score = 0;
};

// Maximum-score projective single-root tree under arc scores alone.
// Ties break toward the lexicographically smallest head vector (equivalent
// to preferring the smaller head index at the first differing token).
DependencyTree decode_first_order(const ScoreTables& scores);

// Projective second-order sibling decoding; returns up to k distinct trees,
// best first, scored as sum of arc scores plus adjacent-sibling scores with
// a null marker for each side's first modifier. Same tie-break as above.
std::vector<ScoredTree> decode_second_order(const ScoreTables& scores, int k);

}  // namespace ngdep
