#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ngdep/count_store.hpp"
#include "ngdep/paraphrase.hpp"
#include "ngdep/query.hpp"

namespace ngdep {

struct SynToken {
  std::string form;
  std::string fpos;
  std::string deplabel;  // parsed but unused downstream
  int head_index = 0;    // 0 = fragment root, else 1-based fragment position
};

// A counted dependency-tree fragment in linear order.
struct SyntacticNgramRecord {
  std::string head_word;
  std::vector<SynToken> tokens;
  std::uint64_t total_count = 0;
};

// "head_word<TAB>ngram<TAB>total_count[<TAB>year,count ...]"; ngram tokens
// are "form/fpos/deplabel/head_index" split from the right, so forms may
// contain '/'. Throws DataError on malformed fields or a broken tree.
SyntacticNgramRecord parse_syngram_line(const std::string& line);

// One (head position, argument position) per non-root token, 1-based.
std::vector<std::pair<int, int>> record_arcs(
    const SyntacticNgramRecord& record);

// Query membership sets keyed by canonical table-key strings.
struct SyntacticQueries {
  std::unordered_set<std::string> first_order;  // 14-kind lookup keys
  std::unordered_set<std::string> second_order;  // syn2w/syn2p/sib2w/sib2p
  std::unordered_set<std::string> para_arcs;     // "head arg" role pairs

  static SyntacticQueries build(const QuerySet& qs);
};

class SyntacticAccumulator {
 public:
  explicit SyntacticAccumulator(std::shared_ptr<const SyntacticQueries> q)
      : queries_(std::move(q)) {}

  void accumulate(const SyntacticNgramRecord& record);
  void merge(const SyntacticAccumulator& other);

  const std::map<std::string, std::uint64_t>& counts() const {
    return counts_;
  }
  const ParaphraseHarvest& harvest() const { return harvest_; }
  std::uint64_t records_seen() const { return records_; }

  CountTable to_count_table(const std::string& corpus_id,
                            const std::string& config_hash) const;

 private:
  void first_order(const SyntacticNgramRecord& record,
                   const std::vector<std::pair<int, int>>& arcs);
  void second_order(const SyntacticNgramRecord& record,
                    const std::vector<std::pair<int, int>>& arcs);
  void paraphrase(const SyntacticNgramRecord& record,
                  const std::vector<std::pair<int, int>>& arcs);

  std::shared_ptr<const SyntacticQueries> queries_;
  std::map<std::string, std::uint64_t> counts_;
  ParaphraseHarvest harvest_;
  std::uint64_t records_ = 0;
};

// Spec-level conveniences for tests: one-record accumulation against small
// query sets.
std::map<std::string, std::uint64_t> accumulate_first_order(
    const SyntacticNgramRecord& record,
    const std::vector<SyntacticLookupKey>& keys);
std::map<std::string, std::uint64_t> accumulate_second_order(
    const SyntacticNgramRecord& record,
    const std::vector<TripleQuery>& triples,
    const std::vector<SiblingQuery>& siblings);
ParaphraseHarvest harvest_syntactic_paraphrase(
    const SyntacticNgramRecord& record,
    const std::vector<ArcCandidate>& arcs);

}  // namespace ngdep
