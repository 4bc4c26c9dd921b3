#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "ngdep/count_store.hpp"
#include "ngdep/paraphrase.hpp"
#include "ngdep/query.hpp"

namespace ngdep {

// One surface n-gram corpus entry: 1 to 5 tokens and an occurrence count.
struct NgramRecord {
  std::vector<std::string> tokens;
  std::uint64_t count = 0;
};

// "w1 w2 ... wk<TAB>count". Throws DataError on malformed lines.
NgramRecord parse_web1t_line(const std::string& line);

// "ngram<TAB>year<TAB>match_count<TAB>volume_count". The record carries
// match_count; volume counts are discarded and years are summed by simply
// accumulating every line.
struct BooksRecord {
  NgramRecord record;
  int year = 0;
};
BooksRecord parse_books_line(const std::string& line);

// Co-occurrence counts with 0-3 intervening wildcard words.
struct AffinityCounts {
  std::uint64_t contig = 0, gap1 = 0, gap2 = 0, gap3 = 0;

  std::uint64_t total() const { return contig + gap1 + gap2 + gap3; }
  std::uint64_t& by_gap(int gap);
  void merge(const AffinityCounts& o);
  bool operator==(const AffinityCounts&) const = default;
};

inline constexpr const char* kPairPatterns[4] = {"contig", "gap1", "gap2",
                                                 "gap3"};

// Immutable lookup structures prepared once from the query set and shared
// read-only across shard workers.
struct SurfaceQueries {
  std::unordered_set<std::string> pairs;    // "q1 q2", linear order
  std::unordered_set<std::string> triples;  // "q1 q2 q3", linear order

  static SurfaceQueries build(const QuerySet& qs);
};

// Per-shard accumulator; merge is commutative and associative.
class SurfaceAccumulator {
 public:
  explicit SurfaceAccumulator(std::shared_ptr<const SurfaceQueries> queries)
      : queries_(std::move(queries)) {}

  // Adds every matching (query, pattern) occurrence at every offset.
  void accumulate(const NgramRecord& record);
  void merge(const SurfaceAccumulator& other);

  const std::map<std::string, AffinityCounts>& pair_counts() const {
    return pairs_;
  }
  const std::map<std::string, std::uint64_t>& triple_counts() const {
    return triples_;
  }
  const ParaphraseHarvest& harvest() const { return harvest_; }
  std::uint64_t records_seen() const { return records_; }

  // pair:<pattern>:<q1 q2> and triple:<q1 q2 q3> keys; zero counts emit
  // nothing.
  CountTable to_count_table(const std::string& corpus_id,
                            const std::string& config_hash) const;

 private:
  std::shared_ptr<const SurfaceQueries> queries_;
  std::map<std::string, AffinityCounts> pairs_;
  std::map<std::string, std::uint64_t> triples_;
  ParaphraseHarvest harvest_;
  std::uint64_t records_ = 0;
};

// Spec-level conveniences used by tests and small callers.
std::map<std::string, AffinityCounts> scan_affinity(
    const std::vector<NgramRecord>& records,
    const std::vector<ArcCandidate>& arcs);
std::map<std::string, std::uint64_t> scan_triple_counts(
    const std::vector<NgramRecord>& records,
    const std::vector<TripleQuery>& triples);
ParaphraseHarvest scan_paraphrase(const std::vector<NgramRecord>& records,
                                  const std::vector<ArcCandidate>& arcs);

}  // namespace ngdep
