#include "ngdep/surface_scan.hpp"

#include "ngdep/errors.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

NgramRecord parse_web1t_line(const std::string& line) {
  std::size_t tab = line.find('\t');
  if (tab == std::string::npos)
    throw DataError("missing tab separator in n-gram line");
  if (line.find('\t', tab + 1) != std::string::npos)
    throw DataError("more than one tab in n-gram line");
  NgramRecord rec;
  rec.tokens = split_ws(std::string_view(line).substr(0, tab));
  if (rec.tokens.empty()) throw DataError("empty n-gram");
  if (rec.tokens.size() > 5)
    throw DataError("n-gram longer than 5 tokens (" +
                    std::to_string(rec.tokens.size()) + ")");
  rec.count = parse_count(std::string_view(line).substr(tab + 1), "count");
  return rec;
}

BooksRecord parse_books_line(const std::string& line) {
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() != 4)
    throw DataError("expected ngram, year, match_count, volume_count");
  BooksRecord out;
  out.record.tokens = split_ws(cols[0]);
  if (out.record.tokens.empty()) throw DataError("empty n-gram");
  if (out.record.tokens.size() > 5)
    throw DataError("n-gram longer than 5 tokens (" +
                    std::to_string(out.record.tokens.size()) + ")");
  out.year = parse_int(cols[1], "year");
  out.record.count = parse_count(cols[2], "match_count");
  parse_count(cols[3], "volume_count");  // validated, then discarded
  return out;
}

std::uint64_t& AffinityCounts::by_gap(int gap) {
  switch (gap) {
    case 0: return contig;
    case 1: return gap1;
    case 2: return gap2;
    case 3: return gap3;
  }
  throw DataError("gap out of range");
}

void AffinityCounts::merge(const AffinityCounts& o) {
  contig += o.contig;
  gap1 += o.gap1;
  gap2 += o.gap2;
  gap3 += o.gap3;
}

SurfaceQueries SurfaceQueries::build(const QuerySet& qs) {
  SurfaceQueries out;
  for (const ArcCandidate& a : qs.arcs) {
    auto q = a.surface_query();
    out.pairs.insert(q[0] + " " + q[1]);
  }
  for (const SiblingQuery& s : qs.siblings) {
    auto q = s.surface_query();
    out.pairs.insert(q[0] + " " + q[1]);
  }
  for (const TripleQuery& t : qs.triples) {
    auto q = t.surface_query();
    out.triples.insert(q[0] + " " + q[1] + " " + q[2]);
  }
  return out;
}

void SurfaceAccumulator::accumulate(const NgramRecord& record) {
  ++records_;
  const auto& toks = record.tokens;
  const int len = static_cast<int>(toks.size());
  std::string key;

  // First-order patterns (q1 q2), (q1 * q2), ..., (q1 * * * q2); every
  // matching offset counts.
  for (int i = 0; i < len; ++i) {
    for (int gap = 0; gap <= 3; ++gap) {
      int j = i + gap + 1;
      if (j >= len) break;
      key = toks[i];
      key += ' ';
      key += toks[j];
      if (queries_->pairs.count(key)) pairs_[key].by_gap(gap) += record.count;
    }
  }

  // Paraphrase windows: each contiguous 3-token window matches
  // (* q1 q2), (q1 * q2), (q1 q2 *).
  for (int i = 0; i + 2 < len; ++i) {
    const std::string& a = toks[i];
    const std::string& b = toks[i + 1];
    const std::string& c = toks[i + 2];
    key = b;
    key += ' ';
    key += c;
    if (queries_->pairs.count(key))
      harvest_.queries[key].add(Slot::Before, a, record.count);
    key = a;
    key += ' ';
    key += c;
    if (queries_->pairs.count(key))
      harvest_.queries[key].add(Slot::Mid, b, record.count);
    key = a;
    key += ' ';
    key += b;
    if (queries_->pairs.count(key))
      harvest_.queries[key].add(Slot::After, c, record.count);
  }

  // Second-order configurations: gaps (g1, g2) between (q1,q2) and (q2,q3)
  // drawn from the six layouts up to 5-gram length.
  static constexpr int kConfigs[6][2] = {{0, 0}, {1, 0}, {0, 1},
                                         {1, 1}, {2, 0}, {0, 2}};
  for (int i = 0; i < len; ++i) {
    for (const auto& cfg : kConfigs) {
      int j = i + cfg[0] + 1;
      int k = j + cfg[1] + 1;
      if (k >= len) continue;
      key = toks[i];
      key += ' ';
      key += toks[j];
      key += ' ';
      key += toks[k];
      if (queries_->triples.count(key)) triples_[key] += record.count;
    }
  }
}

void SurfaceAccumulator::merge(const SurfaceAccumulator& other) {
  for (const auto& [key, counts] : other.pairs_) pairs_[key].merge(counts);
  for (const auto& [key, count] : other.triples_) triples_[key] += count;
  harvest_.merge(other.harvest_);
  records_ += other.records_;
}

CountTable SurfaceAccumulator::to_count_table(
    const std::string& corpus_id, const std::string& config_hash) const {
  CountTable table(corpus_id, config_hash);
  for (const auto& [pair, counts] : pairs_) {
    const std::uint64_t by_pattern[4] = {counts.contig, counts.gap1,
                                         counts.gap2, counts.gap3};
    std::size_t space = pair.find(' ');
    std::string w1 = pair.substr(0, space);
    std::string w2 = pair.substr(space + 1);
    for (int g = 0; g < 4; ++g)
      if (by_pattern[g] > 0)
        table.add(pair_table_key(kPairPatterns[g], w1, w2), by_pattern[g]);
  }
  for (const auto& [triple, count] : triples_) {
    if (count == 0) continue;
    auto words = split_ws(triple);
    table.add(triple_table_key(words[0], words[1], words[2]), count);
  }
  return table;
}

namespace {

std::shared_ptr<const SurfaceQueries> queries_from(
    const std::vector<ArcCandidate>& arcs,
    const std::vector<TripleQuery>& triples) {
  QuerySet qs;
  qs.arcs = arcs;
  qs.triples = triples;
  return std::make_shared<const SurfaceQueries>(SurfaceQueries::build(qs));
}

}  // namespace

std::map<std::string, AffinityCounts> scan_affinity(
    const std::vector<NgramRecord>& records,
    const std::vector<ArcCandidate>& arcs) {
  SurfaceAccumulator acc(queries_from(arcs, {}));
  for (const NgramRecord& r : records) acc.accumulate(r);
  return acc.pair_counts();
}

std::map<std::string, std::uint64_t> scan_triple_counts(
    const std::vector<NgramRecord>& records,
    const std::vector<TripleQuery>& triples) {
  SurfaceAccumulator acc(queries_from({}, triples));
  for (const NgramRecord& r : records) acc.accumulate(r);
  return acc.triple_counts();
}

ParaphraseHarvest scan_paraphrase(const std::vector<NgramRecord>& records,
                                  const std::vector<ArcCandidate>& arcs) {
  SurfaceAccumulator acc(queries_from(arcs, {}));
  for (const NgramRecord& r : records) acc.accumulate(r);
  return acc.harvest();
}

}  // namespace ngdep
