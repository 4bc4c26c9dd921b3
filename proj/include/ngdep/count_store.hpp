#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ngdep {

// bucket = floor(log2(frequency) / divisor) * divisor, computed on the
// integer bit length so powers of two land exactly on bucket boundaries.
// The divisor is a replication knob; 5 is the normative value.
int bucketize(std::uint64_t frequency, int divisor = 5);

// nullopt for frequency 0: absent counts carry no bucket at all and are
// distinct from bucket 0.
std::optional<int> bucket_label(std::uint64_t frequency, int divisor = 5);

// [0, 5, ..., bucket], ascending.
std::vector<int> cumulative_buckets(int bucket, int divisor = 5);

// Corpus-derived key -> count lookup table. Keys are the canonical
// serialized query strings (see query.hpp), so the scanners and the parser
// always agree. Entries are kept sorted for deterministic output.
class CountTable {
 public:
  CountTable() = default;
  CountTable(std::string corpus_id, std::string config_hash)
      : corpus_id_(std::move(corpus_id)),
        config_hash_(std::move(config_hash)) {}

  const std::string& corpus_id() const { return corpus_id_; }
  const std::string& config_hash() const { return config_hash_; }
  std::uint64_t cutoff() const { return cutoff_; }

  // Optional provenance: the full pipeline configuration that produced the
  // table, stored verbatim in a "#meta pipeline" line.
  const std::string& pipeline_json() const { return pipeline_json_; }
  void set_pipeline_json(std::string json) {
    pipeline_json_ = std::move(json);
  }

  void add(const std::string& key, std::uint64_t count);
  std::uint64_t get(const std::string& key) const;  // 0 when absent
  bool contains(const std::string& key) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::uint64_t>& entries() const {
    return entries_;
  }

  // Removes entries with count < min_count and records the cutoff. Must run
  // after all shards are merged; cutoff-then-merge undercounts.
  void apply_cutoff(std::uint64_t min_count);

  // Key-wise sum. Requires matching corpus id, config hash and cutoff.
  static CountTable merge(const CountTable& a, const CountTable& b);

  // TSV: "#meta\tname\tvalue" headers, then "key\tcount" sorted bytewise
  // ascending. read(write(t)) is bit-exact.
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;
  static CountTable read(std::istream& in, const std::string& source_name);
  static CountTable read_file(const std::string& path);

 private:
  std::string corpus_id_;
  std::string config_hash_;
  std::string pipeline_json_;
  std::uint64_t cutoff_ = 0;
  std::map<std::string, std::uint64_t> entries_;
};

// FNV-1a over a canonical configuration string; used as the table/paraphrase
// metadata "config" value so shard merges can verify compatibility.
std::string config_fingerprint(const std::string& canonical_config);

}  // namespace ngdep
