#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngdep/count_store.hpp"
#include "ngdep/eval.hpp"
#include "ngdep/features.hpp"
#include "ngdep/model.hpp"
#include "ngdep/paraphrase.hpp"
#include "ngdep/punct.hpp"
#include "ngdep/query.hpp"

namespace ngdep {

// Declarative run configuration; a JSON config file provides values and
// command-line flags override them. The canonical JSON dump is embedded in
// every produced artifact.
struct PipelineConfig {
  FeatureGroups groups;
  TrainConfig train;
  std::uint64_t seed = 1;
  std::uint64_t surface_cutoff = 0;
  std::uint64_t syntactic_cutoff = 10000;
  int bucket_divisor = 5;
  int paraphrase_k_mid = 20;
  int paraphrase_k_edge = 5;
  std::vector<std::string> punct_tags;  // empty -> Unicode punctuation forms
  std::string surface_table_path;
  std::string surface_paraphrase_path;
  std::string syntactic_table_path;
  std::string syntactic_paraphrase_path;
  int jobs = 1;
  bool strict = false;

  void apply_json_file(const std::string& path);
  void apply_json(const std::string& text, const std::string& source);
  std::string canonical_json() const;
  PunctPolicy punct_policy() const;
};

enum class CorpusKind { Web1T, Books, Syntactic };
const char* corpus_kind_id(CorpusKind kind);
CorpusKind parse_corpus_kind(const std::string& name);

struct ScanStats {
  std::uint64_t records = 0;
  std::uint64_t malformed = 0;
};

struct ScanOutput {
  CountTable table;
  ParaphraseLists paraphrase;
  ScanStats stats;
};

// Streams every shard (parallel up to config.jobs), merges the per-shard
// accumulators in shard order, applies the kind's cutoff post-merge, and
// finalizes paraphrase lists. In strict mode a malformed line aborts the
// scan; otherwise it is counted and skipped.
ScanOutput run_scan(CorpusKind kind, const std::vector<std::string>& shards,
                    const QuerySet& queries, const PipelineConfig& config);

// Owning storage behind FeatureResources; loads only what the enabled
// groups require and fails fast on missing paths.
struct LoadedResources {
  std::optional<CountTable> surface_table;
  std::optional<ParaphraseLists> surface_paraphrase;
  std::optional<CountTable> syntactic_table;
  std::optional<ParaphraseLists> syntactic_paraphrase;

  FeatureResources view(int bucket_divisor) const;
};

// Path presence check only; throws ConfigError so commands can refuse bad
// configurations before touching any input.
void validate_resource_paths(const FeatureGroups& groups,
                             const PipelineConfig& config);

LoadedResources load_resources(const FeatureGroups& groups,
                               const PipelineConfig& config);

Model run_train(const std::vector<Sentence>& train,
                const PipelineConfig& config, bool verbose = false);

std::vector<DependencyTree> run_parse(const std::vector<Sentence>& input,
                                      const Model& model,
                                      const PipelineConfig& config);

// Coverage keysets per query-file line, following the table kind's key
// convention.
std::vector<std::vector<std::string>> surface_coverage_keysets(
    const QuerySet& queries);
std::vector<std::vector<std::string>> syntactic_coverage_keysets(
    const QuerySet& queries);

}  // namespace ngdep
