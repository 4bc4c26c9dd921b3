#include "ngdep/pipeline.hpp"

#include <atomic>
#include <mutex>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ngdep/errors.hpp"
#include "ngdep/lines.hpp"
#include "ngdep/surface_scan.hpp"
#include "ngdep/syntactic_scan.hpp"
#include "ngdep/train.hpp"

namespace ngdep {

using json = nlohmann::json;

namespace {

void read_groups(const json& j, FeatureGroups& groups,
                 const std::string& source) {
  static const std::pair<const char*, bool FeatureGroups::*> kFields[] = {
      {"baseline", &FeatureGroups::baseline},
      {"surface-affinity", &FeatureGroups::surface_affinity},
      {"surface-paraphrase", &FeatureGroups::surface_paraphrase},
      {"surface-second-order", &FeatureGroups::surface_second_order},
      {"syntactic-first-order", &FeatureGroups::syntactic_first_order},
      {"syntactic-second-order", &FeatureGroups::syntactic_second_order},
      {"syntactic-paraphrase", &FeatureGroups::syntactic_paraphrase},
  };
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& [name, member] : kFields) {
      if (key == name) {
        if (!value.is_boolean())
          throw ConfigError(source + ": group '" + key + "' must be boolean");
        groups.*member = value.get<bool>();
        known = true;
        break;
      }
    }
    if (!known)
      throw ConfigError(source + ": unknown feature group '" + key + "'");
  }
}

template <typename T>
void read_scalar(const json& j, const char* key, T& out,
                 const std::string& source) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(source + ": bad value for '" + std::string(key) +
                      "': " + e.what());
  }
}

}  // namespace

void PipelineConfig::apply_json(const std::string& text,
                                const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(source + ": config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "groups") {
      read_groups(value, groups, source);
    } else if (key == "training") {
      read_scalar(value, "order", train.order, source);
      read_scalar(value, "k", train.training_k, source);
      read_scalar(value, "iters", train.iters, source);
      read_scalar(value, "loss", train.loss_type, source);
    } else if (key == "tables") {
      read_scalar(value, "surface", surface_table_path, source);
      read_scalar(value, "surface-paraphrase", surface_paraphrase_path,
                  source);
      read_scalar(value, "syntactic", syntactic_table_path, source);
      read_scalar(value, "syntactic-paraphrase", syntactic_paraphrase_path,
                  source);
    } else if (key == "seed") {
      seed = value.get<std::uint64_t>();
    } else if (key == "surface-cutoff") {
      surface_cutoff = value.get<std::uint64_t>();
    } else if (key == "syntactic-cutoff") {
      syntactic_cutoff = value.get<std::uint64_t>();
    } else if (key == "bucket-divisor") {
      bucket_divisor = value.get<int>();
    } else if (key == "paraphrase-k-mid") {
      paraphrase_k_mid = value.get<int>();
    } else if (key == "paraphrase-k-edge") {
      paraphrase_k_edge = value.get<int>();
    } else if (key == "punct-tags") {
      punct_tags = value.get<std::vector<std::string>>();
    } else if (key == "jobs") {
      jobs = value.get<int>();
    } else if (key == "strict") {
      strict = value.get<bool>();
    } else {
      throw ConfigError(source + ": unknown config key '" + key + "'");
    }
  }
}

void PipelineConfig::apply_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_json(buf.str(), path);
}

std::string PipelineConfig::canonical_json() const {
  json j;
  j["groups"] = {
      {"baseline", groups.baseline},
      {"surface-affinity", groups.surface_affinity},
      {"surface-paraphrase", groups.surface_paraphrase},
      {"surface-second-order", groups.surface_second_order},
      {"syntactic-first-order", groups.syntactic_first_order},
      {"syntactic-second-order", groups.syntactic_second_order},
      {"syntactic-paraphrase", groups.syntactic_paraphrase},
  };
  j["training"] = {{"order", train.order},
                   {"k", train.training_k},
                   {"iters", train.iters},
                   {"loss", train.loss_type}};
  j["tables"] = {{"surface", surface_table_path},
                 {"surface-paraphrase", surface_paraphrase_path},
                 {"syntactic", syntactic_table_path},
                 {"syntactic-paraphrase", syntactic_paraphrase_path}};
  j["seed"] = seed;
  j["surface-cutoff"] = surface_cutoff;
  j["syntactic-cutoff"] = syntactic_cutoff;
  j["bucket-divisor"] = bucket_divisor;
  j["paraphrase-k-mid"] = paraphrase_k_mid;
  j["paraphrase-k-edge"] = paraphrase_k_edge;
  j["punct-tags"] = punct_tags;
  // jobs and strict are execution knobs that never change results, so they
  // stay out of the embedded configuration.
  return j.dump();  // nlohmann orders object keys, so the dump is canonical
}

PunctPolicy PipelineConfig::punct_policy() const {
  PunctPolicy p;
  p.tag_override.insert(punct_tags.begin(), punct_tags.end());
  return p;
}

const char* corpus_kind_id(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::Web1T: return "web1t";
    case CorpusKind::Books: return "books";
    case CorpusKind::Syntactic: return "syntactic";
  }
  throw ConfigError("unreachable corpus kind");
}

CorpusKind parse_corpus_kind(const std::string& name) {
  if (name == "web1t") return CorpusKind::Web1T;
  if (name == "books") return CorpusKind::Books;
  if (name == "syntactic") return CorpusKind::Syntactic;
  throw ConfigError("unknown corpus kind '" + name +
                    "' (expected web1t, books or syntactic)");
}

namespace {

std::string scan_fingerprint(CorpusKind kind, const QuerySet& queries,
                             const PipelineConfig& config) {
  std::string canon = corpus_kind_id(kind);
  canon += '\n';
  for (const auto& a : queries.arcs) canon += serialize(a), canon += '\n';
  for (const auto& t : queries.triples) canon += serialize(t), canon += '\n';
  for (const auto& s : queries.siblings) canon += serialize(s), canon += '\n';
  for (const auto& k : queries.syn_keys) canon += serialize(k), canon += '\n';
  canon += "kmid=" + std::to_string(config.paraphrase_k_mid) +
           ",kedge=" + std::to_string(config.paraphrase_k_edge);
  return config_fingerprint(canon);
}

// One shard worker; accumulators are type-erased through the two concrete
// scanners.
struct ShardResult {
  SurfaceAccumulator surface;
  SyntacticAccumulator syntactic;
  ScanStats stats;

  ShardResult(std::shared_ptr<const SurfaceQueries> sq,
              std::shared_ptr<const SyntacticQueries> yq)
      : surface(std::move(sq)), syntactic(std::move(yq)) {}
};

ShardResult scan_shard(CorpusKind kind, const std::string& path,
                       std::shared_ptr<const SurfaceQueries> sq,
                       std::shared_ptr<const SyntacticQueries> yq,
                       bool strict) {
  ShardResult result(std::move(sq), std::move(yq));
  LineReader reader(path);
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    try {
      switch (kind) {
        case CorpusKind::Web1T:
          result.surface.accumulate(parse_web1t_line(line));
          break;
        case CorpusKind::Books:
          result.surface.accumulate(parse_books_line(line).record);
          break;
        case CorpusKind::Syntactic:
          result.syntactic.accumulate(parse_syngram_line(line));
          break;
      }
      ++result.stats.records;
    } catch (const DataError& e) {
      if (strict)
        throw DataError(path + ":" + std::to_string(reader.line_no()) + ": " +
                        e.what());
      ++result.stats.malformed;
    }
  }
  return result;
}

}  // namespace

ScanOutput run_scan(CorpusKind kind, const std::vector<std::string>& shards,
                    const QuerySet& queries, const PipelineConfig& config) {
  if (shards.empty()) throw ConfigError("no corpus shards given");
  const std::string corpus = corpus_kind_id(kind);
  const std::string fingerprint = scan_fingerprint(kind, queries, config);
  auto surface_queries =
      std::make_shared<const SurfaceQueries>(SurfaceQueries::build(queries));
  auto syntactic_queries = std::make_shared<const SyntacticQueries>(
      SyntacticQueries::build(queries));

  const int jobs = std::max(1, config.jobs);
  std::vector<std::optional<ShardResult>> results(shards.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= shards.size()) return;
      try {
        results[i] = scan_shard(kind, shards[i], surface_queries,
                                syntactic_queries, config.strict);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (jobs == 1 || shards.size() == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min<std::size_t>(static_cast<std::size_t>(jobs), shards.size()); ++t)
      pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Deterministic merge in shard order.
  ShardResult merged(surface_queries, syntactic_queries);
  for (auto& r : results) {
    if (!r) continue;
    merged.surface.merge(r->surface);
    merged.syntactic.merge(r->syntactic);
    merged.stats.records += r->stats.records;
    merged.stats.malformed += r->stats.malformed;
  }

  ScanOutput out;
  out.stats = merged.stats;
  if (kind == CorpusKind::Syntactic) {
    out.table = merged.syntactic.to_count_table(corpus, fingerprint);
    out.table.apply_cutoff(config.syntactic_cutoff);
    out.paraphrase = finalize_paraphrase(
        merged.syntactic.harvest(), corpus, fingerprint,
        config.paraphrase_k_mid, config.paraphrase_k_edge);
  } else {
    out.table = merged.surface.to_count_table(corpus, fingerprint);
    out.table.apply_cutoff(config.surface_cutoff);
    out.paraphrase = finalize_paraphrase(
        merged.surface.harvest(), corpus, fingerprint,
        config.paraphrase_k_mid, config.paraphrase_k_edge);
  }
  out.table.set_pipeline_json(config.canonical_json());
  out.paraphrase.pipeline_json = config.canonical_json();
  return out;
}

FeatureResources LoadedResources::view(int bucket_divisor) const {
  FeatureResources res;
  if (surface_table) res.surface_table = &*surface_table;
  if (surface_paraphrase) res.surface_paraphrase = &*surface_paraphrase;
  if (syntactic_table) res.syntactic_table = &*syntactic_table;
  if (syntactic_paraphrase)
    res.syntactic_paraphrase = &*syntactic_paraphrase;
  res.bucket_divisor = bucket_divisor;
  return res;
}

void validate_resource_paths(const FeatureGroups& groups,
                             const PipelineConfig& config) {
  auto need = [](const std::string& path, const char* what,
                 const char* group) {
    if (path.empty())
      throw ConfigError(std::string("feature group '") + group +
                        "' is enabled but no " + what + " path is configured");
  };
  if (groups.surface_affinity || groups.surface_second_order)
    need(config.surface_table_path, "surface table", "surface-affinity");
  if (groups.surface_paraphrase || groups.surface_second_order)
    need(config.surface_paraphrase_path, "surface paraphrase file",
         "surface-paraphrase");
  if (groups.syntactic_first_order || groups.syntactic_second_order)
    need(config.syntactic_table_path, "syntactic table",
         "syntactic-first-order");
  if (groups.syntactic_paraphrase)
    need(config.syntactic_paraphrase_path, "syntactic paraphrase file",
         "syntactic-paraphrase");
}

LoadedResources load_resources(const FeatureGroups& groups,
                               const PipelineConfig& config) {
  validate_resource_paths(groups, config);
  LoadedResources res;
  if (groups.surface_affinity || groups.surface_second_order)
    res.surface_table = CountTable::read_file(config.surface_table_path);
  if (groups.surface_paraphrase || groups.surface_second_order)
    res.surface_paraphrase =
        read_paraphrase_file(config.surface_paraphrase_path);
  if (groups.syntactic_first_order || groups.syntactic_second_order)
    res.syntactic_table = CountTable::read_file(config.syntactic_table_path);
  if (groups.syntactic_paraphrase)
    res.syntactic_paraphrase =
        read_paraphrase_file(config.syntactic_paraphrase_path);
  return res;
}

Model run_train(const std::vector<Sentence>& train,
                const PipelineConfig& config, bool verbose) {
  LoadedResources loaded = load_resources(config.groups, config);
  return train_model(train, config.groups, loaded.view(config.bucket_divisor),
                     config.train, config.punct_policy(),
                     config.canonical_json(), verbose);
}

std::vector<DependencyTree> run_parse(const std::vector<Sentence>& input,
                                      const Model& model,
                                      const PipelineConfig& config) {
  LoadedResources loaded = load_resources(model.groups, config);
  return parse_sentences(input, model, loaded.view(config.bucket_divisor));
}

std::vector<std::vector<std::string>> surface_coverage_keysets(
    const QuerySet& queries) {
  std::vector<std::vector<std::string>> sets;
  auto pair_keys = [](const std::array<std::string, 2>& q) {
    std::vector<std::string> keys;
    for (const char* pattern : kPairPatterns)
      keys.push_back(pair_table_key(pattern, q[0], q[1]));
    return keys;
  };
  for (const ArcCandidate& a : queries.arcs)
    sets.push_back(pair_keys(a.surface_query()));
  for (const SiblingQuery& s : queries.siblings)
    sets.push_back(pair_keys(s.surface_query()));
  for (const TripleQuery& t : queries.triples) {
    auto q = t.surface_query();
    sets.push_back({triple_table_key(q[0], q[1], q[2])});
  }
  return sets;
}

std::vector<std::vector<std::string>> syntactic_coverage_keysets(
    const QuerySet& queries) {
  std::vector<std::vector<std::string>> sets;
  for (const SyntacticLookupKey& k : queries.syn_keys)
    sets.push_back({k.table_key()});
  for (const TripleQuery& t : queries.triples)
    sets.push_back({syn2_word_table_key(t.side(), t.surface_query()),
                    syn2_pos_table_key(t.side(), t.pos_query())});
  for (const SiblingQuery& s : queries.siblings)
    sets.push_back({sib2_word_table_key(s.surface_query()),
                    sib2_pos_table_key(s.pos_query())});
  return sets;
}

}  // namespace ngdep
