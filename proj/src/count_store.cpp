#include "ngdep/count_store.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>

#include "ngdep/errors.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

int bucketize(std::uint64_t frequency, int divisor) {
  if (frequency == 0) throw DataError("bucketize requires frequency >= 1");
  if (divisor < 1) throw ConfigError("bucket divisor must be >= 1");
  int log2_floor = std::bit_width(frequency) - 1;
  return (log2_floor / divisor) * divisor;
}

std::optional<int> bucket_label(std::uint64_t frequency, int divisor) {
  if (frequency == 0) return std::nullopt;
  return bucketize(frequency, divisor);
}

std::vector<int> cumulative_buckets(int bucket, int divisor) {
  if (bucket < 0 || divisor < 1 || bucket % divisor != 0)
    throw DataError("invalid bucket label " + std::to_string(bucket));
  std::vector<int> out;
  for (int b = 0; b <= bucket; b += divisor) out.push_back(b);
  return out;
}

void CountTable::add(const std::string& key, std::uint64_t count) {
  entries_[key] += count;
}

std::uint64_t CountTable::get(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second;
}

bool CountTable::contains(const std::string& key) const {
  return entries_.count(key) != 0;
}

void CountTable::apply_cutoff(std::uint64_t min_count) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second < min_count)
      it = entries_.erase(it);
    else
      ++it;
  }
  cutoff_ = min_count;
}

CountTable CountTable::merge(const CountTable& a, const CountTable& b) {
  if (a.corpus_id_ != b.corpus_id_)
    throw ConfigError("cannot merge tables from corpora '" + a.corpus_id_ +
                      "' and '" + b.corpus_id_ + "'");
  if (a.config_hash_ != b.config_hash_)
    throw ConfigError("cannot merge tables with different scan configs (" +
                      a.config_hash_ + " vs " + b.config_hash_ + ")");
  if (a.cutoff_ != b.cutoff_)
    throw ConfigError("cannot merge tables with different cutoffs");
  CountTable out = a;
  for (const auto& [key, count] : b.entries_) out.entries_[key] += count;
  return out;
}

void CountTable::write(std::ostream& out) const {
  out << "#meta\tcorpus\t" << corpus_id_ << '\n';
  out << "#meta\tconfig\t" << config_hash_ << '\n';
  out << "#meta\tcutoff\t" << cutoff_ << '\n';
  if (!pipeline_json_.empty())
    out << "#meta\tpipeline\t" << pipeline_json_ << '\n';
  for (const auto& [key, count] : entries_)
    out << key << '\t' << count << '\n';
}

void CountTable::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open table file for writing: " + path);
  write(out);
}

CountTable CountTable::read(std::istream& in, const std::string& source_name) {
  CountTable table;
  bool have_corpus = false, have_config = false, have_cutoff = false;
  std::string line;
  int line_no = 0;
  std::string prev_key;
  bool first_entry = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols[0] == "#meta") {
      if (cols.size() != 3)
        throw DataError(source_name + ":" + std::to_string(line_no) +
                        ": malformed #meta line");
      if (cols[1] == "corpus") {
        table.corpus_id_ = cols[2];
        have_corpus = true;
      } else if (cols[1] == "config") {
        table.config_hash_ = cols[2];
        have_config = true;
      } else if (cols[1] == "cutoff") {
        table.cutoff_ = parse_count(cols[2], "cutoff");
        have_cutoff = true;
      } else if (cols[1] == "pipeline") {
        table.pipeline_json_ = cols[2];
      }
      // Other meta names pass through-and-drop.
      continue;
    }
    if (cols.size() != 2)
      throw DataError(source_name + ":" + std::to_string(line_no) +
                      ": expected key<TAB>count");
    if (!first_entry && !(prev_key < cols[0])) {
      if (prev_key == cols[0])
        throw DataError(source_name + ":" + std::to_string(line_no) +
                        ": duplicate key '" + cols[0] + "'");
      throw DataError(source_name + ":" + std::to_string(line_no) +
                      ": keys not sorted ascending");
    }
    std::uint64_t count;
    try {
      count = parse_count(cols[1], "count");
    } catch (const DataError& e) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
    table.entries_.emplace_hint(table.entries_.end(), cols[0], count);
    prev_key = cols[0];
    first_entry = false;
  }
  if (!have_corpus || !have_config || !have_cutoff)
    throw DataError(source_name +
                    ": missing #meta header (corpus/config/cutoff required)");
  return table;
}

CountTable CountTable::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open table file: " + path);
  return read(in, path);
}

std::string config_fingerprint(const std::string& canonical_config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace ngdep
