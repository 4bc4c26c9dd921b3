#include "ngdep/paraphrase.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "ngdep/errors.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

const char* slot_id(Slot s) {
  switch (s) {
    case Slot::Before: return "before";
    case Slot::Mid: return "mid";
    case Slot::After: return "after";
    case Slot::PosBefore: return "pbefore";
    case Slot::PosMid: return "pmid";
    case Slot::PosAfter: return "pafter";
  }
  throw DataError("unreachable slot");
}

namespace {

Slot parse_slot(const std::string& s, const std::string& where) {
  for (int i = 0; i < kSlots; ++i)
    if (s == slot_id(static_cast<Slot>(i))) return static_cast<Slot>(i);
  throw DataError(where + ": unknown slot '" + s + "'");
}

bool is_mid(Slot s) { return s == Slot::Mid || s == Slot::PosMid; }

}  // namespace

void ParaphraseHarvest::merge(const ParaphraseHarvest& other) {
  for (const auto& [key, tally] : other.queries) {
    SlotTally& mine = queries[key];
    for (int s = 0; s < kSlots; ++s)
      for (const auto& [word, count] : tally.words[s])
        mine.words[s][word] += count;
  }
}

const std::vector<RankedWord>* ParaphraseLists::slot(const std::string& key,
                                                     Slot s) const {
  auto it = queries.find(key);
  if (it == queries.end()) return nullptr;
  return &it->second[static_cast<int>(s)];
}

ParaphraseLists finalize_paraphrase(const ParaphraseHarvest& harvest,
                                    const std::string& corpus_id,
                                    const std::string& config_hash,
                                    int k_mid, int k_edge) {
  ParaphraseLists lists;
  lists.corpus_id = corpus_id;
  lists.config_hash = config_hash;
  for (const auto& [key, tally] : harvest.queries) {
    auto& slots = lists.queries[key];
    for (int s = 0; s < kSlots; ++s) {
      std::vector<RankedWord> ranked;
      ranked.reserve(tally.words[s].size());
      for (const auto& [word, count] : tally.words[s])
        ranked.push_back(RankedWord{word, count});
      std::sort(ranked.begin(), ranked.end(),
                [](const RankedWord& a, const RankedWord& b) {
                  if (a.count != b.count) return a.count > b.count;
                  return a.word < b.word;
                });
      const std::size_t k = is_mid(static_cast<Slot>(s))
                                ? static_cast<std::size_t>(k_mid)
                                : static_cast<std::size_t>(k_edge);
      if (ranked.size() > k) ranked.resize(k);
      slots[s] = std::move(ranked);
    }
  }
  return lists;
}

void write_paraphrase(std::ostream& out, const ParaphraseLists& lists) {
  out << "#meta\tcorpus\t" << lists.corpus_id << '\n';
  out << "#meta\tconfig\t" << lists.config_hash << '\n';
  if (!lists.pipeline_json.empty())
    out << "#meta\tpipeline\t" << lists.pipeline_json << '\n';
  for (const auto& [key, slots] : lists.queries) {
    for (int s = 0; s < kSlots; ++s) {
      for (std::size_t rank = 0; rank < slots[s].size(); ++rank) {
        out << key << '\t' << slot_id(static_cast<Slot>(s)) << '\t'
            << (rank + 1) << '\t' << slots[s][rank].word << '\t'
            << slots[s][rank].count << '\n';
      }
    }
  }
}

void write_paraphrase_file(const std::string& path,
                           const ParaphraseLists& lists) {
  std::ofstream out(path);
  if (!out)
    throw DataError("cannot open paraphrase file for writing: " + path);
  write_paraphrase(out, lists);
}

ParaphraseLists read_paraphrase(std::istream& in,
                                const std::string& source_name) {
  ParaphraseLists lists;
  bool have_corpus = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    std::vector<std::string> cols = split(line, '\t');
    if (cols[0] == "#meta") {
      if (cols.size() != 3) throw DataError(where + ": malformed #meta line");
      if (cols[1] == "corpus") {
        lists.corpus_id = cols[2];
        have_corpus = true;
      } else if (cols[1] == "config") {
        lists.config_hash = cols[2];
      } else if (cols[1] == "pipeline") {
        lists.pipeline_json = cols[2];
      }
      continue;
    }
    if (cols.size() != 5)
      throw DataError(where + ": expected query, slot, rank, word, count");
    Slot slot = parse_slot(cols[1], where);
    std::uint64_t rank = parse_count(cols[2], "rank");
    std::uint64_t count = parse_count(cols[4], "count");
    auto& vec = lists.queries[cols[0]][static_cast<int>(slot)];
    if (rank != vec.size() + 1)
      throw DataError(where + ": rank " + cols[2] + " out of sequence");
    vec.push_back(RankedWord{cols[3], count});
  }
  if (!have_corpus)
    throw DataError(source_name + ": missing #meta corpus header");
  return lists;
}

ParaphraseLists read_paraphrase_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open paraphrase file: " + path);
  return read_paraphrase(in, path);
}

}  // namespace ngdep
