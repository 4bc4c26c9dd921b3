#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ngdep {

// Context-word tallies for one query, per slot. Surface harvests fill the
// word slots; the syntactic harvest fills the POS slots as well.
enum class Slot : int { Before, Mid, After, PosBefore, PosMid, PosAfter };
inline constexpr int kSlots = 6;
const char* slot_id(Slot s);

struct SlotTally {
  std::array<std::map<std::string, std::uint64_t>, kSlots> words;

  void add(Slot slot, const std::string& word, std::uint64_t count) {
    words[static_cast<std::size_t>(slot)][word] += count;
  }
};

// query key -> tallies; merged field-wise across shards.
struct ParaphraseHarvest {
  std::map<std::string, SlotTally> queries;

  void merge(const ParaphraseHarvest& other);
};

struct RankedWord {
  std::string word;
  std::uint64_t count = 0;
  bool operator==(const RankedWord&) const = default;
};

// Top words per slot: count descending, ties lexicographic ascending,
// truncated to k_mid for the mid slots and k_edge for before/after.
struct ParaphraseLists {
  using SlotLists = std::array<std::vector<RankedWord>, kSlots>;

  std::string corpus_id;
  std::string config_hash;
  std::string pipeline_json;  // optional provenance
  std::map<std::string, SlotLists> queries;

  const std::vector<RankedWord>* slot(const std::string& key, Slot s) const;
};

ParaphraseLists finalize_paraphrase(const ParaphraseHarvest& harvest,
                                    const std::string& corpus_id,
                                    const std::string& config_hash,
                                    int k_mid = 20, int k_edge = 5);

// TSV: "#meta" headers then "query-key<TAB>slot<TAB>rank<TAB>word<TAB>count",
// sorted by (query-key, slot, rank). read(write(x)) is identity.
void write_paraphrase(std::ostream& out, const ParaphraseLists& lists);
void write_paraphrase_file(const std::string& path,
                           const ParaphraseLists& lists);
ParaphraseLists read_paraphrase(std::istream& in,
                                const std::string& source_name);
ParaphraseLists read_paraphrase_file(const std::string& path);

}  // namespace ngdep
