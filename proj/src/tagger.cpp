#include "ngdep/tagger.hpp"

#include <istream>
#include <ostream>

#include "ngdep/errors.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

UnigramTagger UnigramTagger::train(const std::vector<Sentence>& sentences) {
  if (sentences.empty())
    throw DataError("cannot train a unigram tagger on an empty treebank");
  std::map<std::string, std::map<std::string, std::uint64_t>> counts;
  std::map<std::string, std::uint64_t> tag_totals;
  for (const Sentence& s : sentences) {
    for (const Token& t : s.tokens) {
      ++counts[t.form][t.fpos];
      ++tag_totals[t.fpos];
    }
  }
  UnigramTagger tagger;
  for (const auto& [word, tag_counts] : counts) {
    const std::string* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [tag, count] : tag_counts) {
      // std::map iterates tags in string order, so ">" keeps the first
      // (smallest) tag on ties.
      if (count > best_count) {
        best = &tag;
        best_count = count;
      }
    }
    tagger.tags_[word] = *best;
  }
  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [tag, count] : tag_totals) {
    if (count > best_count) {
      best = &tag;
      best_count = count;
    }
  }
  tagger.default_tag_ = *best;
  return tagger;
}

const std::string& UnigramTagger::tag(const std::string& word) const {
  auto it = tags_.find(word);
  return it == tags_.end() ? default_tag_ : it->second;
}

void UnigramTagger::write(std::ostream& out) const {
  out << "#default\t" << default_tag_ << '\n';
  for (const auto& [word, tag] : tags_) out << word << '\t' << tag << '\n';
}

UnigramTagger UnigramTagger::read(std::istream& in,
                                  const std::string& source_name) {
  UnigramTagger tagger;
  std::string line;
  int line_no = 0;
  bool have_default = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2)
      throw DataError(source_name + ":" + std::to_string(line_no) +
                      ": expected word<TAB>tag");
    if (cols[0] == "#default") {
      tagger.default_tag_ = cols[1];
      have_default = true;
    } else {
      tagger.tags_[cols[0]] = cols[1];
    }
  }
  if (!have_default)
    throw DataError(source_name + ": missing #default tag line");
  return tagger;
}

}  // namespace ngdep
