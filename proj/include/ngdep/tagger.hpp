#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ngdep/conll.hpp"

namespace ngdep {

// Word -> most frequent fine POS in the training data; unseen words fall
// back to the globally most frequent tag. Ties break on tag string order,
// so training is deterministic.
class UnigramTagger {
 public:
  static UnigramTagger train(const std::vector<Sentence>& sentences);

  const std::string& tag(const std::string& word) const;
  const std::string& default_tag() const { return default_tag_; }
  std::size_t vocabulary_size() const { return tags_.size(); }

  // "word<TAB>tag" rows plus a "#default<TAB>tag" header; round trips.
  void write(std::ostream& out) const;
  static UnigramTagger read(std::istream& in, const std::string& source_name);

 private:
  std::map<std::string, std::string> tags_;
  std::string default_tag_;
};

}  // namespace ngdep
