#pragma once

#include <set>
#include <string>

#include "ngdep/conll.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

// Single source of truth for "punctuation token", shared by the nopunc
// training loss and evaluation. Default: the form consists entirely of
// Unicode punctuation codepoints; a non-empty tag set overrides that with
// a tag membership test.
struct PunctPolicy {
  std::set<std::string> tag_override;

  bool is_punct(const Token& t) const {
    if (!tag_override.empty()) return tag_override.count(t.fpos) != 0;
    return is_all_punct(t.form);
  }
};

}  // namespace ngdep
