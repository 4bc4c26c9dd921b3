#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ngdep {

// Splits on a single delimiter; adjacent delimiters yield empty fields.
std::vector<std::string> split(std::string_view s, char delim);

// Splits on runs of spaces, dropping empty tokens.
std::vector<std::string> split_ws(std::string_view s);

// Parses a non-negative integer; throws DataError naming `what` on junk.
std::uint64_t parse_count(std::string_view s, const std::string& what);
int parse_int(std::string_view s, const std::string& what);

// True if every codepoint of the UTF-8 string is Unicode punctuation
// (general category P*). Empty strings and malformed UTF-8 are not
// punctuation.
bool is_all_punct(std::string_view form);

// Direction of an arc: Left = head precedes argument.
enum class Direction : std::uint8_t { HeadLeft, HeadRight };

inline char direction_char(Direction d) {
  return d == Direction::HeadLeft ? 'L' : 'R';
}

// Surface-distance bins {1,2,3,4,5,6-10,>10} shared by first- and
// second-order features.
std::string distance_bin(int distance);

}  // namespace ngdep
