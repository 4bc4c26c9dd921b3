#include "ngdep/text.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "ngdep/errors.hpp"

namespace ngdep {

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_count(std::string_view s, const std::string& what) {
  std::uint64_t value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || s.empty())
    throw DataError("expected a non-negative integer for " + what + ", got '" +
                    std::string(s) + "'");
  return value;
}

int parse_int(std::string_view s, const std::string& what) {
  int value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || s.empty())
    throw DataError("expected an integer for " + what + ", got '" +
                    std::string(s) + "'");
  return value;
}

namespace {

struct CpRange {
  std::uint32_t lo;
  std::uint32_t hi;
};

constexpr CpRange kPunctRanges[] = {
#include "punct_ranges.inc"
};

bool is_punct_codepoint(std::uint32_t cp) {
  auto it = std::upper_bound(
      std::begin(kPunctRanges), std::end(kPunctRanges), cp,
      [](std::uint32_t v, const CpRange& r) { return v < r.lo; });
  if (it == std::begin(kPunctRanges)) return false;
  --it;
  return cp <= it->hi;
}

// Decodes one UTF-8 codepoint at `i`; returns false on malformed input.
bool next_codepoint(std::string_view s, std::size_t& i, std::uint32_t& cp) {
  const auto byte = [&](std::size_t k) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[k]));
  };
  std::uint32_t b0 = byte(i);
  std::size_t len;
  if (b0 < 0x80) {
    cp = b0;
    len = 1;
  } else if ((b0 >> 5) == 0x6) {
    cp = b0 & 0x1F;
    len = 2;
  } else if ((b0 >> 4) == 0xE) {
    cp = b0 & 0x0F;
    len = 3;
  } else if ((b0 >> 3) == 0x1E) {
    cp = b0 & 0x07;
    len = 4;
  } else {
    return false;
  }
  if (i + len > s.size()) return false;
  for (std::size_t k = 1; k < len; ++k) {
    std::uint32_t b = byte(i + k);
    if ((b >> 6) != 0x2) return false;
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return true;
}

}  // namespace

bool is_all_punct(std::string_view form) {
  if (form.empty()) return false;
  std::size_t i = 0;
  while (i < form.size()) {
    std::uint32_t cp = 0;
    if (!next_codepoint(form, i, cp)) return false;
    if (!is_punct_codepoint(cp)) return false;
  }
  return true;
}

std::string distance_bin(int distance) {
  if (distance < 1) throw DataError("distance must be >= 1");
  if (distance <= 5) return std::string(1, static_cast<char>('0' + distance));
  if (distance <= 10) return "6-10";
  return ">10";
}

}  // namespace ngdep
