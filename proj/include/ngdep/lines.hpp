#pragma once

#include <functional>
#include <memory>
#include <string>

namespace ngdep {

// Sequential line reader over a plain or gzip-compressed (.gz) text file.
class LineReader {
 public:
  explicit LineReader(const std::string& path);
  ~LineReader();
  LineReader(LineReader&&) noexcept;
  LineReader& operator=(LineReader&&) noexcept;

  // Fills `line` (without the trailing newline / CR); false at EOF.
  bool next(std::string& line);
  const std::string& path() const;
  int line_no() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ngdep
