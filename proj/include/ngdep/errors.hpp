#pragma once

#include <stdexcept>
#include <string>

namespace ngdep {

// Bad command lines, missing tables for enabled feature groups, incompatible
// metadata. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (treebanks, corpus lines, tables). CLI maps this to
// exit code 2. Where possible the message carries "file:line".
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ngdep
