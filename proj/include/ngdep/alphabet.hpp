#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace ngdep {

// Bidirectional feature-string <-> dense index map. No hashing: indices are
// exact and assigned in first-seen order until frozen.
class FeatureAlphabet {
 public:
  // Returns the index, adding the string unless frozen; -1 when frozen and
  // unseen.
  int lookup_or_add(const std::string& feature);
  int lookup(const std::string& feature) const;  // -1 when unseen

  const std::string& feature(int index) const { return strings_[index]; }
  int size() const { return static_cast<int>(strings_.size()); }
  bool frozen() const { return frozen_; }
  void freeze() { frozen_ = true; }

  const std::vector<std::string>& strings() const { return strings_; }

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> strings_;
  bool frozen_ = false;
};

// Sparse feature vector; duplicate emissions accumulate into one entry.
class FeatureVector {
 public:
  void add(int index, double value = 1.0);
  double dot(const std::vector<double>& weights) const;
  // a - b, for building update directions.
  static FeatureVector difference(const FeatureVector& a,
                                  const FeatureVector& b);
  void scale_into(std::vector<double>& weights, double factor) const;
  double dot(const FeatureVector& other) const;

  const std::vector<std::pair<int, double>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

 private:
  void normalize() const;

  mutable std::vector<std::pair<int, double>> entries_;
  mutable bool sorted_ = true;
};

}  // namespace ngdep
