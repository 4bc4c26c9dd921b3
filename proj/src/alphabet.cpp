#include "ngdep/alphabet.hpp"

#include <algorithm>

namespace ngdep {

int FeatureAlphabet::lookup_or_add(const std::string& feature) {
  auto it = index_.find(feature);
  if (it != index_.end()) return it->second;
  if (frozen_) return -1;
  int id = static_cast<int>(strings_.size());
  index_.emplace(feature, id);
  strings_.push_back(feature);
  return id;
}

int FeatureAlphabet::lookup(const std::string& feature) const {
  auto it = index_.find(feature);
  return it == index_.end() ? -1 : it->second;
}

void FeatureVector::add(int index, double value) {
  if (index < 0) return;  // unseen feature under a frozen alphabet
  entries_.emplace_back(index, value);
  sorted_ = false;
}

void FeatureVector::normalize() const {
  if (sorted_) return;
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries_.size();) {
    int idx = entries_[i].first;
    double sum = 0;
    while (i < entries_.size() && entries_[i].first == idx)
      sum += entries_[i++].second;
    entries_[out++] = {idx, sum};
  }
  entries_.resize(out);
  sorted_ = true;
}

double FeatureVector::dot(const std::vector<double>& weights) const {
  normalize();
  double sum = 0;
  for (const auto& [idx, value] : entries_)
    if (idx < static_cast<int>(weights.size())) sum += weights[idx] * value;
  return sum;
}

FeatureVector FeatureVector::difference(const FeatureVector& a,
                                        const FeatureVector& b) {
  a.normalize();
  b.normalize();
  FeatureVector out;
  std::size_t i = 0, j = 0;
  while (i < a.entries_.size() || j < b.entries_.size()) {
    if (j >= b.entries_.size() ||
        (i < a.entries_.size() && a.entries_[i].first < b.entries_[j].first)) {
      out.entries_.push_back(a.entries_[i++]);
    } else if (i >= a.entries_.size() ||
               b.entries_[j].first < a.entries_[i].first) {
      out.entries_.emplace_back(b.entries_[j].first, -b.entries_[j].second);
      ++j;
    } else {
      double v = a.entries_[i].second - b.entries_[j].second;
      if (v != 0.0) out.entries_.emplace_back(a.entries_[i].first, v);
      ++i;
      ++j;
    }
  }
  out.sorted_ = true;
  return out;
}

void FeatureVector::scale_into(std::vector<double>& weights,
                               double factor) const {
  normalize();
  for (const auto& [idx, value] : entries_) {
    if (idx >= static_cast<int>(weights.size())) weights.resize(idx + 1, 0.0);
    weights[idx] += factor * value;
  }
}

double FeatureVector::dot(const FeatureVector& other) const {
  normalize();
  other.normalize();
  double sum = 0;
  std::size_t i = 0, j = 0;
  while (i < entries_.size() && j < other.entries_.size()) {
    if (entries_[i].first < other.entries_[j].first) {
      ++i;
    } else if (other.entries_[j].first < entries_[i].first) {
      ++j;
    } else {
      sum += entries_[i].second * other.entries_[j].second;
      ++i;
      ++j;
    }
  }
  return sum;
}

}  // namespace ngdep
