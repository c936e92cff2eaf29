#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gsa/error.hpp"

namespace gsa {

// Sorted, duplicate-free point indices.
using IndexSet = std::vector<std::size_t>;

namespace sets {

inline IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const IndexSet& s, std::size_t x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet unite(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet range(std::size_t n) {
  IndexSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline IndexSet from_mask(std::uint64_t mask) {
  IndexSet out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i);
  return out;
}

inline std::uint64_t to_mask(const IndexSet& s) {
  std::uint64_t m = 0;
  for (auto i : s) m |= std::uint64_t(1) << i;
  return m;
}

}  // namespace sets

class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!index_.emplace(labels_[i], i).second)
        fail(ErrorKind::IllFormed, "duplicate point label '" + labels_[i] + "'");
  }

  static std::shared_ptr<const FiniteSpace> make(std::vector<std::string> labels) {
    return std::make_shared<const FiniteSpace>(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  IndexSet all() const { return sets::range(size()); }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) fail(ErrorKind::InstanceMismatch, "unknown point '" + label + "'");
    return it->second;
  }

  bool has(const std::string& label) const { return index_.count(label) != 0; }

  IndexSet subset(const std::vector<std::string>& labels) const {
    IndexSet out;
    for (auto& l : labels) out.push_back(index_of(l));
    return sets::normalized(std::move(out));
  }

  std::string format(const IndexSet& s) const {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + label(s[i]);
    return out + "}";
  }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace gsa
