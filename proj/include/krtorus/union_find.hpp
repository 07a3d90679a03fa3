#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace krtorus {

class UnionFind {
 public:
  explicit UnionFind(std::size_t size) : parents_(size), ranks_(size, 0) {
    std::iota(parents_.begin(), parents_.end(), std::size_t{0});
  }

  std::size_t size() const { return parents_.size(); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parents_[root] != root) root = parents_[root];
    while (parents_[x] != root) {
      std::size_t parent = parents_[x];
      parents_[x] = root;
      x = parent;
    }
    return root;
  }

  bool join(std::size_t x, std::size_t y) {
    std::size_t a = find(x);
    std::size_t b = find(y);
    if (a == b) return false;
    if (ranks_[a] < ranks_[b]) std::swap(a, b);
    parents_[b] = a;
    if (ranks_[a] == ranks_[b]) ++ranks_[a];
    return true;
  }

  bool joined(std::size_t x, std::size_t y) { return find(x) == find(y); }

  /// Dense labels 0..k-1 assigned in order of first appearance by index.
  std::vector<int> labels(int* count = nullptr) {
    std::vector<int> label(parents_.size(), -1);
    std::vector<int> root_label(parents_.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < parents_.size(); ++i) {
      std::size_t r = find(i);
      if (root_label[r] < 0) root_label[r] = next++;
      label[i] = root_label[r];
    }
    if (count) *count = next;
    return label;
  }

 private:
  std::vector<std::size_t> parents_;
  std::vector<unsigned> ranks_;
};

}  // namespace krtorus
