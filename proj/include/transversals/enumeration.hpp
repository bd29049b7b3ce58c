#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "transversals/rooted_tree.hpp"

namespace transversals {

/// Rooted trees on n nodes, optionally with at most d children per node
/// and at most m leaves.
struct TreeClassConstraint {
  NodeId n = 1;
  std::optional<NodeId> max_children;
  std::optional<NodeId> max_leaves;

  void validate() const {
    if (n < 1) throw std::invalid_argument("tree class: n must be >= 1");
    const auto check_bound = [this](const std::optional<NodeId>& bound, const char* name) {
      if (!bound) return;
      if (*bound < 1 || (n >= 2 && *bound > n - 1)) {
        throw std::invalid_argument(std::string("tree class: ") + name + " must lie in 1..n-1");
      }
    };
    check_bound(max_children, "max_children");
    check_bound(max_leaves, "max_leaves");
  }

  bool admits(const RootedTree& tree) const {
    if (tree.size() != n) return false;
    if (max_children && tree.max_children() > *max_children) return false;
    if (max_leaves && tree.leaf_count() > *max_leaves) return false;
    return true;
  }
};

/// Streams one tree per isomorphism class, in the successor order of
/// canonical level sequences: the path first, the star last.
///
/// A level sequence lists node depths (root = 1) in preorder with subtrees
/// in non-increasing order. The successor takes the last position p with
/// level > 2, its parent q, and refills positions p.. by repeating the
/// block q..p-1 cyclically.
class TreeStream {
 public:
  explicit TreeStream(TreeClassConstraint constraint) : constraint_(std::move(constraint)) {
    constraint_.validate();
    levels_.resize(constraint_.n);
    for (NodeId i = 0; i < constraint_.n; ++i) levels_[i] = i + 1;
  }

  /// Next admissible tree, or nullopt once the class is exhausted.
  std::optional<RootedTree> next() {
    while (!done_) {
      RootedTree tree = current();
      advance();
      if (constraint_.admits(tree)) return tree;
    }
    return std::nullopt;
  }

  const TreeClassConstraint& constraint() const noexcept { return constraint_; }

 private:
  RootedTree current() const {
    const NodeId n = constraint_.n;
    std::vector<NodeId> parents(n, kRootSentinel);
    std::vector<NodeId> last_at_level(n + 2, kRootSentinel);
    for (NodeId i = 0; i < n; ++i) {
      const int level = levels_[i];
      parents[i] = level == 1 ? kRootSentinel : last_at_level[level - 1];
      last_at_level[level] = i + 1;
    }
    return RootedTree(parents);
  }

  void advance() {
    const NodeId n = constraint_.n;
    NodeId p = n - 1;
    while (p >= 0 && levels_[p] <= 2) --p;
    if (p < 1) {
      done_ = true;
      return;
    }
    NodeId q = p - 1;
    while (levels_[q] != levels_[p] - 1) --q;
    const NodeId shift = p - q;
    for (NodeId i = p; i < n; ++i) levels_[i] = levels_[i - shift];
  }

  TreeClassConstraint constraint_;
  std::vector<int> levels_;
  bool done_ = false;
};

template <typename Fn>
void for_each_rooted_tree(const TreeClassConstraint& constraint, Fn&& fn) {
  TreeStream stream(constraint);
  while (auto tree = stream.next()) fn(*tree);
}

inline std::vector<RootedTree> rooted_trees(const TreeClassConstraint& constraint) {
  std::vector<RootedTree> out;
  for_each_rooted_tree(constraint, [&](const RootedTree& t) { out.push_back(t); });
  return out;
}

inline std::uint64_t class_count(const TreeClassConstraint& constraint) {
  std::uint64_t count = 0;
  for_each_rooted_tree(constraint, [&](const RootedTree&) { ++count; });
  return count;
}

}  // namespace transversals
