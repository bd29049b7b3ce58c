#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "transversals/counting.hpp"
#include "transversals/rooted_tree.hpp"

namespace transversals {

enum class TransformErrorKind {
  invalid_node,
  x_is_root,
  y_not_proper_ancestor,
  x_is_leaf,
  y_not_leaf,
  y_not_below_sibling,
  tree_mismatch,
};

inline std::string_view to_string(TransformErrorKind kind) {
  switch (kind) {
    case TransformErrorKind::invalid_node: return "invalid_node";
    case TransformErrorKind::x_is_root: return "x_is_root";
    case TransformErrorKind::y_not_proper_ancestor: return "y_not_proper_ancestor";
    case TransformErrorKind::x_is_leaf: return "x_is_leaf";
    case TransformErrorKind::y_not_leaf: return "y_not_leaf";
    case TransformErrorKind::y_not_below_sibling: return "y_not_below_sibling";
    case TransformErrorKind::tree_mismatch: return "tree_mismatch";
  }
  return "unknown";
}

class TransformError : public std::invalid_argument {
 public:
  TransformError(TransformErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  TransformErrorKind kind() const noexcept { return kind_; }

 private:
  TransformErrorKind kind_;
};

enum class TransformKind { lift, shed };

inline std::string_view to_string(TransformKind kind) { return kind == TransformKind::lift ? "lift" : "shed"; }

struct TransformStep {
  TransformKind kind;
  NodeId x;
  NodeId y;
  RootedTree before;
  RootedTree after;
};

namespace detail {

inline void require_node(const RootedTree& tree, NodeId v, const char* name) {
  if (!tree.contains(v)) {
    throw TransformError(TransformErrorKind::invalid_node,
                         std::string(name) + " = " + std::to_string(v) + " is not a node of the tree");
  }
}

inline void require_non_root(const RootedTree& tree, NodeId x, const char* name = "x") {
  require_node(tree, x, name);
  if (x == tree.root()) {
    throw TransformError(TransformErrorKind::x_is_root, std::string(name) + " = " + std::to_string(x) + " is the root");
  }
}

/// The sibling of x that y lies strictly below, or kRootSentinel.
inline NodeId sibling_above(const RootedTree& tree, NodeId x, NodeId y) {
  for (NodeId s : tree.children(tree.parent(x))) {
    if (s != x && tree.is_proper_ancestor(s, y)) return s;
  }
  return kRootSentinel;
}

/// {p(v)} together with every leaf outside the subtree of p(v).
inline NodeSet parent_and_outside_leaves(const RootedTree& tree, NodeId v) {
  const NodeId p = tree.parent(v);
  NodeSet out{p};
  for (NodeId leaf : tree.leaves()) {
    if (!tree.is_descendant(leaf, p)) out.insert(leaf);
  }
  return out;
}

}  // namespace detail

// -- lift ------------------------------------------------------------------

inline void check_lift(const RootedTree& tree, NodeId x, NodeId y) {
  detail::require_non_root(tree, x);
  detail::require_node(tree, y, "y");
  const NodeId px = tree.parent(x);
  if (!tree.is_proper_ancestor(y, px)) {
    throw TransformError(TransformErrorKind::y_not_proper_ancestor,
                         "y = " + std::to_string(y) + " is not a proper ancestor of p(x) = " + std::to_string(px));
  }
}

/// Reattaches x (with its subtree) to y, a proper ancestor of p(x).
inline RootedTree lift(const RootedTree& tree, NodeId x, NodeId y) {
  check_lift(tree, x, y);
  std::vector<NodeId> parents = tree.parents();
  parents[x - 1] = y;
  return RootedTree(parents);
}

inline NodeSet lift_witness(const RootedTree& tree, NodeId x) {
  detail::require_non_root(tree, x);
  return detail::parent_and_outside_leaves(tree, x);
}

// -- shed ------------------------------------------------------------------

inline void check_shed(const RootedTree& tree, NodeId x, NodeId y) {
  detail::require_non_root(tree, x);
  detail::require_node(tree, y, "y");
  if (tree.is_leaf(x)) {
    throw TransformError(TransformErrorKind::x_is_leaf, "x = " + std::to_string(x) + " is a leaf");
  }
  if (!tree.is_leaf(y)) {
    throw TransformError(TransformErrorKind::y_not_leaf, "y = " + std::to_string(y) + " is not a leaf");
  }
  if (detail::sibling_above(tree, x, y) == kRootSentinel) {
    throw TransformError(TransformErrorKind::y_not_below_sibling,
                         "y = " + std::to_string(y) + " is not a proper descendant of a sibling of x = " +
                             std::to_string(x));
  }
}

/// Moves every child of x under y; x becomes a leaf and y internal.
inline RootedTree shed(const RootedTree& tree, NodeId x, NodeId y) {
  check_shed(tree, x, y);
  std::vector<NodeId> parents = tree.parents();
  for (NodeId z : tree.children(x)) parents[z - 1] = y;
  return RootedTree(parents);
}

inline NodeSet shed_witness(const RootedTree& tree, NodeId y) {
  detail::require_non_root(tree, y, "y");
  return detail::parent_and_outside_leaves(tree, y);
}

/// The map f from node sets of shed(T,x,y) to node sets of T: identity when
/// the set meets the root-to-y path of the shed tree, otherwise x is swapped
/// for y.
class ShedInjection {
 public:
  ShedInjection(const RootedTree& tree, const RootedTree& shed_tree, NodeId x, NodeId y)
      : n_(tree.size()), x_(x), y_(y) {
    if (!(shed(tree, x, y) == shed_tree)) {
      throw TransformError(TransformErrorKind::tree_mismatch, "T' is not shed(T, x, y)");
    }
    path_ = shed_tree.path_from_root(y);
    if (n_ <= kMaxMaskNodes) {
      for (NodeId u : path_) path_mask_ |= NodeMask{1} << (u - 1);
    }
  }

  NodeSet operator()(const NodeSet& set) const {
    for (NodeId v : set) {
      if (v < 1 || v > n_) throw TreeError(TreeErrorKind::invalid_node, "invalid node id " + std::to_string(v));
    }
    for (NodeId u : path_) {
      if (set.contains(u)) return set;
    }
    NodeSet out = set;
    out.erase(x_);
    out.insert(y_);
    return out;
  }

  NodeMask operator()(NodeMask set) const noexcept {
    if (set & path_mask_) return set;
    return (set & ~(NodeMask{1} << (x_ - 1))) | (NodeMask{1} << (y_ - 1));
  }

 private:
  NodeId n_;
  NodeId x_;
  NodeId y_;
  std::vector<NodeId> path_;
  NodeMask path_mask_ = 0;
};

inline NodeSet shed_injection(const RootedTree& tree, const RootedTree& shed_tree, NodeId x, NodeId y,
                              const NodeSet& set) {
  return ShedInjection(tree, shed_tree, x, y)(set);
}

// -- pair enumeration -----------------------------------------------------

using NodePair = std::pair<NodeId, NodeId>;

/// All (x, y) accepted by lift, lexicographic.
inline std::vector<NodePair> valid_lift_pairs(const RootedTree& tree) {
  std::vector<NodePair> pairs;
  for (NodeId x = 1; x <= tree.size(); ++x) {
    if (x == tree.root()) continue;
    const NodeId px = tree.parent(x);
    for (NodeId y = 1; y <= tree.size(); ++y) {
      if (tree.is_proper_ancestor(y, px)) pairs.emplace_back(x, y);
    }
  }
  return pairs;
}

/// All (x, y) accepted by shed, lexicographic.
inline std::vector<NodePair> valid_shed_pairs(const RootedTree& tree) {
  std::vector<NodePair> pairs;
  for (NodeId x = 1; x <= tree.size(); ++x) {
    if (x == tree.root() || tree.is_leaf(x)) continue;
    for (NodeId y = 1; y <= tree.size(); ++y) {
      if (tree.is_leaf(y) && detail::sibling_above(tree, x, y) != kRootSentinel) pairs.emplace_back(x, y);
    }
  }
  return pairs;
}

inline TransformStep apply_transform(const RootedTree& tree, TransformKind kind, NodeId x, NodeId y) {
  RootedTree after = kind == TransformKind::lift ? lift(tree, x, y) : shed(tree, x, y);
  return TransformStep{kind, x, y, tree, std::move(after)};
}

}  // namespace transversals
