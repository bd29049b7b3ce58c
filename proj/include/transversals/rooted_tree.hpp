#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace transversals {

/// Node ids are 1-based. In parent arrays the value 0 marks the root.
using NodeId = int;
using NodeSet = std::set<NodeId>;

inline constexpr NodeId kRootSentinel = 0;

enum class TreeErrorKind {
  empty,
  no_root,
  multiple_roots,
  parent_out_of_range,
  cycle,
  invalid_node,
  parse,
};

inline std::string_view to_string(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::empty: return "empty";
    case TreeErrorKind::no_root: return "no_root";
    case TreeErrorKind::multiple_roots: return "multiple_roots";
    case TreeErrorKind::parent_out_of_range: return "parent_out_of_range";
    case TreeErrorKind::cycle: return "cycle";
    case TreeErrorKind::invalid_node: return "invalid_node";
    case TreeErrorKind::parse: return "parse";
  }
  return "unknown";
}

class TreeError : public std::invalid_argument {
 public:
  TreeError(TreeErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  TreeErrorKind kind() const noexcept { return kind_; }

 private:
  TreeErrorKind kind_;
};

/// An immutable rooted tree given by its parent function.
///
/// Construction validates the array: exactly one root, every parent id in
/// range and no cycles. Index order is irrelevant, so a child may carry a
/// smaller id than its parent. Children lists, depths, subtree sizes and an
/// Euler-tour interval per node are cached at construction.
class RootedTree {
 public:
  explicit RootedTree(std::span<const NodeId> parents) : parent_(parents.begin(), parents.end()) {
    const auto n = static_cast<NodeId>(parent_.size());
    if (n == 0) throw TreeError(TreeErrorKind::empty, "parent array is empty");

    root_ = kRootSentinel;
    for (NodeId v = 1; v <= n; ++v) {
      const NodeId p = parent_[v - 1];
      if (p == kRootSentinel) {
        if (root_ != kRootSentinel) {
          throw TreeError(TreeErrorKind::multiple_roots,
                          "multiple roots: nodes " + std::to_string(root_) + " and " + std::to_string(v));
        }
        root_ = v;
      } else if (p < 1 || p > n) {
        throw TreeError(TreeErrorKind::parent_out_of_range,
                        "parent of node " + std::to_string(v) + " is out of range: " + std::to_string(p));
      }
    }
    if (root_ == kRootSentinel) throw TreeError(TreeErrorKind::no_root, "no root (no entry equals 0)");

    children_.assign(n + 1, {});
    for (NodeId v = 1; v <= n; ++v) {
      if (v != root_) children_[parent_[v - 1]].push_back(v);
    }

    // Iterative DFS from the root; anything unreached sits on a cycle.
    depth_.assign(n + 1, 0);
    enter_.assign(n + 1, -1);
    exit_.assign(n + 1, -1);
    size_.assign(n + 1, 1);
    preorder_.reserve(n);
    std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
    int clock = 0;
    enter_[root_] = clock++;
    preorder_.push_back(root_);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < children_[v].size()) {
        const NodeId w = children_[v][next++];
        depth_[w] = depth_[v] + 1;
        enter_[w] = clock++;
        preorder_.push_back(w);
        stack.emplace_back(w, 0);
      } else {
        exit_[v] = clock;
        const NodeId finished = v;
        stack.pop_back();
        if (!stack.empty()) size_[stack.back().first] += size_[finished];
      }
    }
    if (static_cast<NodeId>(preorder_.size()) != n) {
      for (NodeId v = 1; v <= n; ++v) {
        if (enter_[v] < 0) {
          throw TreeError(TreeErrorKind::cycle,
                          "cycle: node " + std::to_string(v) + " does not reach the root");
        }
      }
    }
  }

  explicit RootedTree(std::initializer_list<NodeId> parents)
      : RootedTree(std::span<const NodeId>(parents.begin(), parents.size())) {}

  NodeId size() const noexcept { return static_cast<NodeId>(parent_.size()); }
  NodeId root() const noexcept { return root_; }

  /// Raw parent array, index i holding the parent of node i+1.
  const std::vector<NodeId>& parents() const noexcept { return parent_; }

  bool contains(NodeId v) const noexcept { return v >= 1 && v <= size(); }

  /// Parent of v, or kRootSentinel for the root.
  NodeId parent(NodeId v) const {
    check(v);
    return parent_[v - 1];
  }

  /// Children in ascending id order.
  const std::vector<NodeId>& children(NodeId v) const {
    check(v);
    return children_[v];
  }

  bool is_leaf(NodeId v) const { return children(v).empty(); }

  std::vector<NodeId> leaves() const {
    std::vector<NodeId> out;
    for (NodeId v = 1; v <= size(); ++v) {
      if (children_[v].empty()) out.push_back(v);
    }
    return out;
  }

  NodeId leaf_count() const {
    return static_cast<NodeId>(std::count_if(children_.begin() + 1, children_.end(),
                                             [](const auto& c) { return c.empty(); }));
  }

  NodeId max_children() const {
    std::size_t best = 0;
    for (std::size_t v = 1; v < children_.size(); ++v) best = std::max(best, children_[v].size());
    return static_cast<NodeId>(best);
  }

  int depth(NodeId v) const {
    check(v);
    return depth_[v];
  }

  NodeId subtree_size(NodeId v) const {
    check(v);
    return size_[v];
  }

  /// True iff a lies on the root-to-b path and a != b.
  bool is_proper_ancestor(NodeId a, NodeId b) const {
    check(a);
    check(b);
    return a != b && enter_[a] <= enter_[b] && exit_[b] <= exit_[a];
  }

  /// Every node counts as its own descendant.
  bool is_descendant(NodeId v, NodeId of) const { return v == of || is_proper_ancestor(of, v); }

  NodeSet descendants(NodeId v) const {
    check(v);
    NodeSet out;
    for (int i = enter_[v]; i < exit_[v]; ++i) out.insert(preorder_[i]);
    return out;
  }

  /// Nodes on the path from the root to v, root first.
  std::vector<NodeId> path_from_root(NodeId v) const {
    check(v);
    std::vector<NodeId> path;
    for (NodeId u = v; u != kRootSentinel; u = parent_[u - 1]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Depth-first preorder starting at the root, children in ascending order.
  const std::vector<NodeId>& preorder() const noexcept { return preorder_; }

  friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.parent_ == b.parent_; }

 private:
  void check(NodeId v) const {
    if (!contains(v)) {
      throw TreeError(TreeErrorKind::invalid_node, "invalid node id " + std::to_string(v));
    }
  }

  std::vector<NodeId> parent_;
  NodeId root_ = kRootSentinel;
  std::vector<std::vector<NodeId>> children_;
  std::vector<int> depth_;
  std::vector<int> enter_;
  std::vector<int> exit_;
  std::vector<NodeId> size_;
  std::vector<NodeId> preorder_;
};

inline RootedTree validate(std::span<const NodeId> parents) { return RootedTree(parents); }

/// Parses "0 1 1 2 2" (whitespace separated parent ids).
inline RootedTree parse_tree(std::string_view text) {
  std::vector<NodeId> parents;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value < INT32_MIN || value > INT32_MAX) {
      throw TreeError(TreeErrorKind::parse, "not an integer: '" + token + "'");
    }
    parents.push_back(static_cast<NodeId>(value));
  }
  return RootedTree(parents);
}

inline std::string format_tree(const RootedTree& tree) {
  std::string out;
  for (const NodeId p : tree.parents()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p);
  }
  return out;
}

/// Node set as "{1,3,5}".
inline std::string format_nodes(const NodeSet& nodes) {
  std::string out = "{";
  for (NodeId v : nodes) {
    if (out.size() > 1) out += ',';
    out += std::to_string(v);
  }
  return out + "}";
}

/// Graphviz rendering, edges parent -> child.
inline std::string to_dot(const RootedTree& tree) {
  std::string out = "digraph T {\n";
  for (NodeId v : tree.preorder()) {
    out += "  " + std::to_string(v) + ";\n";
  }
  for (NodeId v : tree.preorder()) {
    for (NodeId w : tree.children(v)) out += "  " + std::to_string(v) + " -> " + std::to_string(w) + ";\n";
  }
  out += "}\n";
  return out;
}

// -- caterpillars ----------------------------------------------------------

/// True iff removing every leaf leaves a rooted tree with exactly one leaf.
/// Trees with at most two nodes count as caterpillars.
inline bool is_caterpillar(const RootedTree& tree) {
  if (tree.size() <= 2) return true;
  int remaining_leaves = 0;
  for (NodeId v = 1; v <= tree.size(); ++v) {
    if (tree.is_leaf(v)) continue;
    const auto& kids = tree.children(v);
    const bool has_internal_child =
        std::any_of(kids.begin(), kids.end(), [&](NodeId w) { return !tree.is_leaf(w); });
    if (!has_internal_child) ++remaining_leaves;
  }
  return remaining_leaves == 1;
}

/// Deepest internal node of a caterpillar: the single leaf left after
/// removing all leaves. For the single-node tree this is the root.
inline NodeId spine_end(const RootedTree& tree) {
  NodeId v = tree.root();
  for (bool moved = true; moved;) {
    moved = false;
    for (NodeId w : tree.children(v)) {
      if (!tree.is_leaf(w)) {
        v = w;
        moved = true;
        break;
      }
    }
  }
  return v;
}

/// Caterpillar whose internal nodes all have exactly d children, except
/// possibly the deepest one, which has at most d.
inline bool is_full_caterpillar(const RootedTree& tree, NodeId d) {
  if (!is_caterpillar(tree) || tree.max_children() > d) return false;
  if (tree.size() == 1) return true;
  const NodeId lowest = spine_end(tree);
  for (NodeId v = 1; v <= tree.size(); ++v) {
    if (v == lowest || tree.is_leaf(v)) continue;
    if (static_cast<NodeId>(tree.children(v).size()) != d) return false;
  }
  return true;
}

// -- constructors ----------------------------------------------------------

inline RootedTree make_path(NodeId n) {
  if (n < 1) throw std::invalid_argument("make_path: n must be >= 1");
  std::vector<NodeId> parents(n);
  for (NodeId v = 1; v <= n; ++v) parents[v - 1] = v - 1;
  return RootedTree(parents);
}

inline RootedTree make_star(NodeId n) {
  if (n < 2) throw std::invalid_argument("make_star: n must be >= 2");
  std::vector<NodeId> parents(n, 1);
  parents[0] = kRootSentinel;
  return RootedTree(parents);
}

/// Spine 1..t with node i+1 under node i. Spine node i < t also carries
/// d-1 leaves, the last spine node carries the remaining r (1 <= r <= d).
/// Leaves are numbered t+1..n grouped by parent in spine order.
inline RootedTree make_full_caterpillar(NodeId n, NodeId d) {
  if (d < 1 || d >= n) throw std::invalid_argument("make_full_caterpillar: need 1 <= d < n");
  const NodeId t = (n - 1 + d - 1) / d;
  const NodeId last = (n - 1) - d * (t - 1);
  std::vector<NodeId> parents;
  parents.reserve(n);
  parents.push_back(kRootSentinel);
  for (NodeId i = 2; i <= t; ++i) parents.push_back(i - 1);
  for (NodeId i = 1; i < t; ++i) parents.insert(parents.end(), d - 1, i);
  parents.insert(parents.end(), last, t);
  return RootedTree(parents);
}

/// Root 1 with children 2..m+1; nodes m+2..n hang as a path below node 2.
inline RootedTree make_leaf_caterpillar(NodeId n, NodeId m) {
  if (m < 1 || m >= n) throw std::invalid_argument("make_leaf_caterpillar: need 1 <= m < n");
  std::vector<NodeId> parents(n, 1);
  parents[0] = kRootSentinel;
  for (NodeId v = m + 2; v <= n; ++v) parents[v - 1] = (v == m + 2) ? 2 : v - 1;
  return RootedTree(parents);
}

// -- canonical codes -------------------------------------------------------

/// Balanced parenthesis code; equal codes exactly for isomorphic rooted trees.
class CanonicalCode {
 public:
  CanonicalCode() = default;
  explicit CanonicalCode(std::string code) : code_(std::move(code)) {}

  const std::string& str() const noexcept { return code_; }
  std::size_t size() const noexcept { return code_.size(); }

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;

 private:
  std::string code_;
};

/// Children's codes are concatenated in ascending lexicographic order, with
/// '(' sorting before ')'.
inline CanonicalCode canonical_code(const RootedTree& tree) {
  std::vector<std::string> code(tree.size() + 1);
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    const auto& kids = tree.children(v);
    std::vector<std::string*> parts;
    parts.reserve(kids.size());
    std::size_t length = 2;
    for (NodeId w : kids) {
      parts.push_back(&code[w]);
      length += code[w].size();
    }
    std::sort(parts.begin(), parts.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
    std::string& out = code[v];
    out.reserve(length);
    out += '(';
    for (std::string* part : parts) {
      out += *part;
      std::string().swap(*part);
    }
    out += ')';
  }
  return CanonicalCode(std::move(code[tree.root()]));
}

inline bool isomorphic(const RootedTree& a, const RootedTree& b) {
  return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

}  // namespace transversals
