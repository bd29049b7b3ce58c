#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "transversals/rooted_tree.hpp"

namespace transversals {

using BigInt = boost::multiprecision::cpp_int;

/// c[k] = number of transversals of size k, for k = 0..n.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(std::vector<BigInt> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw std::invalid_argument("CountVector needs at least one entry");
  }

  /// Node count of the tree the vector describes.
  NodeId n() const noexcept { return static_cast<NodeId>(counts_.size()) - 1; }

  const BigInt& operator[](std::size_t k) const { return counts_.at(k); }
  BigInt& operator[](std::size_t k) { return counts_.at(k); }

  const std::vector<BigInt>& values() const noexcept { return counts_; }
  auto begin() const noexcept { return counts_.begin(); }
  auto end() const noexcept { return counts_.end(); }

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  std::vector<BigInt> counts_;
};

/// "0,1,5,9,5,1"
inline std::string format_counts(const CountVector& cv) {
  std::string out;
  for (const auto& c : cv) {
    if (!out.empty()) out += ',';
    out += c.str();
  }
  return out;
}

inline CountVector parse_counts(std::string_view text) {
  std::vector<BigInt> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string token(text.substr(start, comma - start));
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad count entry: '" + token + "'");
    }
    values.emplace_back(token);
    start = comma + 1;
  }
  return CountVector(std::move(values));
}

inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::out_of_range("binomial(" + std::to_string(n) + ", " + std::to_string(k) + "): need 0 <= k <= n");
  }
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

// -- bitmask view ----------------------------------------------------------

/// Node subsets as bitmasks, bit v-1 standing for node v.
using NodeMask = std::uint64_t;
inline constexpr NodeId kMaxMaskNodes = 64;

inline NodeMask to_mask(const RootedTree& tree, const NodeSet& nodes) {
  NodeMask mask = 0;
  for (NodeId v : nodes) {
    if (!tree.contains(v)) {
      throw TreeError(TreeErrorKind::invalid_node, "invalid node id " + std::to_string(v));
    }
    mask |= NodeMask{1} << (v - 1);
  }
  return mask;
}

inline NodeSet from_mask(NodeMask mask) {
  NodeSet nodes;
  for (; mask != 0; mask &= mask - 1) nodes.insert(std::countr_zero(mask) + 1);
  return nodes;
}

/// Root-to-leaf paths as bitmasks; a set is a transversal iff it meets each.
class LeafPaths {
 public:
  explicit LeafPaths(const RootedTree& tree) {
    if (tree.size() > kMaxMaskNodes) throw std::length_error("LeafPaths: tree exceeds 64 nodes");
    std::vector<NodeMask> upto(tree.size() + 1, 0);
    for (NodeId v : tree.preorder()) {
      const NodeId p = tree.parent(v);
      upto[v] = (p == kRootSentinel ? 0 : upto[p]) | (NodeMask{1} << (v - 1));
      if (tree.is_leaf(v)) paths_.push_back(upto[v]);
    }
  }

  bool covers(NodeMask set) const noexcept {
    for (NodeMask path : paths_) {
      if ((path & set) == 0) return false;
    }
    return true;
  }

  const std::vector<NodeMask>& paths() const noexcept { return paths_; }

 private:
  std::vector<NodeMask> paths_;
};

// -- transversals ----------------------------------------------------------

inline bool is_transversal(const RootedTree& tree, const NodeSet& nodes) {
  for (NodeId v : nodes) {
    if (!tree.contains(v)) {
      throw TreeError(TreeErrorKind::invalid_node, "invalid node id " + std::to_string(v));
    }
  }
  for (NodeId leaf : tree.leaves()) {
    bool met = false;
    for (NodeId u = leaf; u != kRootSentinel && !met; u = tree.parent(u)) met = nodes.contains(u);
    if (!met) return false;
  }
  return true;
}

inline constexpr NodeId kDefaultOracleLimit = 20;

/// Counts transversals by testing every subset of the node set.
inline CountVector count_by_enumeration(const RootedTree& tree, NodeId limit = kDefaultOracleLimit) {
  const NodeId n = tree.size();
  if (n > limit || n >= kMaxMaskNodes) {
    throw std::length_error("count_by_enumeration: n = " + std::to_string(n) + " exceeds oracle limit " +
                            std::to_string(limit));
  }
  const LeafPaths paths(tree);
  std::vector<std::uint64_t> tally(n + 1, 0);
  const NodeMask end = NodeMask{1} << n;
  for (NodeMask set = 0; set < end; ++set) {
    if (paths.covers(set)) ++tally[std::popcount(set)];
  }
  return CountVector(std::vector<BigInt>(tally.begin(), tally.end()));
}

namespace detail {

using Poly = std::vector<BigInt>;

inline Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace detail

/// Subtree polynomial DP. For a leaf P_v = x; for an internal node
/// P_v = x (1+x)^(size(v)-1) + prod_w P_w over children w. The first term
/// counts covering sets containing v, the second those avoiding v.
inline CountVector count_transversals(const RootedTree& tree) {
  const NodeId n = tree.size();

  // Pascal rows 0..n-1 for the (1+x)^s terms.
  std::vector<detail::Poly> pascal(n);
  pascal[0] = {1};
  for (NodeId s = 1; s < n; ++s) {
    pascal[s].assign(s + 1, 1);
    for (NodeId j = 1; j < s; ++j) pascal[s][j] = pascal[s - 1][j - 1] + pascal[s - 1][j];
  }

  std::vector<detail::Poly> poly(n + 1);
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    const auto& kids = tree.children(v);
    detail::Poly p;
    if (kids.empty()) {
      p = {0, 1};
    } else {
      detail::Poly avoid{1};
      for (NodeId w : kids) {
        avoid = detail::multiply(avoid, poly[w]);
        detail::Poly().swap(poly[w]);
      }
      const NodeId s = tree.subtree_size(v);
      p.assign(s + 1, 0);
      for (NodeId j = 0; j < s; ++j) p[j + 1] = pascal[s - 1][j];
      for (std::size_t j = 0; j < avoid.size(); ++j) p[j] += avoid[j];
    }
    poly[v] = std::move(p);
  }
  auto& top = poly[tree.root()];
  top.resize(n + 1, 0);
  return CountVector(std::move(top));
}

/// Any function mapping a tree to its count vector.
using Counter = std::function<CountVector(const RootedTree&)>;

// -- binomial sandwich -----------------------------------------------------

struct SandwichResult {
  bool holds = true;
  bool all_upper_attained = true;
  bool all_lower_attained = true;
  /// k in 1..n-2 where a bound fails.
  std::vector<NodeId> failing_k;
};

/// binom(n-1,k-1) <= c[k] <= binom(n,k) for k = 1..n-2.
inline SandwichResult sandwich_check(const RootedTree& tree, const CountVector& cv) {
  const NodeId n = tree.size();
  if (n < 2) throw std::invalid_argument("sandwich_check: needs n >= 2");
  if (cv.n() != n) throw std::invalid_argument("sandwich_check: count vector does not match the tree size");
  SandwichResult result;
  for (NodeId k = 1; k <= n - 2; ++k) {
    const BigInt lower = binomial(n - 1, k - 1);
    const BigInt upper = binomial(n, k);
    if (cv[k] < lower || cv[k] > upper) {
      result.holds = false;
      result.failing_k.push_back(k);
    }
    if (cv[k] != upper) result.all_upper_attained = false;
    if (cv[k] != lower) result.all_lower_attained = false;
  }
  return result;
}

// -- dominance -------------------------------------------------------------

enum class Dominance { strictly_succeeds, equal, strictly_preceded, incomparable };

inline std::string_view to_string(Dominance d) {
  switch (d) {
    case Dominance::strictly_succeeds: return "strictly_succeeds";
    case Dominance::equal: return "equal";
    case Dominance::strictly_preceded: return "strictly_preceded";
    case Dominance::incomparable: return "incomparable";
  }
  return "unknown";
}

struct DominanceVerdict {
  Dominance relation = Dominance::equal;
  /// Indices k with A[k] != B[k], ascending.
  std::vector<NodeId> strict;
};

inline DominanceVerdict dominance(const CountVector& a, const CountVector& b) {
  if (a.n() != b.n()) throw std::invalid_argument("dominance: count vectors have different n");
  DominanceVerdict verdict;
  bool above = false;
  bool below = false;
  for (NodeId k = 0; k <= a.n(); ++k) {
    if (a[k] == b[k]) continue;
    (a[k] > b[k] ? above : below) = true;
    verdict.strict.push_back(k);
  }
  if (above && below) {
    verdict.relation = Dominance::incomparable;
  } else if (above) {
    verdict.relation = Dominance::strictly_succeeds;
  } else if (below) {
    verdict.relation = Dominance::strictly_preceded;
  }
  return verdict;
}

/// "strictly_succeeds k=[1,2,3]"
inline std::string format_verdict(const DominanceVerdict& verdict) {
  std::string out(to_string(verdict.relation));
  out += " k=[";
  for (std::size_t i = 0; i < verdict.strict.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(verdict.strict[i]);
  }
  out += ']';
  return out;
}

}  // namespace transversals
