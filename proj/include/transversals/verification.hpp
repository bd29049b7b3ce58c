#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "transversals/counting.hpp"
#include "transversals/enumeration.hpp"
#include "transversals/rooted_tree.hpp"
#include "transversals/transforms.hpp"

namespace transversals {

enum class VerificationTarget {
  boundary,
  sandwich,
  attainment,
  theorem_main,
  theorem_leaves,
  lemma_lift,
  lemma_shed,
  shed_injectivity,
  lemmas,
};

inline std::string_view to_string(VerificationTarget target) {
  switch (target) {
    case VerificationTarget::boundary: return "boundary";
    case VerificationTarget::sandwich: return "sandwich";
    case VerificationTarget::attainment: return "attainment";
    case VerificationTarget::theorem_main: return "theorem_main";
    case VerificationTarget::theorem_leaves: return "theorem_leaves";
    case VerificationTarget::lemma_lift: return "lemma_lift";
    case VerificationTarget::lemma_shed: return "lemma_shed";
    case VerificationTarget::shed_injectivity: return "shed_injectivity";
    case VerificationTarget::lemmas: return "lemmas";
  }
  return "unknown";
}

struct Violation {
  std::string tree;
  std::optional<std::string> other_tree;
  std::vector<NodeId> k;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
  VerificationTarget target = VerificationTarget::boundary;
  NodeId n = 0;  // n itself for theorem targets, the upper end of the range otherwise
  std::optional<NodeId> d;
  std::optional<NodeId> m;
  std::uint64_t trees_checked = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<Violation> violations;
  std::chrono::milliseconds elapsed{0};

  bool passed() const noexcept { return violations.empty(); }
};

struct VerifyOptions {
  unsigned jobs = 1;
  bool fail_fast = false;
  Counter counter = count_transversals;
};

inline nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json params;
  params["n"] = report.n;
  params["d"] = report.d ? nlohmann::ordered_json(*report.d) : nlohmann::ordered_json(nullptr);
  params["m"] = report.m ? nlohmann::ordered_json(*report.m) : nlohmann::ordered_json(nullptr);

  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json rec;
    rec["tree"] = v.tree;
    rec["other_tree"] = v.other_tree ? nlohmann::ordered_json(*v.other_tree) : nlohmann::ordered_json(nullptr);
    rec["k"] = v.k;
    rec["detail"] = v.detail;
    violations.push_back(std::move(rec));
  }

  nlohmann::ordered_json out;
  out["target"] = std::string(to_string(report.target));
  out["params"] = std::move(params);
  out["trees_checked"] = report.trees_checked;
  out["pairs_checked"] = report.pairs_checked;
  out["violations"] = std::move(violations);
  out["elapsed_ms"] = report.elapsed.count();
  out["verdict"] = report.passed() ? "pass" : "fail";
  return out;
}

namespace detail {

struct TreeOutcome {
  std::uint64_t pairs = 0;
  std::vector<Violation> violations;
};

/// Evaluates check(tree) for every tree, spread over `jobs` threads, and
/// folds the outcomes back in input order. With fail_fast the report stops
/// after the first tree (in input order) that produced a violation.
template <typename Check>
void run_partitioned(const std::vector<RootedTree>& trees, const VerifyOptions& options, VerificationReport& report,
                     Check&& check) {
  std::vector<TreeOutcome> outcomes(trees.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::size_t> first_failure{trees.size()};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= trees.size()) return;
      if (options.fail_fast && i > first_failure.load()) continue;
      outcomes[i] = check(trees[i]);
      if (options.fail_fast && !outcomes[i].violations.empty()) {
        std::size_t seen = first_failure.load();
        while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
        }
      }
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  const std::size_t stop = options.fail_fast ? std::min(first_failure.load() + 1, trees.size()) : trees.size();
  for (std::size_t i = 0; i < stop; ++i) {
    ++report.trees_checked;
    report.pairs_checked += outcomes[i].pairs;
    for (auto& v : outcomes[i].violations) report.violations.push_back(std::move(v));
  }
}

inline std::vector<RootedTree> trees_in_range(NodeId n_min, NodeId n_max) {
  std::vector<RootedTree> out;
  for (NodeId n = n_min; n <= n_max; ++n) {
    for_each_rooted_tree(TreeClassConstraint{n, {}, {}}, [&](const RootedTree& t) { out.push_back(t); });
  }
  return out;
}

inline std::string describe(std::string_view what, const CountVector& found, const CountVector& expected) {
  return std::string(what) + "; found=" + format_counts(found) + " expected=" + format_counts(expected);
}

class Stopwatch {
 public:
  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Every transversal of the tree as a bitmask, ascending.
inline std::vector<NodeMask> all_transversals(const RootedTree& tree) {
  const LeafPaths paths(tree);
  std::vector<NodeMask> out;
  const NodeMask end = NodeMask{1} << tree.size();
  for (NodeMask s = 0; s < end; ++s) {
    if (paths.covers(s)) out.push_back(s);
  }
  return out;
}

/// Theorem harness shared by the degree-bounded and leaf-bounded classes:
/// every member either is isomorphic to the extremal tree (and then has its
/// vector) or strictly dominates it.
inline VerificationReport verify_extremal(const TreeClassConstraint& constraint,
                                          const RootedTree& extremal, const VerifyOptions& options,
                                          VerificationReport report) {
  Stopwatch clock;
  const CountVector extremal_counts = options.counter(extremal);
  const CanonicalCode extremal_code = canonical_code(extremal);
  const std::string extremal_text = format_tree(extremal);

  const std::vector<RootedTree> trees = rooted_trees(constraint);
  std::atomic<int> extremal_seen{0};

  run_partitioned(trees, options, report, [&](const RootedTree& tree) {
    TreeOutcome out;
    const CountVector counts = options.counter(tree);
    const std::string text = format_tree(tree);
    if (canonical_code(tree) == extremal_code) {
      ++extremal_seen;
      if (counts != extremal_counts) {
        const std::vector<NodeId> k =
            counts.n() == extremal_counts.n() ? dominance(counts, extremal_counts).strict : std::vector<NodeId>{};
        out.violations.push_back(
            {text, extremal_text, k, describe("isomorphic to T* but counts differ", counts, extremal_counts)});
      }
      return out;
    }
    if (counts.n() != extremal_counts.n()) {
      out.violations.push_back({text, extremal_text, {}, describe("count vector has wrong length", counts, extremal_counts)});
      return out;
    }
    const DominanceVerdict verdict = dominance(counts, extremal_counts);
    if (verdict.relation != Dominance::strictly_succeeds) {
      std::vector<NodeId> below;
      for (NodeId k : verdict.strict) {
        if (counts[k] < extremal_counts[k]) below.push_back(k);
      }
      out.violations.push_back({text, extremal_text, below,
                                describe("expected T > T*, got " + std::string(to_string(verdict.relation)), counts,
                                         extremal_counts)});
    }
    return out;
  });

  if (!options.fail_fast || report.violations.empty()) {
    if (!constraint.admits(extremal) || extremal_seen.load() != 1) {
      report.violations.push_back({extremal_text, std::nullopt, {},
                                   "T* must occur exactly once in the class, found " +
                                       std::to_string(extremal_seen.load())});
    }
  }
  report.elapsed = clock.elapsed();
  return report;
}

}  // namespace detail

// -- targets ---------------------------------------------------------------

/// c[n] = 1 and c[n-1] = n for every tree with 2 <= n <= n_max.
inline VerificationReport verify_boundary(NodeId n_max, const VerifyOptions& options = {}) {
  if (n_max < 2) throw std::invalid_argument("verify_boundary: n_max must be >= 2");
  detail::Stopwatch clock;
  VerificationReport report;
  report.target = VerificationTarget::boundary;
  report.n = n_max;

  detail::run_partitioned(detail::trees_in_range(2, n_max), options, report, [&](const RootedTree& tree) {
    detail::TreeOutcome out;
    const NodeId n = tree.size();
    const CountVector counts = options.counter(tree);
    const std::string text = format_tree(tree);
    if (counts.n() != n) {
      out.violations.push_back({text, std::nullopt, {}, "count vector has length " +
                                                             std::to_string(counts.values().size()) + ", expected " +
                                                             std::to_string(n + 1) + "; found=" + format_counts(counts)});
      return out;
    }
    if (counts[n] != 1) {
      out.violations.push_back(
          {text, std::nullopt, {n}, "c[n] expected 1, found " + counts[n].str() + "; found=" + format_counts(counts)});
    }
    if (counts[n - 1] != n) {
      out.violations.push_back({text, std::nullopt, {n - 1},
                                "c[n-1] expected " + std::to_string(n) + ", found " + counts[n - 1].str() +
                                    "; found=" + format_counts(counts)});
    }
    return out;
  });
  report.elapsed = clock.elapsed();
  return report;
}

/// Both binomial bounds for k = 1..n-2 plus the two attainment
/// characterizations, for every tree with 3 <= n <= n_max.
inline VerificationReport verify_sandwich(NodeId n_max, const VerifyOptions& options = {}) {
  if (n_max < 3) throw std::invalid_argument("verify_sandwich: n_max must be >= 3");
  detail::Stopwatch clock;
  VerificationReport report;
  report.target = VerificationTarget::sandwich;
  report.n = n_max;

  detail::run_partitioned(detail::trees_in_range(3, n_max), options, report, [&](const RootedTree& tree) {
    detail::TreeOutcome out;
    const NodeId n = tree.size();
    const CountVector counts = options.counter(tree);
    const std::string text = format_tree(tree);
    if (counts.n() != n) {
      out.violations.push_back({text, std::nullopt, {}, "count vector has wrong length; found=" + format_counts(counts)});
      return out;
    }
    const SandwichResult result = sandwich_check(tree, counts);
    if (!result.holds) {
      out.violations.push_back({text, std::nullopt, result.failing_k,
                                "binomial bounds fail; found=" + format_counts(counts)});
    }
    const bool one_leaf = tree.leaf_count() == 1;
    if (result.all_upper_attained != one_leaf) {
      out.violations.push_back({text, std::nullopt, {},
                                std::string("attainment: all upper bounds attained = ") +
                                    (result.all_upper_attained ? "true" : "false") + " but leaf_count = " +
                                    std::to_string(tree.leaf_count()) + "; found=" + format_counts(counts)});
    }
    const bool star_shape =
        tree.leaf_count() == n - 1 && static_cast<NodeId>(tree.children(tree.root()).size()) == n - 1;
    if (result.all_lower_attained != star_shape) {
      out.violations.push_back({text, std::nullopt, {},
                                std::string("attainment: all lower bounds attained = ") +
                                    (result.all_lower_attained ? "true" : "false") + " but leaf_count = " +
                                    std::to_string(tree.leaf_count()) + "; found=" + format_counts(counts)});
    }
    return out;
  });
  report.elapsed = clock.elapsed();
  return report;
}

/// Every tree with at most d children per node strictly dominates the full
/// caterpillar of degree d, or is isomorphic to it.
inline VerificationReport verify_theorem_main(NodeId n, NodeId d, const VerifyOptions& options = {}) {
  if (d < 1 || d >= n) throw std::invalid_argument("verify_theorem_main: need 1 <= d < n");
  VerificationReport report;
  report.target = VerificationTarget::theorem_main;
  report.n = n;
  report.d = d;
  return detail::verify_extremal(TreeClassConstraint{n, d, {}}, make_full_caterpillar(n, d), options,
                                 std::move(report));
}

/// Every tree with at most m leaves strictly dominates the leaf caterpillar
/// (root with m children, a single path below one of them), or is
/// isomorphic to it.
inline VerificationReport verify_theorem_leaves(NodeId n, NodeId m, const VerifyOptions& options = {}) {
  if (m < 1 || m >= n) throw std::invalid_argument("verify_theorem_leaves: need 1 <= m < n");
  VerificationReport report;
  report.target = VerificationTarget::theorem_leaves;
  report.n = n;
  report.m = m;
  return detail::verify_extremal(TreeClassConstraint{n, {}, m}, make_leaf_caterpillar(n, m), options,
                                 std::move(report));
}

/// For every tree with n <= n_max and every valid lift or shed pair:
///  - the input strictly dominates the transformed tree;
///  - lift: every transversal of T' is one of T;
///  - shed: f keeps sizes, lands in transversals of T and is injective;
///  - the witness set is a transversal of T that T' (or f) cannot produce.
/// Violation details are prefixed with lemma_lift, lemma_shed or
/// shed_injectivity.
inline VerificationReport verify_lemmas(NodeId n_max, const VerifyOptions& options = {}) {
  if (n_max < 3) throw std::invalid_argument("verify_lemmas: n_max must be >= 3");
  if (n_max > 20) throw std::invalid_argument("verify_lemmas: n_max must be <= 20");
  detail::Stopwatch clock;
  VerificationReport report;
  report.target = VerificationTarget::lemmas;
  report.n = n_max;

  detail::run_partitioned(detail::trees_in_range(1, n_max), options, report, [&](const RootedTree& tree) {
    detail::TreeOutcome out;
    const auto lift_pairs = valid_lift_pairs(tree);
    const auto shed_pairs = valid_shed_pairs(tree);
    if (lift_pairs.empty() && shed_pairs.empty()) return out;

    const std::string text = format_tree(tree);
    const CountVector counts = options.counter(tree);
    const LeafPaths paths(tree);
    auto fail = [&](const RootedTree& after, std::vector<NodeId> k, std::string detail) {
      out.violations.push_back({text, format_tree(after), std::move(k), std::move(detail)});
    };
    auto pair_label = [](std::string_view op, NodePair p) {
      return std::string(op) + "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
    };
    auto check_dominance = [&](std::string_view prefix, const std::string& label, const RootedTree& after) {
      const CountVector after_counts = options.counter(after);
      if (after_counts.n() != counts.n()) {
        fail(after, {}, std::string(prefix) + ": " + label + " count vector length mismatch; found=" +
                            format_counts(counts) + " other=" + format_counts(after_counts));
        return;
      }
      const DominanceVerdict verdict = dominance(counts, after_counts);
      if (verdict.relation != Dominance::strictly_succeeds) {
        fail(after, verdict.strict,
             std::string(prefix) + ": " + label + " expected T > T', got " + std::string(to_string(verdict.relation)) +
                 "; found=" + format_counts(counts) + " other=" + format_counts(after_counts));
      }
    };

    for (const NodePair& pair : lift_pairs) {
      ++out.pairs;
      const std::string label = pair_label("lift", pair);
      const RootedTree after = lift(tree, pair.first, pair.second);
      check_dominance("lemma_lift", label, after);

      const LeafPaths after_paths(after);
      for (NodeMask s : detail::all_transversals(after)) {
        if (!paths.covers(s)) {
          fail(after, {}, "lemma_lift: " + label + " transversal of T' is not one of T: " + format_nodes(from_mask(s)));
          break;
        }
      }
      const NodeMask witness = to_mask(tree, lift_witness(tree, pair.first));
      if (!paths.covers(witness) || after_paths.covers(witness)) {
        fail(after, {}, "lemma_lift: " + label + " witness " + format_nodes(from_mask(witness)) +
                            " must cover T and not T'");
      }
    }

    for (const NodePair& pair : shed_pairs) {
      ++out.pairs;
      const std::string label = pair_label("shed", pair);
      const RootedTree after = shed(tree, pair.first, pair.second);
      check_dominance("lemma_shed", label, after);

      const ShedInjection f(tree, after, pair.first, pair.second);
      const NodeMask witness = to_mask(tree, shed_witness(tree, pair.second));
      if (!paths.covers(witness)) {
        fail(after, {}, "lemma_shed: " + label + " witness " + format_nodes(from_mask(witness)) + " does not cover T");
      }
      std::unordered_set<NodeMask> images;
      bool reported = false;
      for (NodeMask s : detail::all_transversals(after)) {
        const NodeMask image = f(s);
        std::string problem;
        if (std::popcount(image) != std::popcount(s)) {
          problem = "changes size";
        } else if (!paths.covers(image)) {
          problem = "is not a transversal of T";
        } else if (!images.insert(image).second) {
          problem = "collides with an earlier image";
        } else if (image == witness) {
          problem = "equals the witness " + format_nodes(from_mask(witness));
        }
        if (!problem.empty() && !reported) {
          fail(after, {static_cast<NodeId>(std::popcount(s))},
               "shed_injectivity: " + label + " f(" + format_nodes(from_mask(s)) + ") " + problem);
          reported = true;
        }
      }
    }
    return out;
  });
  report.elapsed = clock.elapsed();
  return report;
}

}  // namespace transversals
