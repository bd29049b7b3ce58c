#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "transversals/transversals.hpp"

namespace transversals::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct Args {
  std::string tree;
  std::string tree_a;
  std::string tree_b;
  std::string op;
  NodeId x = 0;
  NodeId y = 0;
  NodeId n = 0;
  std::optional<NodeId> max_children;
  std::optional<NodeId> max_leaves;
  std::string emit;
  std::string target;
  std::optional<NodeId> d;
  std::optional<NodeId> m;
  std::optional<NodeId> n_max;
  unsigned jobs = 1;
  bool fail_fast = false;
  std::string report;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void emit_dot(const Args& args, const RootedTree& tree, std::ostream& out) {
  if (args.emit == "dot") out << to_dot(tree);
}

inline int run_verify(const Args& args, std::ostream& out, std::ostream& err, const Counter& counter) {
  VerifyOptions options;
  options.jobs = args.jobs;
  options.fail_fast = args.fail_fast;
  options.counter = counter;

  auto range_end = [&]() -> NodeId {
    if (args.n_max) return *args.n_max;
    if (args.n > 0) return args.n;
    throw UsageError("verify --target " + args.target + " needs --n-max (or --n)");
  };
  auto need = [&](const std::optional<NodeId>& v, const char* flag) {
    if (!v) throw UsageError("verify --target " + args.target + " needs " + flag);
    if (args.n <= 0) throw UsageError("verify --target " + args.target + " needs --n");
    return *v;
  };

  VerificationReport report;
  if (args.target == "boundary") {
    report = verify_boundary(range_end(), options);
  } else if (args.target == "sandwich") {
    report = verify_sandwich(range_end(), options);
  } else if (args.target == "lemmas") {
    report = verify_lemmas(range_end(), options);
  } else if (args.target == "theorem_main") {
    report = verify_theorem_main(args.n, need(args.d, "--d"), options);
  } else if (args.target == "theorem_leaves") {
    report = verify_theorem_leaves(args.n, need(args.m, "--m"), options);
  } else {
    throw UsageError("unknown verify target: " + args.target);
  }

  const std::string json = to_json(report).dump(2) + "\n";
  if (args.report.empty()) {
    out << json;
  } else {
    std::ofstream file(args.report, std::ios::binary);
    if (!file) {
      err << "error: cannot write report to " << args.report << "\n";
      return kExitUsage;
    }
    file << json;
    out << to_string(report.target) << ": " << (report.passed() ? "pass" : "fail") << " (trees_checked "
        << report.trees_checked << ", pairs_checked " << report.pairs_checked << ", violations "
        << report.violations.size() << ")\n";
  }
  return report.passed() ? kExitOk : kExitFail;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name. The counter
/// argument lets tests inject a faulty counting routine into `verify`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const Counter& counter = count_transversals) {
  CLI::App app{"Transversal counting in rooted trees"};
  app.require_subcommand(1);
  detail::Args a;

  auto* count = app.add_subcommand("count", "Print the transversal count vector c[0..n]");
  count->add_option("--tree", a.tree, "Parent array, e.g. \"0 1 1 2 2\"")->required();
  count->add_option("--emit", a.emit, "Also print the tree as Graphviz")->check(CLI::IsMember({"dot"}));

  auto* compare = app.add_subcommand("compare", "Compare two trees under the dominance order");
  compare->add_option("--tree-a", a.tree_a)->required();
  compare->add_option("--tree-b", a.tree_b)->required();

  auto* transform = app.add_subcommand("transform", "Apply lift or shed");
  transform->add_option("--tree", a.tree)->required();
  transform->add_option("--op", a.op)->required()->check(CLI::IsMember({"lift", "shed"}));
  transform->add_option("--x", a.x)->required();
  transform->add_option("--y", a.y)->required();
  transform->add_option("--emit", a.emit)->check(CLI::IsMember({"dot"}));

  auto* extremal = app.add_subcommand("extremal", "Print the extremal caterpillar and its count vector");
  extremal->add_option("--n", a.n)->required();
  auto* ext_d = extremal->add_option("--max-children", a.max_children);
  auto* ext_m = extremal->add_option("--max-leaves", a.max_leaves);
  ext_d->excludes(ext_m);
  extremal->add_option("--emit", a.emit)->check(CLI::IsMember({"dot"}));

  auto* enumerate = app.add_subcommand("enumerate", "List one tree per isomorphism class");
  enumerate->add_option("--n", a.n)->required();
  enumerate->add_option("--max-children", a.max_children);
  enumerate->add_option("--max-leaves", a.max_leaves);
  enumerate->add_option("--emit", a.emit)->check(CLI::IsMember({"parents", "code"}));

  auto* verify = app.add_subcommand("verify", "Exhaustively check a theorem or lemma and write a JSON report");
  verify->add_option("--target", a.target)
      ->required()
      ->check(CLI::IsMember({"boundary", "sandwich", "theorem_main", "theorem_leaves", "lemmas"}));
  verify->add_option("--n", a.n);
  verify->add_option("--d", a.d);
  verify->add_option("--m", a.m);
  verify->add_option("--n-max", a.n_max);
  verify->add_option("--jobs", a.jobs)->check(CLI::PositiveNumber);
  verify->add_flag("--fail-fast", a.fail_fast);
  verify->add_option("--report", a.report, "Report path; stdout when omitted");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (count->parsed()) {
      const RootedTree tree = parse_tree(a.tree);
      out << format_counts(count_transversals(tree)) << "\n";
      detail::emit_dot(a, tree, out);
    } else if (compare->parsed()) {
      const RootedTree ta = parse_tree(a.tree_a);
      const RootedTree tb = parse_tree(a.tree_b);
      if (ta.size() != tb.size()) throw detail::UsageError("trees must have the same number of nodes");
      out << format_verdict(dominance(count_transversals(ta), count_transversals(tb))) << "\n";
    } else if (transform->parsed()) {
      const RootedTree tree = parse_tree(a.tree);
      const RootedTree after = a.op == "lift" ? lift(tree, a.x, a.y) : shed(tree, a.x, a.y);
      out << format_tree(after) << "\n";
      detail::emit_dot(a, after, out);
    } else if (extremal->parsed()) {
      if (!a.max_children && !a.max_leaves) throw detail::UsageError("extremal needs --max-children or --max-leaves");
      const RootedTree tree =
          a.max_children ? make_full_caterpillar(a.n, *a.max_children) : make_leaf_caterpillar(a.n, *a.max_leaves);
      out << format_tree(tree) << "\n" << format_counts(count_transversals(tree)) << "\n";
      detail::emit_dot(a, tree, out);
    } else if (enumerate->parsed()) {
      const TreeClassConstraint constraint{a.n, a.max_children, a.max_leaves};
      const bool codes = a.emit == "code";
      for_each_rooted_tree(constraint, [&](const RootedTree& tree) {
        out << (codes ? canonical_code(tree).str() : format_tree(tree)) << "\n";
      });
    } else if (verify->parsed()) {
      return detail::run_verify(a, out, err, counter);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace transversals::cli
