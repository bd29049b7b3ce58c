#include <regex>
#include <string>

#include <gtest/gtest.h>

#include "transversals/verification.hpp"

using namespace transversals;

namespace {

VerifyOptions corrupted_top() {
  VerifyOptions options;
  options.counter = [](const RootedTree& tree) {
    CountVector counts = count_transversals(tree);
    counts[tree.size()] = 2;
    return counts;
  };
  return options;
}

nlohmann::ordered_json without_elapsed(const VerificationReport& report) {
  auto json = to_json(report);
  json.erase("elapsed_ms");
  return json;
}

CountVector found_vector(const std::string& detail) {
  static const std::regex found("found=([0-9,]+)");
  std::smatch match;
  EXPECT_TRUE(std::regex_search(detail, match, found)) << detail;
  return parse_counts(match[1].str());
}

}  // namespace

TEST(VerifyBoundary, Passes) {
  const auto r5 = verify_boundary(5);
  EXPECT_TRUE(r5.passed());
  EXPECT_EQ(r5.trees_checked, 16u);
  const auto r2 = verify_boundary(2);
  EXPECT_TRUE(r2.passed());
  EXPECT_EQ(r2.trees_checked, 1u);
  EXPECT_THROW(verify_boundary(1), std::invalid_argument);
}

TEST(VerifyBoundary, CorruptedCounterFailsOncePerTree) {
  const auto report = verify_boundary(5, corrupted_top());
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.trees_checked, 16u);
  EXPECT_EQ(report.violations.size(), 16u);
  for (const auto& v : report.violations) {
    const RootedTree tree = parse_tree(v.tree);
    EXPECT_EQ(v.k, std::vector<NodeId>{tree.size()});
  }
  EXPECT_EQ(to_json(report)["verdict"], "fail");
}

TEST(VerifyBoundary, FailFastStopsAtFirstFailingTree) {
  auto options = corrupted_top();
  options.fail_fast = true;
  const auto report = verify_boundary(6, options);
  EXPECT_EQ(report.trees_checked, 1u);
  EXPECT_EQ(report.violations.size(), 1u);
  options.jobs = 3;
  EXPECT_EQ(without_elapsed(verify_boundary(6, options)), without_elapsed(report));
}

TEST(VerifySandwich, PassesWithAttainment) {
  const auto report = verify_sandwich(10);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.trees_checked, 1205u - 2u);

  // Path and star are the only n = 7 attainers.
  int upper = 0, lower = 0;
  for_each_rooted_tree({7, {}, {}}, [&](const RootedTree& tree) {
    const auto r = sandwich_check(tree, count_transversals(tree));
    if (r.all_upper_attained) {
      ++upper;
      EXPECT_EQ(tree, make_path(7));
    }
    if (r.all_lower_attained) {
      ++lower;
      EXPECT_TRUE(isomorphic(tree, make_star(7)));
    }
  });
  EXPECT_EQ(upper, 1);
  EXPECT_EQ(lower, 1);
}

TEST(VerifySandwich, DetectsBrokenAttainment) {
  VerifyOptions options;
  // Reports the binomial row for every tree: bounds hold, attainment breaks.
  options.counter = [](const RootedTree& tree) { return count_transversals(make_path(tree.size())); };
  const auto report = verify_sandwich(5, options);
  EXPECT_FALSE(report.passed());
  for (const auto& v : report.violations) EXPECT_EQ(v.detail.rfind("attainment:", 0), 0u) << v.detail;
}

TEST(VerifyTheoremMain, Examples) {
  const auto r52 = verify_theorem_main(5, 2);
  EXPECT_TRUE(r52.passed());
  EXPECT_EQ(r52.trees_checked, 6u);
  EXPECT_TRUE(verify_theorem_main(4, 3).passed());
  EXPECT_TRUE(verify_theorem_main(7, 2).passed());
  EXPECT_THROW(verify_theorem_main(4, 4), std::invalid_argument);

  const RootedTree binary{0, 1, 1, 2, 2, 3, 3};
  const auto v = dominance(count_transversals(binary), count_transversals(make_full_caterpillar(7, 2)));
  EXPECT_EQ(v.relation, Dominance::strictly_succeeds);
  EXPECT_EQ(v.strict, (std::vector<NodeId>{3, 4, 5}));
}

TEST(VerifyTheoremMain, MinimumIsTheFullCaterpillar) {
  // Among the n = 5, d = 2 class only the caterpillar attains [0,1,5,9,5,1].
  const CountVector minimum = count_transversals(RootedTree{0, 1, 1, 2, 2});
  int hits = 0;
  for_each_rooted_tree({5, 2, {}}, [&](const RootedTree& tree) {
    if (count_transversals(tree) == minimum) {
      ++hits;
      EXPECT_TRUE(isomorphic(tree, make_full_caterpillar(5, 2)));
    }
  });
  EXPECT_EQ(hits, 1);
}

TEST(VerifyTheoremMain, FlagsAWrongExtremalTree) {
  VerifyOptions options;
  // Pretend the path is minimal: every other tree then "precedes" it.
  options.counter = [](const RootedTree& tree) {
    if (tree == make_full_caterpillar(tree.size(), 2)) return count_transversals(make_path(tree.size()));
    return count_transversals(tree);
  };
  const auto report = verify_theorem_main(6, 2, options);
  EXPECT_FALSE(report.passed());
  ASSERT_FALSE(report.violations.empty());
  for (const auto& v : report.violations) {
    // Each record replays: the found vector comes from the same counter.
    EXPECT_EQ(found_vector(v.detail), options.counter(parse_tree(v.tree)));
    EXPECT_EQ(v.other_tree, format_tree(make_full_caterpillar(6, 2)));
  }
}

TEST(VerifyTheoremLeaves, Examples) {
  const auto r51 = verify_theorem_leaves(5, 1);
  EXPECT_TRUE(r51.passed());
  EXPECT_EQ(r51.trees_checked, 1u);
  EXPECT_TRUE(verify_theorem_leaves(5, 3).passed());
  EXPECT_TRUE(verify_theorem_leaves(6, 5).passed());
  EXPECT_THROW(verify_theorem_leaves(5, 5), std::invalid_argument);
}

TEST(VerifyTheorems, CrossConsistency) {
  for (NodeId n = 3; n <= 9; ++n) {
    EXPECT_TRUE(isomorphic(make_full_caterpillar(n, n - 1), make_star(n)));
    EXPECT_TRUE(isomorphic(make_leaf_caterpillar(n, n - 1), make_star(n)));
    EXPECT_TRUE(isomorphic(make_full_caterpillar(n, 1), make_path(n)));
    EXPECT_TRUE(isomorphic(make_leaf_caterpillar(n, 1), make_path(n)));
    const RootedTree star = make_star(n);
    EXPECT_TRUE(sandwich_check(star, count_transversals(star)).all_lower_attained);
    const CountVector path = count_transversals(make_path(n));
    for (NodeId k = 0; k <= n; ++k) EXPECT_EQ(path[k], k == 0 ? BigInt(0) : binomial(n, k));
    EXPECT_TRUE(verify_theorem_main(n, n - 1).passed());
    EXPECT_TRUE(verify_theorem_leaves(n, n - 1).passed());
    EXPECT_TRUE(verify_theorem_main(n, 1).passed());
    EXPECT_TRUE(verify_theorem_leaves(n, 1).passed());
  }
}

TEST(VerifyLemmas, Passes) {
  const auto report = verify_lemmas(6);
  EXPECT_TRUE(report.passed());
  EXPECT_GT(report.pairs_checked, 0u);
  EXPECT_EQ(report.trees_checked, 1u + 1 + 2 + 4 + 9 + 20);
}

TEST(VerifyLemmas, SpotVectors) {
  const RootedTree tree{0, 1, 1, 3, 2};
  const auto v = dominance(count_transversals(tree), count_transversals(shed(tree, 2, 4)));
  EXPECT_EQ(format_counts(count_transversals(tree)), "0,1,8,10,5,1");
  EXPECT_EQ(format_counts(count_transversals(shed(tree, 2, 4))), "0,1,7,9,5,1");
  EXPECT_EQ(v.relation, Dominance::strictly_succeeds);
  EXPECT_EQ(v.strict, (std::vector<NodeId>{2, 3}));

  const auto p = dominance(count_transversals(make_path(3)), count_transversals(lift(make_path(3), 3, 1)));
  EXPECT_EQ(p.relation, Dominance::strictly_succeeds);
  EXPECT_EQ(p.strict, std::vector<NodeId>{1});
}

TEST(VerifyLemmas, CountsPairs) {
  // n <= 3: only the 3-path has a pair (lift(3,1)).
  const auto report = verify_lemmas(3);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.pairs_checked, 1u);
}

TEST(VerifyLemmas, DetectsCorruptedCounter) {
  VerifyOptions options;
  options.counter = [](const RootedTree& tree) { return count_transversals(make_path(tree.size())); };
  const auto report = verify_lemmas(5, options);
  EXPECT_FALSE(report.passed());
  for (const auto& v : report.violations) {
    EXPECT_TRUE(v.detail.rfind("lemma_lift:", 0) == 0 || v.detail.rfind("lemma_shed:", 0) == 0) << v.detail;
    EXPECT_TRUE(v.other_tree.has_value());
  }
}

TEST(Reports, DeterministicAcrossJobCounts) {
  VerifyOptions serial;
  VerifyOptions parallel;
  parallel.jobs = 4;
  EXPECT_EQ(without_elapsed(verify_theorem_main(9, 2, serial)), without_elapsed(verify_theorem_main(9, 2, parallel)));
  EXPECT_EQ(without_elapsed(verify_lemmas(6, serial)), without_elapsed(verify_lemmas(6, parallel)));
  auto bad = corrupted_top();
  auto bad_parallel = corrupted_top();
  bad_parallel.jobs = 4;
  EXPECT_EQ(without_elapsed(verify_boundary(7, bad)), without_elapsed(verify_boundary(7, bad_parallel)));
}

TEST(Reports, JsonSchema) {
  const auto json = to_json(verify_theorem_main(5, 2));
  EXPECT_EQ(json["target"], "theorem_main");
  EXPECT_EQ(json["params"]["n"], 5);
  EXPECT_EQ(json["params"]["d"], 2);
  EXPECT_TRUE(json["params"]["m"].is_null());
  EXPECT_EQ(json["trees_checked"], 6);
  EXPECT_EQ(json["pairs_checked"], 0);
  EXPECT_TRUE(json["violations"].is_array());
  EXPECT_TRUE(json["elapsed_ms"].is_number_integer());
  EXPECT_EQ(json["verdict"], "pass");

  const auto bad = to_json(verify_boundary(3, corrupted_top()));
  const auto& v = bad["violations"][0];
  EXPECT_TRUE(v["tree"].is_string());
  EXPECT_TRUE(v["other_tree"].is_null());
  EXPECT_TRUE(v["k"].is_array());
  EXPECT_TRUE(v["detail"].is_string());
}
