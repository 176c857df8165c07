#include <gtest/gtest.h>

#include "bethelab/runner.hpp"

using namespace bethelab;

namespace {

RunConfig config(const Json& j) { return RunConfig::from_json(j); }

TEST(Config, ParsesAndValidates) {
  RunConfig cfg = config({{"task", "check-rtt"}, {"seed", 7}, {"N", 3}, {"L", 1}});
  EXPECT_EQ(cfg.task, "check-rtt");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.geti("N", 0), 3);
  EXPECT_EQ(cfg.geti("points", 10), 10);

  EXPECT_THROW(config(Json::array()), ConfigError);
  EXPECT_THROW(config({{"backend", "exact"}}), ConfigError);
  EXPECT_THROW(config({{"task", "x"}, {"backend", "mystery"}}), ConfigError);
  EXPECT_THROW(run(config({{"task", "no-such-task"}})), ConfigError);
}

TEST(Config, ScalarParsing) {
  EXPECT_EQ(detail::parse_rational_json(Json("3/4")), Rational(3, 4));
  EXPECT_EQ(detail::parse_rational_json(Json(-5)), Rational(-5));
  EXPECT_THROW(detail::parse_rational_json(Json(1.5)), ConfigError);
  EXPECT_THROW(detail::parse_rational_json(Json("3/0")), ConfigError);

  EXPECT_EQ(detail::parse_complex_json(Json(1.5)), Cplx(1.5, 0.0));
  EXPECT_EQ(detail::parse_complex_json(Json("1/2")), Cplx(0.5, 0.0));
  EXPECT_EQ(detail::parse_complex_json(Json::array({1.0, -2.0})), Cplx(1.0, -2.0));
}

TEST(Run, CheckRttExactPasses) {
  Report r = run(config({{"task", "check-rtt"}, {"N", 2}, {"L", 1}, {"points", 3}}));
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.checks[0].residual, "0");
}

TEST(Run, CheckRttRankThree) {
  Report r = run(config({{"task", "check-rtt"}, {"N", 3}, {"L", 2}, {"points", 3}}));
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.checks[0].residual, "0");
}

TEST(Run, CheckRmatrixSingleRank) {
  Report r = run(config({{"task", "check-rmatrix"}, {"N", 2}, {"points", 2}}));
  EXPECT_EQ(r.checks.size(), 6u);
  EXPECT_TRUE(r.all_pass());
}

TEST(Run, CheckIdentitiesSmall) {
  Report r = run(config({{"task", "check-identities"}, {"points", 2}, {"nmax", 2}}));
  EXPECT_TRUE(r.all_pass());
}

TEST(Run, CompareBvDefaults) {
  Report r = run(config({{"task", "compare-bv"}, {"points", 1}}));
  EXPECT_TRUE(r.all_pass());
  EXPECT_GE(r.checks.size(), 8u);  // 2 vacuum checks + 2 oracle + 4 rank-3 sides
}

TEST(Run, CompareBvLargerCase) {
  Report r = run(
      config({{"task", "compare-bv"}, {"N", 3}, {"L", 3}, {"n", Json::array({2, 1})}}));
  EXPECT_TRUE(r.all_pass());
}

TEST(Run, MorphismsSingleCase) {
  Report r = run(config({{"task", "check-morphisms"}, {"n", Json::array({1, 1})}}));
  EXPECT_EQ(r.checks.size(), 3u);
  EXPECT_TRUE(r.all_pass());
}

TEST(Run, OnshellExactWithExplicitRoot) {
  Report r = run(config({{"task", "onshell"},
                         {"N", 2},
                         {"L", 1},
                         {"q", "2"},
                         {"inhomogeneities", Json::array({"1"})},
                         {"n", Json::array({1})},
                         {"bethe_parameters", Json::array({Json::array({"-1/2"})})},
                         {"points", 2}}));
  EXPECT_TRUE(r.all_pass());
}

TEST(Run, OnshellExactNeedsParameters) {
  EXPECT_THROW(run(config({{"task", "onshell"}, {"N", 2}, {"L", 1}})), ConfigError);
}

TEST(Run, OnshellFloatSolves) {
  Report r = run(config({{"task", "onshell"},
                         {"backend", "float"},
                         {"N", 2},
                         {"L", 2},
                         {"q", Json::array({2.0, 0.0})},
                         {"inhomogeneities", Json::array({1.0, 9.0})},
                         {"points", 1}}));
  EXPECT_TRUE(r.all_pass()) << r.to_json().dump(2);
}

TEST(Run, BenchCountsNThree) {
  Report r = run(config({{"task", "bench"}, {"N", 3}, {"L", 2}, {"n", Json::array({1, 1})}}));
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.counters["term_count"].get<unsigned long long>(), 2u);
}

TEST(Run, BenchSingleTermForRankTwo) {
  for (int n : {1, 3, 5}) {
    Report r = run(config({{"task", "bench"}, {"N", 2}, {"L", 1}, {"n", Json::array({n})}}));
    EXPECT_EQ(r.counters["term_count"].get<unsigned long long>(), 1u) << n;
  }
}

TEST(Report, DeterministicModuloTimings) {
  Json doc{{"task", "compare-bv"}, {"seed", 42}, {"points", 1}};
  Report a = run(config(doc));
  Report b = run(config(doc));
  EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump());
}

TEST(Report, ExitSemantics) {
  Report r;
  r.checks.push_back({"a", "0", true, 0.0, ""});
  EXPECT_TRUE(r.all_pass());
  r.checks.push_back({"b", "1", false, 0.0, ""});
  EXPECT_FALSE(r.all_pass());
}

TEST(Report, FailedCheckDoesNotAbortOthers) {
  // onshell with an off-shell root: the residual checks fail but all planned
  // checks still run and the report carries them.
  Report r = run(config({{"task", "onshell"},
                         {"N", 2},
                         {"L", 1},
                         {"q", "2"},
                         {"inhomogeneities", Json::array({"1"})},
                         {"n", Json::array({1})},
                         {"bethe_parameters", Json::array({Json::array({"7/5"})})},
                         {"points", 1}}));
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.checks.size(), 3u);
}

}  // namespace
