#include <gtest/gtest.h>

#include <set>

#include "tricorr/io.hpp"
#include "tricorr/verify.hpp"

using namespace tricorr;

namespace {

const char* const always_clean[] = {
    "numerics",     "genuine_total_relative_entropy", "eof_chain",   "pairwise_classical_ladder", "directional_ordering",
    "ckw_identity", "monogamy",                       "decomposition", "ordering_entropy_equivalence",
    "genuine_discord_bound", "three_tangle_permutation", "local_unitary_invariance", "pure_double_measurement",
    "n_partite_consistency"};

}  // namespace

TEST(SubSeed, DistinctAndStable) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(sub_seed(7, i));
    EXPECT_EQ(seen.size(), 10000u);
    EXPECT_EQ(sub_seed(7, 3), sub_seed(7, 3));
    EXPECT_NE(sub_seed(7, 3), sub_seed(8, 3));
}

TEST(PropertyCheckTest, CountsAndNearMisses) {
    PropertyCheck c{"x", 1e-8};
    c.record(-1.0, 1);
    EXPECT_FALSE(c.has_worst_margin());
    c.record(5e-9, 2);  // inside tolerance but within 10x of it
    EXPECT_EQ(c.count_violated, 0u);
    EXPECT_TRUE(c.has_worst_margin());
    EXPECT_EQ(c.worst_seed, 2u);
    c.record(1e-7, 3);
    EXPECT_EQ(c.count_violated, 1u);
    EXPECT_EQ(c.count_checked, 3u);
    c.record(std::nan(""), 4);
    EXPECT_EQ(c.count_violated, 2u);
    EXPECT_EQ(c.worst_seed, 4u);
}

TEST(Suite, ThreeQubitChecksAreClean) {
    const ViolationReport r = run_suite(300, 11);
    EXPECT_EQ(r.n_samples, 300u);
    for (const char* name : always_clean) {
        const PropertyCheck* c = r.find(name);
        ASSERT_NE(c, nullptr) << name;
        EXPECT_EQ(c->count_violated, 0u) << name << " worst " << c->worst_excess << " seed " << c->worst_seed;
        EXPECT_GT(c->count_checked, 0u) << name;
    }
}

TEST(Suite, ExposesTheDiscordMaxFailure) {
    const PureState psi =
        parse_state_json(read_file(std::string(TRICORR_TEST_DATA) + "/discord_max_counterexample.json"));
    const ViolationReport r = run_suite_on({{42, psi}}, 42, 3);
    const PropertyCheck* c = r.find("pairwise_discord_max");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->count_violated, 1u);
    EXPECT_NEAR(c->worst_excess, 0.1123857 - 0.1012386, 1e-6);
    EXPECT_EQ(c->worst_seed, 42u);
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.find("eof_chain")->count_violated, 0u);
}

TEST(Suite, DeterministicJson) {
    const std::string a = to_json(run_suite(40, 5)).dump();
    const std::string b = to_json(run_suite(40, 5)).dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("elapsed"), std::string::npos);
    EXPECT_NE(to_json(run_suite(40, 5), true).dump().find("elapsed_seconds"), std::string::npos);
}

TEST(Suite, LargerRegisters) {
    for (std::size_t n = 4; n <= 6; ++n) {
        SuiteOptions opt;
        opt.explore = true;
        const ViolationReport r = run_suite(n == 6 ? 10 : 40, 3, n, opt);
        EXPECT_TRUE(r.passed()) << n;
        ASSERT_TRUE(r.exploratory.has_value());
        EXPECT_EQ(r.exploratory->samples, r.n_samples);
        ASSERT_NE(r.find("genuine_qc_n_half"), nullptr);
    }
}

TEST(Suite, RejectsBadArguments) {
    EXPECT_THROW(run_suite(0, 1), std::invalid_argument);
    EXPECT_THROW(run_suite(1, 1, 2), std::invalid_argument);
    EXPECT_THROW(run_suite(1, 1, 7), std::invalid_argument);
    EXPECT_THROW(oracle_crosscheck(0, 1), std::invalid_argument);
}

TEST(Suite, WrongSizedSampleCountsAsNumericsFailure) {
    const ViolationReport r = run_suite_on({{1, haar_random_pure(4, 1)}}, 1, 3);
    EXPECT_EQ(r.find("numerics")->count_violated, 1u);
}

TEST(Oracle, MergeAddsChecks) {
    const ViolationReport base = run_suite(10, 2);
    const ViolationReport extra = oracle_crosscheck(10, 2);
    const ViolationReport merged = merge(base, extra);
    EXPECT_TRUE(merged.passed());
    EXPECT_NE(merged.find("oracle_discord"), nullptr);
    EXPECT_EQ(merged.find("numerics")->count_checked, 20u);
    EXPECT_EQ(merged.checks.size(), base.checks.size() + 3);
}
