#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tricorr/io.hpp"
#include "tricorr/states.hpp"
#include "tricorr/tripartite.hpp"

using namespace tricorr;

namespace {

// W-state values, mpmath at 30 digits.
constexpr double h_third = 0.918295834054489514787;
constexpr double w_T = 2.754887502163468544;
constexpr double w_J = 1.286543908526221588;
constexpr double w_D = 1.468343593637246956;
constexpr double w_J2 = 0.368248074471732074;
constexpr double w_D2 = 0.550047759582757441;
constexpr double w_T3 = 1.836591668108979030;

void expect_all_fields(const CorrelationReport& r, std::initializer_list<double> want, double tol) {
    const double got[] = {r.T, r.J, r.D, r.T2, r.T3, r.J2, r.J3, r.D2, r.D3};
    const char* names[] = {"T", "J", "D", "T2", "T3", "J2", "J3", "D2", "D3"};
    std::size_t i = 0;
    for (double w : want) {
        EXPECT_NEAR(got[i], w, tol) << names[i];
        ++i;
    }
}

PureState counterexample() {
    return parse_state_json(read_file(std::string(TRICORR_TEST_DATA) + "/discord_max_counterexample.json"));
}

}  // namespace

TEST(Report, Ghz) {
    const CorrelationReport r = analyze(ghz_state());
    expect_all_fields(r, {3, 2, 1, 1, 2, 1, 1, 0, 1}, 1e-9);
    ASSERT_TRUE(r.tangle.has_value());
    EXPECT_NEAR(*r.tangle, 1.0, 1e-9);
    EXPECT_TRUE(r.pure);
    EXPECT_EQ(r.method, Method::closed_form);
    EXPECT_NO_THROW(check_report(r));
}

TEST(Report, W) {
    const CorrelationReport r = analyze(w_state());
    expect_all_fields(r, {w_T, w_J, w_D, h_third, w_T3, w_J2, h_third, w_D2, h_third}, 1e-12);
    EXPECT_NEAR(*r.tangle, 0.0, 1e-12);
    for (double s : r.entropies) EXPECT_NEAR(s, h_third, 1e-12);
    EXPECT_GT(r.D, r.J);
}

TEST(Report, ProductStateIsAllZero) {
    const CorrelationReport r = analyze(family_w_tilde(0.0));
    expect_all_fields(r, {0, 0, 0, 0, 0, 0, 0, 0, 0}, 1e-12);
    EXPECT_NEAR(*r.tangle, 0.0, 1e-12);
}

TEST(Report, BellPairWithSpectatorUsesTheClosedFormD2) {
    // Pairwise discords are (1, 0, 0); the pure-state D2 is D(rho_ab) = 1 so
    // that D3 = D - D2 = S(c) = 0.
    const CorrelationReport r = analyze(tensor(bell_state(), basis_state("0")));
    expect_all_fields(r, {2, 1, 1, 2, 0, 1, 0, 1, 0}, 1e-9);
    EXPECT_EQ(r.ordering.labels, (std::array<std::string, 3>{"a", "b", "c"}));
}

TEST(Report, OrderingFollowsMutualInformation) {
    // Bell pair on (b, c), a in |0>.
    const CorrelationReport r = analyze(tensor(basis_state("0"), bell_state()));
    EXPECT_EQ(r.ordering.labels[0] + r.ordering.labels[1], "bc");
    EXPECT_NEAR(r.ordering.sorted_mutual_infos[0], 2.0, 1e-12);
    EXPECT_NEAR(r.T2, 2.0, 1e-12);
}

TEST(Report, CheckReportCatchesBrokenIdentities) {
    CorrelationReport r = analyze(w_state());
    r.D3 += 1e-6;
    EXPECT_THROW(check_report(r), consistency_error);
}

TEST(ReportProperty, InvariantsOnRandomPureStates) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const CorrelationReport r = analyze(haar_random_pure(3, seed));
        ASSERT_NO_THROW(check_report(r)) << "seed " << seed;
        const double sc = *std::min_element(r.entropies.begin(), r.entropies.end());
        EXPECT_NEAR(r.J3, sc, 1e-9);
        EXPECT_NEAR(r.T3, 2 * sc, 1e-9);
    }
}

TEST(ReportProperty, PartyRelabelingDoesNotChangeScalars) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PureState psi = haar_random_pure(3, seed);
        // swap parties a and c
        Vector v(8);
        for (std::size_t x = 0; x < 8; ++x) {
            const std::size_t y = ((x & 1U) << 2) | (x & 2U) | ((x >> 2) & 1U);
            v(static_cast<Eigen::Index>(y)) = psi.amplitudes()(static_cast<Eigen::Index>(x));
        }
        const CorrelationReport a = analyze(psi), b = analyze(PureState(v));
        for (auto [x, y] : {std::pair{a.T, b.T}, {a.J, b.J}, {a.D, b.D}, {a.J2, b.J2}, {a.D2, b.D2}, {a.D3, b.D3}})
            EXPECT_NEAR(x, y, 1e-9) << "seed " << seed;
        EXPECT_NEAR(*a.tangle, *b.tangle, 1e-8);
    }
}

TEST(ReportProperty, LocalUnitariesDoNotChangeScalars) {
    std::mt19937_64 rng(4);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PureState psi = haar_random_pure(3, 900 + seed);
        PureState phi = psi;
        for (std::size_t p = 0; p < 3; ++p) phi = apply_local_unitary(phi, p, random_unitary(2, rng));
        const CorrelationReport a = analyze(psi), b = analyze(phi);
        for (auto [x, y] : {std::pair{a.T, b.T}, {a.J, b.J}, {a.D, b.D}, {a.J2, b.J2}, {a.D2, b.D2}, {a.D3, b.D3}})
            EXPECT_NEAR(x, y, 1e-8) << "seed " << seed;
    }
}

TEST(GenuineTotal, EqualsClosestProductDistance) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DensityMatrix rho = seed % 2 ? density_of(haar_random_pure(3, seed)) : random_mixed(3, 2, seed);
        EXPECT_NEAR(genuine_total(rho), genuine_total_via_relative_entropy(rho), 1e-9) << "seed " << seed;
    }
}

TEST(GenuineTotal, MinimalCutMutualInformation) {
    const DensityMatrix rho = density_of(haar_random_pure(3, 77));
    double smallest = infinity;
    for (std::size_t i = 0; i < 3; ++i) smallest = std::min(smallest, cut_mutual_information(rho, i));
    EXPECT_NEAR(genuine_total(rho), smallest, 1e-9);
    EXPECT_THROW(genuine_total(density_of(bell_state())), std::invalid_argument);
}

TEST(ClosedForms, PureFunctionsMatchReport) {
    const PureState psi = haar_random_pure(3, 123);
    const CorrelationReport r = analyze(psi);
    EXPECT_NEAR(total_classical_pure(psi), r.J, 1e-12);
    EXPECT_NEAR(total_discord_pure(psi), r.D, 1e-12);
    EXPECT_NEAR(bipartite_parts_pure(psi).J2, r.J2, 1e-12);
    EXPECT_NEAR(bipartite_parts_pure(psi).D2, r.D2, 1e-12);
    EXPECT_NEAR(genuine_classical(psi), r.J3, 1e-12);
    EXPECT_NEAR(genuine_discord(density_of(psi)), r.D3, 1e-12);
}

TEST(ClosedForms, RejectMixedAndWrongSizes) {
    const DensityMatrix mixed = random_mixed(3, 2, 5);
    EXPECT_THROW(total_classical_pure(haar_random_pure(4, 1)), unsupported_input);
    EXPECT_THROW(bipartite_parts_pure(mixed), unsupported_input);
    EXPECT_THROW(genuine_discord(mixed), unsupported_input);
    EXPECT_THROW(three_tangle(mixed), unsupported_input);
    AnalyzeOptions pure_only;
    pure_only.pure_only = true;
    EXPECT_THROW(analyze(mixed, pure_only), unsupported_input);
}

TEST(ClosedForms, PairwiseDiscordMaxStatementFailsOnAKnownState) {
    // Haar sample (seed 7, draw 18355328685369678032) where D(rho_ab) is not
    // the largest pairwise discord. Optimizer and closed form agree, so the
    // gap is real.
    const PureState psi = counterexample();
    const CorrelationReport r = analyze(psi);
    EXPECT_EQ(r.ordering.labels, (std::array<std::string, 3>{"c", "a", "b"}));
    const double d_ab = r.pairwise_discord[pair_index(2, 0)];
    const double d_bc = r.pairwise_discord[pair_index(0, 1)];
    EXPECT_NEAR(d_ab, 0.1012386, 1e-6);
    EXPECT_NEAR(d_bc, 0.1123857, 1e-6);
    EXPECT_LT(d_ab, d_bc);
    const DensityMatrix rho = density_of(psi);
    EXPECT_NEAR(symmetrized_discord(reduce(rho, {0, 1})), d_bc, 1e-8);
    EXPECT_NEAR(symmetrized_discord(reduce(rho, {0, 2})), d_ab, 1e-8);
    EXPECT_NO_THROW(check_report(r));
}

TEST(ThreeTangle, KnownValues) {
    EXPECT_NEAR(three_tangle(ghz_state()), 1.0, 1e-9);
    EXPECT_NEAR(three_tangle(w_state()), 0.0, 1e-12);
    EXPECT_NEAR(three_tangle(tensor(bell_state(), basis_state("1"))), 0.0, 1e-12);
    EXPECT_THROW(three_tangle(ghz_state(), 3), std::invalid_argument);
}

TEST(ThreeTangle, MatchesCanonicalFormExpression) {
    // For l0|000> + l1 e^{i t}|100> + l2|101> + l3|110> + l4|111>, tau = 4 l0^2 l4^2.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        double l[5], s = 0;
        for (double& x : l) s += (x = u(rng)) * x;
        for (double& x : l) x /= std::sqrt(s);
        if (t % 4 == 0) {  // W class
            l[4] = 0;
            const double n = std::sqrt(l[0] * l[0] + l[1] * l[1] + l[2] * l[2] + l[3] * l[3]);
            for (double& x : l) x /= n;
        }
        const PureState psi = acin_state({l[0], l[1], l[2], l[3], l[4], 2 * std::numbers::pi * u(rng)});
        const double expected = 4 * l[0] * l[0] * l[4] * l[4];
        for (std::size_t focus = 0; focus < 3; ++focus) EXPECT_NEAR(three_tangle(psi, focus), expected, 1e-8) << t;
    }
}

TEST(DoubleMeasurement, PureStatesReachZero) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const DensityMatrix rho = density_of(haar_random_pure(3, seed));
        for (const char* k : {"a", "b", "c"}) EXPECT_LT(min_double_conditional_entropy(rho, k), 1e-6) << seed;
    }
}

TEST(DoubleMeasurement, MixedStates) {
    const DensityMatrix flat({"a", "b", "c"}, Matrix::Identity(8, 8) / 8.0);
    EXPECT_NEAR(min_double_conditional_entropy(flat, "c"), 1.0, 1e-9);
    // Classical GHZ mixture: measuring a, b in z pins c.
    Matrix m = Matrix::Zero(8, 8);
    m(0, 0) = m(7, 7) = 0.5;
    const DensityMatrix cl({"a", "b", "c"}, m);
    EXPECT_NEAR(min_double_conditional_entropy(cl, "c"), 0.0, 1e-9);
    EXPECT_NEAR(double_conditional_entropy(cl, "c", {MeasurementBasis{0, 0}, MeasurementBasis{0, 0}}), 0.0, 1e-12);
    EXPECT_NEAR(double_conditional_entropy(cl, "c", {MeasurementBasis{std::numbers::pi / 2, 0}, MeasurementBasis{std::numbers::pi / 2, 0}}),
                1.0, 1e-12);
}

TEST(MixedPath, AgreesWithClosedFormOnPureInput) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const PureState psi = haar_random_pure(3, 40 + seed);
        EXPECT_NEAR(total_classical_mixed(density_of(psi)), total_classical_pure(psi), 1e-3) << seed;
    }
}

TEST(MixedPath, ReportOnMixedState) {
    const DensityMatrix rho = random_mixed(3, 3, 19);
    const CorrelationReport r = analyze(rho);
    EXPECT_FALSE(r.pure);
    EXPECT_EQ(r.method, Method::optimizer);
    EXPECT_FALSE(r.tangle.has_value());
    EXPECT_NEAR(r.T, r.J + r.D, 1e-12);
    EXPECT_NEAR(r.D2, *std::min_element(r.pairwise_discord.begin(), r.pairwise_discord.end()), 1e-15);
    EXPECT_NO_THROW(check_report(r));
}

TEST(NPartite, GhzFour) {
    EXPECT_NEAR(genuine_total_n(ghz_state(4)), 2.0, 1e-9);
    EXPECT_NEAR(genuine_qc_n(ghz_state(4)), 1.0, 1e-9);
    EXPECT_NEAR(genuine_total_n(ghz_state(6)), 2.0, 1e-9);
    EXPECT_THROW(genuine_total_n(bell_state()), unsupported_input);
    EXPECT_THROW(genuine_total_n(random_mixed(4, 2, 1)), unsupported_input);
}

TEST(NPartite, ReducesToThreeQubitValue) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const PureState psi = haar_random_pure(3, seed);
        EXPECT_NEAR(genuine_total_n(psi), genuine_total(density_of(psi)), 1e-9) << seed;
    }
}

TEST(Families, Endpoints) {
    EXPECT_NEAR(analyze(family_ghz_tilde(1.0)).T, 3.0, 1e-9);
    EXPECT_NEAR(analyze(family_ghz_tilde(0.0)).T, 0.0, 1e-12);
    EXPECT_NEAR(analyze(family_w_tilde(1.0)).D3, h_third, 1e-9);
    EXPECT_THROW(family_ghz_tilde(1.5), std::invalid_argument);
    EXPECT_THROW(family_w_tilde(-0.1), std::invalid_argument);
}

TEST(Families, SweepOrderingAndCrossover) {
    const SweepResult s = sweep_families(p_grid(0.0, 1.0, 0.01));
    ASSERT_EQ(s.rows.size(), 202u);
    ASSERT_TRUE(s.crossover.has_value());
    EXPECT_GE(*s.crossover, 0.70);
    EXPECT_LE(*s.crossover, 0.80);
    for (std::size_t i = 0; i < 101; ++i) {
        const auto& g = s.rows[i].report;
        const auto& w = s.rows[101 + i].report;
        EXPECT_GE(g.J - g.D, -1e-9) << s.rows[i].p;
        EXPECT_GE(w.D - w.J, -1e-9) << s.rows[i].p;
        EXPECT_GE(g.T - w.T, -1e-9) << s.rows[i].p;
        EXPECT_GE(g.D3 - w.D3, -1e-9) << s.rows[i].p;
    }
}

TEST(Families, GridAndSingleFamily) {
    EXPECT_EQ(p_grid(0.0, 1.0, 0.25), (std::vector<double>{0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(p_grid(0.3, 0.3, 0.1).size(), 1u);
    EXPECT_THROW(p_grid(0.5, 0.2, 0.1), std::invalid_argument);
    EXPECT_THROW(p_grid(0.0, 1.0, 0.0), std::invalid_argument);
    const SweepResult s = sweep_families(p_grid(0, 1, 0.5), {Family::w_tilde});
    EXPECT_EQ(s.rows.size(), 3u);
    EXPECT_FALSE(s.crossover.has_value());
}

TEST(NamedStates, Parse) {
    EXPECT_EQ(named_state("ghz").amplitudes(), ghz_state().amplitudes());
    EXPECT_EQ(named_state("ghz:n=4").n_qubits(), 4u);
    EXPECT_EQ(named_state("w_tilde:p=0.8").amplitudes(), family_w_tilde(0.8).amplitudes());
    EXPECT_NEAR(three_tangle(named_state("acin:0.6,0,0,0,0.8,0")), 4 * 0.36 * 0.64, 1e-12);
    EXPECT_THROW(named_state("nope"), std::invalid_argument);
    EXPECT_THROW(named_state("ghz_tilde:q=0.5"), std::invalid_argument);
    EXPECT_THROW(named_state("ghz_tilde:p=abc"), std::invalid_argument);
    EXPECT_THROW(named_state("acin:1,0,0"), std::invalid_argument);
    EXPECT_THROW(named_state("acin:1,1,0,0,0,0"), std::invalid_argument);
    EXPECT_THROW(named_state("acin:-1,0,0,0,0,0"), std::invalid_argument);
}
