#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "tricorr/bipartite.hpp"
#include "tricorr/states.hpp"
#include "tricorr/verify.hpp"

using namespace tricorr;

namespace {

// mpmath, 30 digits.
constexpr double h_third = 0.918295834054489514787;
constexpr double eof_two_thirds = 0.550047759582757441;   // E at C = 2/3
constexpr double w_pair_classical = 0.368248074471732074;  // J_{a:b} on rho_ab of W

DensityMatrix w_ab() { return reduce(density_of(w_state()), {0, 1}); }

// Wootters through the non-Hermitian product rho * rho~, general eigensolver.
double concurrence_bruteforce(const DensityMatrix& rho) {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd r = rho.matrix();
    const Eigen::Matrix4cd prod = r * (yy * r.conjugate() * yy);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(prod);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(lam[0] - lam[1] - lam[2] - lam[3], 0.0);
}

DensityMatrix werner(double p) {
    // p |psi-><psi-| + (1 - p) I / 4
    Vector s = Vector::Zero(4);
    s(1) = std::numbers::sqrt2 / 2;
    s(2) = -std::numbers::sqrt2 / 2;
    Matrix m = p * s * s.adjoint() + (1 - p) * Matrix::Identity(4, 4) / 4.0;
    return DensityMatrix({"a", "b"}, m);
}

}  // namespace

TEST(MutualInformation, BellAndProduct) {
    EXPECT_NEAR(mutual_information(density_of(bell_state())), 2.0, 1e-12);
    EXPECT_NEAR(mutual_information(density_of(basis_state("01"))), 0.0, 1e-12);
    EXPECT_NEAR(mutual_information(w_ab()), h_third, 1e-12);
    EXPECT_THROW(mutual_information(density_of(w_state())), std::invalid_argument);
}

TEST(Concurrence, KnownStates) {
    EXPECT_NEAR(concurrence(density_of(bell_state())), 1.0, 1e-12);
    EXPECT_NEAR(concurrence(density_of(basis_state("10"))), 0.0, 1e-12);
    EXPECT_NEAR(concurrence(w_ab()), 2.0 / 3.0, 1e-12);
    // Werner states: C = max(0, (3p - 1) / 2)
    for (double p : {0.1, 1.0 / 3.0, 0.5, 0.8, 1.0}) EXPECT_NEAR(concurrence(werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-10);
    EXPECT_THROW(concurrence(density_of(ghz_state())), std::invalid_argument);
}

TEST(Concurrence, AgreesWithNonHermitianRoute) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const DensityMatrix rho = seed % 3 == 0 ? reduce(density_of(haar_random_pure(3, seed)), {0, 2})
                                                : random_mixed(2, 1 + seed % 4, seed);
        EXPECT_NEAR(concurrence(rho), concurrence_bruteforce(rho), 1e-6) << "seed " << seed;
    }
}

TEST(ConcurrenceProperty, LocalUnitaryInvariant) {
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DensityMatrix rho = random_mixed(2, 1 + seed % 3, seed);
        Eigen::Matrix4cd u;
        const Matrix ua = random_unitary(2, rng), ub = random_unitary(2, rng);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) u(2 * i + k, 2 * j + l) = ua(i, j) * ub(k, l);
        const DensityMatrix rotated({"a", "b"}, u * rho.matrix() * u.adjoint());
        EXPECT_NEAR(concurrence(rho), concurrence(rotated), 1e-9) << "seed " << seed;
    }
}

TEST(OneToRest, PureStateValues) {
    const DensityMatrix rho = density_of(w_state());
    EXPECT_NEAR(one_to_rest_concurrence(reduce(rho, {0})), 0.942809041582063366, 1e-12);
    EXPECT_NEAR(one_to_rest_concurrence(reduce(density_of(ghz_state()), {1})), 1.0, 1e-12);
    EXPECT_THROW(one_to_rest_concurrence(w_ab()), std::invalid_argument);
}

TEST(EntanglementOfFormation, FromConcurrence) {
    EXPECT_NEAR(eof_from_concurrence(0.0), 0.0, 1e-15);
    EXPECT_NEAR(eof_from_concurrence(1.0), 1.0, 1e-15);
    EXPECT_NEAR(eof_from_concurrence(2.0 / 3.0), eof_two_thirds, 1e-14);
    EXPECT_NEAR(entanglement_of_formation(w_ab()), eof_two_thirds, 1e-12);
    EXPECT_THROW(eof_from_concurrence(1.5), std::invalid_argument);
}

TEST(MeasuredConditional, WPairInEquatorialBasis) {
    const double v = conditional_entropy_measured(w_ab(), MeasurementBasis{std::numbers::pi / 2, 0.0}, "b");
    EXPECT_NEAR(v, 0.550047759582758, 1e-12);
}

TEST(Discord, BellPairIsOneEitherWay) {
    const DensityMatrix rho = density_of(bell_state());
    EXPECT_NEAR(discord_directional(rho, "a").value, 1.0, 1e-4);
    EXPECT_NEAR(discord_directional(rho, "b").value, 1.0, 1e-4);
    EXPECT_NEAR(classical_correlation_directional(rho, "b").value, 1.0, 1e-9);
}

TEST(Discord, DegenerateLandscapeReturnsFirstGridPoint) {
    const auto r = discord_directional(density_of(bell_state()), "b");
    EXPECT_EQ(r.optimal_basis.theta, 0.0);
    EXPECT_EQ(r.optimal_basis.phi, 0.0);
    EXPECT_EQ(r.method, Method::optimizer);
}

TEST(Discord, ZeroOnProductAndClassicalStates) {
    EXPECT_NEAR(discord_directional(density_of(tensor(haar_random_pure(1, 3), haar_random_pure(1, 4))), "b").value, 0.0, 1e-6);
    Matrix cc = Matrix::Zero(4, 4);
    cc(0, 0) = cc(3, 3) = 0.5;
    const DensityMatrix rho({"a", "b"}, cc);
    EXPECT_NEAR(discord_directional(rho, "b").value, 0.0, 1e-9);
    EXPECT_NEAR(classical_correlation_directional(rho, "b").value, 1.0, 1e-9);
}

TEST(Discord, WernerClosedForm) {
    // Bell-diagonal with c1 = c2 = c3 = -p: J = sum_{s=+-1} (1 + s p)/2 log2(1 + s p).
    for (double p : {0.2, 0.5, 0.9}) {
        const DensityMatrix rho = werner(p);
        const double j = (1 + p) / 2 * std::log2(1 + p) + (1 - p) / 2 * std::log2(1 - p);
        EXPECT_NEAR(classical_correlation_directional(rho, "b").value, j, 1e-8) << p;
        EXPECT_NEAR(discord_directional(rho, "a").value, mutual_information(rho) - j, 1e-8) << p;
    }
}

TEST(Discord, WPairMatchesClosedForm) {
    const DensityMatrix rho = w_ab();
    EXPECT_NEAR(classical_correlation_directional(rho, "b").value, w_pair_classical, 1e-9);
    EXPECT_NEAR(discord_directional(rho, "b").value, eof_two_thirds, 1e-9);
    EXPECT_NEAR(koashi_winter_classical(w_state(), "a", "b"), w_pair_classical, 1e-12);
    EXPECT_NEAR(koashi_winter_discord(w_state(), "a", "b"), eof_two_thirds, 1e-12);
}

TEST(Discord, SummaryIsConsistent) {
    const DensityMatrix rho = random_mixed(2, 2, 8);
    const BipartiteSummary s = summarize(rho);
    for (std::size_t m = 0; m < 2; ++m)
        EXPECT_NEAR(s.classical[m].value + s.discord[m].value, s.mutual_information, 1e-12);
    EXPECT_EQ(s.symmetrized_classical, std::max(s.classical[0].value, s.classical[1].value));
    EXPECT_EQ(s.symmetrized_discord, std::min(s.discord[0].value, s.discord[1].value));
    EXPECT_NEAR(symmetrized_discord(rho), s.symmetrized_discord, 1e-12);
    EXPECT_NEAR(symmetrized_classical(rho), s.symmetrized_classical, 1e-12);
}

TEST(Discord, Errors) {
    EXPECT_THROW(discord_directional(density_of(ghz_state()), "a"), std::invalid_argument);
    EXPECT_THROW(discord_directional(density_of(bell_state()), "z"), std::invalid_argument);
    OptimizerOptions tiny;
    tiny.theta_points = 1;
    EXPECT_THROW(discord_directional(density_of(bell_state()), "a", tiny), std::invalid_argument);
    EXPECT_THROW(koashi_winter_discord(w_ab(), "a", "b"), std::invalid_argument);
    EXPECT_THROW(koashi_winter_discord(reduce(random_mixed(4, 2, 1), {0, 1, 2}), "a", "b"), unsupported_input);
}

TEST(OptimizerProperty, GridDoublingNeverRaisesTheMinimum) {
    // G' = 2G - 1, H' = 2H contains the coarse grid, so without refinement the
    // fine minimum is at most the coarse one.
    OptimizerOptions coarse;
    coarse.theta_points = 9;
    coarse.phi_points = 16;
    coarse.refine_iterations = 0;
    OptimizerOptions fine = coarse;
    fine.theta_points = 2 * coarse.theta_points - 1;
    fine.phi_points = 2 * coarse.phi_points;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const DensityMatrix rho = random_mixed(2, 1 + seed % 3, seed);
        const double c = discord_directional(rho, "b", coarse).value;
        const double f = discord_directional(rho, "b", fine).value;
        EXPECT_LE(f, c + 1e-12) << "seed " << seed;
    }
}

TEST(OptimizerProperty, RefinementNeverHurts) {
    OptimizerOptions raw;
    raw.refine_iterations = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const DensityMatrix rho = random_mixed(2, 2, 300 + seed);
        EXPECT_LE(discord_directional(rho, "a").value, discord_directional(rho, "a", raw).value + 1e-12);
    }
}

TEST(OptimizerProperty, MatchesClosedFormOn200States) {
    const ViolationReport r = oracle_crosscheck(200, 2024);
    for (const auto& c : r.checks) EXPECT_EQ(c.count_violated, 0u) << c.name << " worst " << c.worst_excess;
    ASSERT_NE(r.find("oracle_discord"), nullptr);
    EXPECT_EQ(r.find("oracle_discord")->count_checked, 200u * 6u);
}

TEST(MeasurementBasisTest, CanonicalAndProjectors) {
    const MeasurementBasis b = MeasurementBasis::canonical(-0.3, 7.0);
    EXPECT_GE(b.theta, 0.0);
    EXPECT_LE(b.theta, std::numbers::pi);
    EXPECT_GE(b.phi, 0.0);
    EXPECT_LT(b.phi, 2 * std::numbers::pi);
    // Same Bloch direction, so same projector.
    const auto p1 = MeasurementBasis{-0.3, 7.0}.projectors();
    const auto p2 = b.projectors();
    EXPECT_TRUE(p1[0].isApprox(p2[0], 1e-12));
    EXPECT_TRUE((p2[0] + p2[1]).isApprox(Eigen::Matrix2cd::Identity(), 1e-12));
}
