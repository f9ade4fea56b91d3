#pragma once

// Total, bipartite and genuine tripartite correlations of three-qubit states.
//
// Pure states go through closed forms built from one-qubit entropies and the
// entanglement of formation of the two-qubit reductions. Mixed states fall
// back to the projective-measurement optimizers and are flagged as such.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tricorr/bipartite.hpp"
#include "tricorr/errors.hpp"
#include "tricorr/qstate.hpp"
#include "tricorr/simplex.hpp"
#include "tricorr/states.hpp"

namespace tricorr {

// Pairs of a three-party state in a fixed order: (0,1), (0,2), (1,2).
inline constexpr std::array<std::array<std::size_t, 2>, 3> party_pairs{{{0, 1}, {0, 2}, {1, 2}}};

inline std::size_t pair_index(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (i == j || j > 2) throw std::invalid_argument("pair_index: need two distinct parties of three");
    return i + j - 1;
}

// Relabeling under which I(ab) >= I(ac) >= I(bc).
struct PartyOrdering {
    std::array<std::size_t, 3> perm{0, 1, 2};  // perm[r]: original index playing role r
    std::array<std::string, 3> labels;          // original labels in role order
    std::array<double, 3> sorted_mutual_infos{};
};

struct CorrelationReport {
    std::vector<std::string> parties;
    double T = 0.0, J = 0.0, D = 0.0;
    double T2 = 0.0, T3 = 0.0;
    double J2 = 0.0, J3 = 0.0;
    double D2 = 0.0, D3 = 0.0;
    std::optional<double> tangle;  // pure inputs only
    std::array<double, 3> entropies{};           // S(rho_i)
    std::array<double, 3> pairwise_mutual{};     // by party_pairs
    std::array<double, 3> pairwise_classical{};  // symmetrized, by party_pairs
    std::array<double, 3> pairwise_discord{};    // symmetrized, by party_pairs
    std::array<double, 3> cut_mutual{};          // I(rho_{jk,i}) for i = 0, 1, 2
    PartyOrdering ordering;
    bool pure = false;
    Method method = Method::closed_form;
};

namespace detail {

inline void require_three_parties(const DensityMatrix& rho) {
    if (rho.n_parties() != 3 || rho.dim() != 8) throw std::invalid_argument("expected a three-qubit state");
}

inline std::array<double, 3> pairwise_mutual_informations(const DensityMatrix& rho) {
    std::array<double, 3> s{}, out{};
    for (std::size_t i = 0; i < 3; ++i) s[i] = von_neumann_entropy(reduce(rho, {i}));
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = party_pairs[p];
        out[p] = std::max(s[i] + s[j] - von_neumann_entropy(reduce(rho, {i, j})), 0.0);
    }
    return out;
}

// Everything the pure-state closed forms need.
struct PureMarginals {
    std::array<double, 3> entropy{};       // S(rho_i)
    std::array<double, 3> eof{};           // E(rho_ij) by party_pairs
    std::array<double, 3> concurrence{};   // C(rho_ij) by party_pairs
    std::array<double, 3> one_to_rest{};   // C_i
};

// rho_ij = A A^dagger with A indexed by (bits of i,j) x (bit of k).
inline Matrix pair_factor(const PureState& psi, std::size_t i, std::size_t j) {
    const std::size_t k = 3 - i - j;
    Matrix a = Matrix::Zero(4, 2);
    for (std::size_t x = 0; x < 8; ++x) {
        const auto bit = [&](std::size_t party) { return (x >> (2 - party)) & 1U; };
        a(static_cast<Eigen::Index>(2 * bit(i) + bit(j)), static_cast<Eigen::Index>(bit(k))) =
            psi.amplitudes()(static_cast<Eigen::Index>(x));
    }
    return a;
}

inline PureMarginals pure_marginals(const DensityMatrix& rho) {
    PureMarginals m;
    const auto psi = as_pure(rho);
    for (std::size_t i = 0; i < 3; ++i) {
        const DensityMatrix r = reduce(rho, {i});
        m.entropy[i] = von_neumann_entropy(r);
        m.one_to_rest[i] = one_to_rest_concurrence(r);
    }
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = party_pairs[p];
        m.concurrence[p] = psi ? concurrence_from_factor(pair_factor(*psi, i, j)) : concurrence(reduce(rho, {i, j}));
        m.eof[p] = eof_from_concurrence(m.concurrence[p]);
    }
    return m;
}

inline double kw_classical(const PureMarginals& m, std::size_t i, std::size_t j) {
    const std::size_t k = 3 - i - j;
    return std::max(m.entropy[i] - m.eof[pair_index(i, k)], 0.0);
}

inline double kw_discord(const PureMarginals& m, std::size_t i, std::size_t j) {
    const std::size_t k = 3 - i - j;
    return std::max(m.entropy[j] - m.entropy[k] + m.eof[pair_index(i, k)], 0.0);
}

}  // namespace detail

inline double total_information(const DensityMatrix& rho) {
    detail::require_three_parties(rho);
    double t = -von_neumann_entropy(rho);
    for (std::size_t i = 0; i < 3; ++i) t += von_neumann_entropy(reduce(rho, {i}));
    return std::max(t, 0.0);
}

// I(rho_{jk,i}): mutual information across the cut isolating party i.
inline double cut_mutual_information(const DensityMatrix& rho, std::size_t i) {
    detail::require_three_parties(rho);
    return mutual_information(rho, {i});
}

inline PartyOrdering canonical_ordering(const DensityMatrix& rho) {
    detail::require_three_parties(rho);
    const auto mi = detail::pairwise_mutual_informations(rho);
    const auto& labels = rho.parties();

    std::array<std::size_t, 3> perm{0, 1, 2};
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return labels[x] < labels[y]; });
    constexpr double slack = 1e-10;
    do {
        const double ab = mi[pair_index(perm[0], perm[1])];
        const double ac = mi[pair_index(perm[0], perm[2])];
        const double bc = mi[pair_index(perm[1], perm[2])];
        if (ab >= ac - slack && ac >= bc - slack) {
            PartyOrdering o;
            o.perm = perm;
            for (std::size_t r = 0; r < 3; ++r) o.labels[r] = labels[perm[r]];
            o.sorted_mutual_infos = {ab, ac, bc};
            return o;
        }
    } while (std::next_permutation(perm.begin(), perm.end(),
                                   [&](std::size_t x, std::size_t y) { return labels[x] < labels[y]; }));
    throw consistency_error("no party ordering satisfies the mutual-information ladder");
}

// T - max pairwise mutual information.
inline double genuine_total(const DensityMatrix& rho) {
    const auto mi = detail::pairwise_mutual_informations(rho);
    return std::max(total_information(rho) - *std::max_element(mi.begin(), mi.end()), 0.0);
}

// min over cuts of S(rho || rho_jk (x) rho_i).
inline double genuine_total_via_relative_entropy(const DensityMatrix& rho) {
    detail::require_three_parties(rho);
    double best = infinity;
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t p = 0; p < 3; ++p)
            if (p != i) rest.push_back(p);
        best = std::min(best, relative_entropy(rho, product_of_marginals(rho, {rest, {i}})));
    }
    return best;
}

namespace detail {

struct ClosedForm {
    PureMarginals marginals;
    PartyOrdering ordering;
    double sa = 0.0, sb = 0.0, sc = 0.0;
    double e_bc = 0.0;
};

inline ClosedForm closed_form(const DensityMatrix& rho) {
    ClosedForm cf;
    cf.marginals = pure_marginals(rho);
    cf.ordering = canonical_ordering(rho);
    const auto [a, b, c] = cf.ordering.perm;
    cf.sa = cf.marginals.entropy[a];
    cf.sb = cf.marginals.entropy[b];
    cf.sc = cf.marginals.entropy[c];
    cf.e_bc = cf.marginals.eof[pair_index(b, c)];
    return cf;
}

inline DensityMatrix pure_density(const PureState& psi) {
    require_three_qubits(psi);
    return density_of(psi);
}

}  // namespace detail

struct BipartiteParts {
    double J2 = 0.0;
    double D2 = 0.0;
};

// J = S(b) + S(c) - E(bc), parties in canonical order.
inline double total_classical_pure(const PureState& psi) {
    const auto cf = detail::closed_form(detail::pure_density(psi));
    return std::max(cf.sb + cf.sc - cf.e_bc, 0.0);
}

// D = S(a) + E(bc), parties in canonical order.
inline double total_discord_pure(const PureState& psi) {
    const auto cf = detail::closed_form(detail::pure_density(psi));
    return cf.sa + cf.e_bc;
}

// J2 = S(b) - E(bc) and D2 = S(a) - S(c) + E(bc): the classical correlation
// and discord of the pair (a,b) carrying the largest mutual information.
inline BipartiteParts bipartite_parts_pure(const PureState& psi) {
    const auto cf = detail::closed_form(detail::pure_density(psi));
    return {std::max(cf.sb - cf.e_bc, 0.0), std::max(cf.sa - cf.sc + cf.e_bc, 0.0)};
}

// Genuine classical and quantum parts coincide for pure states: both equal
// the smallest one-qubit entropy.
inline double genuine_classical(const PureState& psi) {
    return detail::closed_form(detail::pure_density(psi)).sc;
}

inline double genuine_discord(const PureState& psi) { return genuine_classical(psi); }

// Residual tangle C_i^2 - C_ij^2 - C_ik^2 seen from `focus`.
inline double three_tangle(const PureState& psi, std::size_t focus) {
    const DensityMatrix rho = detail::pure_density(psi);
    if (focus > 2) throw std::invalid_argument("three_tangle: focus party out of range");
    const auto m = detail::pure_marginals(rho);
    const std::size_t j = (focus + 1) % 3;
    const std::size_t k = (focus + 2) % 3;
    const double cij = m.concurrence[pair_index(focus, j)];
    const double cik = m.concurrence[pair_index(focus, k)];
    const double tau = m.one_to_rest[focus] * m.one_to_rest[focus] - cij * cij - cik * cik;
    if (tau < -1e-9) throw consistency_error("negative residual tangle: " + std::to_string(tau));
    return std::clamp(tau, 0.0, 1.0);
}

inline double three_tangle(const PureState& psi) { return three_tangle(psi, 0); }

inline double total_classical_pure(const DensityMatrix& rho) { return total_classical_pure(detail::require_pure(rho)); }
inline double total_discord_pure(const DensityMatrix& rho) { return total_discord_pure(detail::require_pure(rho)); }
inline BipartiteParts bipartite_parts_pure(const DensityMatrix& rho) {
    return bipartite_parts_pure(detail::require_pure(rho));
}
inline double genuine_classical(const DensityMatrix& rho) { return genuine_classical(detail::require_pure(rho)); }
inline double genuine_discord(const DensityMatrix& rho) { return genuine_discord(detail::require_pure(rho)); }
inline double three_tangle(const DensityMatrix& rho) { return three_tangle(detail::require_pure(rho)); }

// ---------------------------------------------------------------------------
// Local measurements on two parties, conditional entropy of the third.

struct DoubleMeasurementOptions {
    std::size_t points_per_angle = 30;
    int refine_iterations = 400;
    double refine_tolerance = 1e-10;
};

namespace detail {

// Measurements on parties i < j of a three-qubit state; conditional states of
// the remaining party k.
class DoubleMeasuredConditional {
public:
    DoubleMeasuredConditional(const DensityMatrix& rho, std::size_t k) {
        require_three_parties(rho);
        if (k > 2) throw std::invalid_argument("target party out of range");
        std::vector<std::size_t> order;
        for (std::size_t p = 0; p < 3; ++p)
            if (p != k) order.push_back(p);
        order.push_back(k);
        // Permute into (i, j, k) order.
        Eigen::Matrix<cplx, 8, 8> r;
        for (std::size_t x = 0; x < 8; ++x)
            for (std::size_t y = 0; y < 8; ++y)
                r(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                    rho.matrix()(static_cast<Eigen::Index>(scatter_bits(x, order, 3)),
                                 static_cast<Eigen::Index>(scatter_bits(y, order, 3)));
        for (int x = 0; x < 2; ++x)
            for (int xp = 0; xp < 2; ++xp) blocks_[x][xp] = r.block<4, 4>(4 * x, 4 * xp);
        marginal_jk_ = blocks_[0][0] + blocks_[1][1];
    }

    // Unnormalized (j,k) states for the two outcomes on i.
    std::array<Eigen::Matrix4cd, 2> after_first(const MeasurementBasis& bi) const {
        const Eigen::Vector2cd m = bi.ket();
        Eigen::Matrix4cd t0 = Eigen::Matrix4cd::Zero();
        for (int x = 0; x < 2; ++x)
            for (int xp = 0; xp < 2; ++xp) t0 += std::conj(m(x)) * m(xp) * blocks_[x][xp];
        return {t0, marginal_jk_ - t0};
    }

    static double after_second(const std::array<Eigen::Matrix4cd, 2>& tau, const MeasurementBasis& bj) {
        const Eigen::Vector2cd n = bj.ket();
        double total = 0.0;
        for (const auto& t : tau) {
            Eigen::Matrix2cd s0 = Eigen::Matrix2cd::Zero();
            for (int y = 0; y < 2; ++y)
                for (int yp = 0; yp < 2; ++yp) s0 += std::conj(n(y)) * n(yp) * t.block<2, 2>(2 * y, 2 * yp);
            const Eigen::Matrix2cd s1 = t.block<2, 2>(0, 0) + t.block<2, 2>(2, 2) - s0;
            for (const Eigen::Matrix2cd* s : std::array<const Eigen::Matrix2cd*, 2>{&s0, &s1}) {
                const double p = s->trace().real();
                if (p < 1e-12) continue;
                total += p * qubit_entropy_unnormalized(*s, p);
            }
        }
        return total;
    }

    double operator()(const MeasurementBasis& bi, const MeasurementBasis& bj) const {
        return after_second(after_first(bi), bj);
    }

private:
    Eigen::Matrix4cd blocks_[2][2];
    Eigen::Matrix4cd marginal_jk_;
};

}  // namespace detail

// S(k | {E^i, E^j}) for product projective measurements on the two parties
// other than k; bases[0] acts on the lower-indexed of them.
inline double double_conditional_entropy(const DensityMatrix& rho, const std::string& k,
                                         const std::array<MeasurementBasis, 2>& bases) {
    const detail::DoubleMeasuredConditional cond(rho, rho.index_of(k));
    return cond(bases[0], bases[1]);
}

struct DoubleMeasurementResult {
    double value = infinity;
    std::array<MeasurementBasis, 2> bases;
};

inline DoubleMeasurementResult min_double_conditional_entropy_detailed(const DensityMatrix& rho, std::size_t k,
                                                                      const DoubleMeasurementOptions& opt = {}) {
    const detail::DoubleMeasuredConditional cond(rho, k);
    const std::size_t g = opt.points_per_angle;
    if (g < 2) throw std::invalid_argument("double-measurement grid too small");
    const double dtheta = std::numbers::pi / static_cast<double>(g - 1);
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(g);

    // The conditional entropy is nonnegative, so a grid value at roundoff
    // level cannot be improved on.
    constexpr double floor_value = 1e-14;
    DoubleMeasurementResult best;
    for (std::size_t a = 0; a < g && best.value > floor_value; ++a)
        for (std::size_t b = 0; b < g && best.value > floor_value; ++b) {
            const MeasurementBasis bi{static_cast<double>(a) * dtheta, static_cast<double>(b) * dphi};
            const auto tau = cond.after_first(bi);
            for (std::size_t c = 0; c < g && best.value > floor_value; ++c)
                for (std::size_t d = 0; d < g; ++d) {
                    const MeasurementBasis bj{static_cast<double>(c) * dtheta, static_cast<double>(d) * dphi};
                    const double v = detail::DoubleMeasuredConditional::after_second(tau, bj);
                    if (v < best.value - 1e-10) {
                        best = {v, {bi, bj}};
                        if (v <= floor_value) break;
                    }
                }
        }
    if (best.value <= floor_value) return best;

    SimplexOptions sopt;
    sopt.max_iterations = opt.refine_iterations;
    sopt.size_tolerance = opt.refine_tolerance;
    sopt.initial_step = std::min(dtheta, dphi);
    const SimplexResult refined = minimize_simplex(
        [&cond](const std::vector<double>& x) {
            return cond(MeasurementBasis{x[0], x[1]}, MeasurementBasis{x[2], x[3]});
        },
        {best.bases[0].theta, best.bases[0].phi, best.bases[1].theta, best.bases[1].phi}, sopt);
    if (refined.value < best.value - 1e-10) {
        const std::array<MeasurementBasis, 2> b{MeasurementBasis::canonical(refined.x[0], refined.x[1]),
                                                MeasurementBasis::canonical(refined.x[2], refined.x[3])};
        best = {cond(b[0], b[1]), b};
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

inline double min_double_conditional_entropy(const DensityMatrix& rho, const std::string& k,
                                             const DoubleMeasurementOptions& opt = {}) {
    return min_double_conditional_entropy_detailed(rho, rho.index_of(k), opt).value;
}

struct MixedOptions {
    OptimizerOptions single;
    DoubleMeasurementOptions dual;
};

// max over the 6 orderings (i,j,k) of S(j) - S(j|i) + S(k) - S(k|ji), with
// projective measurements only. A lower bound on the POVM-defined value.
inline double total_classical_mixed(const DensityMatrix& rho, const MixedOptions& opt = {}) {
    detail::require_three_parties(rho);
    std::array<double, 3> s{}, s_k_given_rest{};
    for (std::size_t i = 0; i < 3; ++i) {
        s[i] = von_neumann_entropy(reduce(rho, {i}));
        s_k_given_rest[i] = min_double_conditional_entropy_detailed(rho, i, opt.dual).value;
    }
    double best = 0.0;
    std::array<std::size_t, 3> perm{0, 1, 2};
    do {
        const auto [i, j, k] = perm;
        const DensityMatrix rij = reduce(rho, {i, j});
        const detail::MeasuredConditional cond(rij.matrix(), i < j ? 0 : 1);
        const double s_j_given_i = detail::minimize_over_bloch_sphere(cond, opt.single).value;
        best = std::max(best, s[j] - s_j_given_i + s[k] - s_k_given_rest[k]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// ---------------------------------------------------------------------------
// n-partite pure states.

namespace detail {

inline PureState require_n_partite(const PureState& psi) {
    if (psi.n_qubits() < 3 || psi.n_qubits() > max_qubits)
        throw unsupported_input("n-partite genuine correlations need 3..6 qubits");
    return psi;
}

}  // namespace detail

// Smallest mutual information over all bipartitions of a pure state.
inline double genuine_total_n(const PureState& psi) {
    detail::require_n_partite(psi);
    const std::size_t n = psi.n_qubits();
    const DensityMatrix rho = density_of(psi);
    const std::size_t full = (std::size_t{1} << (n - 1)) - 1;
    double best = infinity;
    // Side A always holds party 0; `mask` picks which of parties 1..n-1 join it.
    for (std::size_t mask = 0; mask < full; ++mask) {
        std::vector<std::size_t> side{0}, rest;
        for (std::size_t p = 1; p < n; ++p) ((mask >> (p - 1)) & 1u ? side : rest).push_back(p);
        const double i = von_neumann_entropy(partial_trace(rho, side)) + von_neumann_entropy(partial_trace(rho, rest));
        best = std::min(best, i);
    }
    return best;
}

inline double genuine_qc_n(const PureState& psi) { return genuine_total_n(psi) / 2.0; }

inline double genuine_total_n(const DensityMatrix& rho) { return genuine_total_n(detail::require_pure(rho)); }
inline double genuine_qc_n(const DensityMatrix& rho) { return genuine_qc_n(detail::require_pure(rho)); }

// ---------------------------------------------------------------------------
// Full report.

struct AnalyzeOptions {
    MixedOptions mixed;
    bool pure_only = false;
};

inline CorrelationReport analyze(const DensityMatrix& rho, const AnalyzeOptions& opt = {}) {
    detail::require_three_parties(rho);
    CorrelationReport r;
    r.parties = rho.parties();
    const auto psi = as_pure(rho);
    if (!psi && opt.pure_only) throw unsupported_input("state is mixed; closed-form path requires a pure state");

    r.T = total_information(rho);
    r.pairwise_mutual = detail::pairwise_mutual_informations(rho);
    for (std::size_t i = 0; i < 3; ++i) {
        r.entropies[i] = von_neumann_entropy(reduce(rho, {i}));
        r.cut_mutual[i] = cut_mutual_information(rho, i);
    }
    r.ordering = canonical_ordering(rho);
    r.T2 = *std::max_element(r.pairwise_mutual.begin(), r.pairwise_mutual.end());
    r.T3 = std::max(r.T - r.T2, 0.0);

    if (psi) {
        const DensityMatrix pure_rho = density_of(*psi);
        const auto cf = detail::closed_form(pure_rho);
        r.pure = true;
        r.method = Method::closed_form;
        r.J = std::max(cf.sb + cf.sc - cf.e_bc, 0.0);
        r.D = cf.sa + cf.e_bc;
        r.J2 = std::max(cf.sb - cf.e_bc, 0.0);
        r.D2 = std::max(cf.sa - cf.sc + cf.e_bc, 0.0);
        for (std::size_t p = 0; p < 3; ++p) {
            const auto [i, j] = party_pairs[p];
            r.pairwise_classical[p] =
                std::max(detail::kw_classical(cf.marginals, i, j), detail::kw_classical(cf.marginals, j, i));
            r.pairwise_discord[p] =
                std::min(detail::kw_discord(cf.marginals, i, j), detail::kw_discord(cf.marginals, j, i));
        }
        r.tangle = three_tangle(*psi);
    } else {
        r.pure = false;
        r.method = Method::optimizer;
        r.J = std::min(total_classical_mixed(rho, opt.mixed), r.T);
        r.D = r.T - r.J;
        for (std::size_t p = 0; p < 3; ++p) {
            const auto s = summarize(reduce(rho, {party_pairs[p][0], party_pairs[p][1]}), opt.mixed.single);
            r.pairwise_classical[p] = s.symmetrized_classical;
            r.pairwise_discord[p] = s.symmetrized_discord;
        }
        r.J2 = *std::max_element(r.pairwise_classical.begin(), r.pairwise_classical.end());
        r.D2 = *std::min_element(r.pairwise_discord.begin(), r.pairwise_discord.end());
    }
    r.J3 = r.J - r.J2;
    r.D3 = r.D - r.D2;
    return r;
}

inline CorrelationReport analyze(const PureState& psi, const AnalyzeOptions& opt = {}) {
    return analyze(detail::pure_density(psi), opt);
}

// Throws consistency_error when the report breaks one of its identities.
inline void check_report(const CorrelationReport& r, double tol = 1e-9) {
    auto expect = [tol](double lhs, double rhs, const char* what) {
        if (!(std::abs(lhs - rhs) <= tol))
            throw consistency_error(std::string("report invariant violated: ") + what + " (" + std::to_string(lhs) +
                                    " vs " + std::to_string(rhs) + ")");
    };
    expect(r.T3, r.T - r.T2, "T3 = T - T2");
    expect(r.J3, r.J - r.J2, "J3 = J - J2");
    expect(r.D3, r.D - r.D2, "D3 = D - D2");
    if (!r.pure) return;
    expect(r.T, r.J + r.D, "T = J + D");
    const double smin = *std::min_element(r.entropies.begin(), r.entropies.end());
    expect(r.J3, smin, "J3 = S(c)");
    expect(r.D3, smin, "D3 = S(c)");
    expect(r.T3 / 2.0, smin, "T3 / 2 = S(c)");
    expect(r.T3, *std::min_element(r.cut_mutual.begin(), r.cut_mutual.end()), "T3 = min cut mutual information");
    for (double v : {r.T, r.J, r.D, r.T2, r.T3, r.J2, r.J3, r.D2, r.D3})
        if (v < -tol) throw consistency_error("report field negative");
}

// ---------------------------------------------------------------------------
// Family sweeps.

enum class Family { ghz_tilde, w_tilde };

inline const char* to_string(Family f) { return f == Family::ghz_tilde ? "ghz_tilde" : "w_tilde"; }

inline PureState family_state(Family f, double p) {
    return f == Family::ghz_tilde ? family_ghz_tilde(p) : family_w_tilde(p);
}

struct SweepRow {
    double p = 0.0;
    Family family = Family::ghz_tilde;
    CorrelationReport report;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    // First p where the W-family discord exceeds the GHZ-family discord,
    // bisected to 1e-4 inside the bracketing grid interval.
    std::optional<double> crossover;
};

inline std::vector<double> p_grid(double p_min, double p_max, double step) {
    if (!(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max)) throw std::invalid_argument("p range must satisfy 0 <= p_min <= p_max <= 1");
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) out.push_back(std::min(p_min + static_cast<double>(k) * step, p_max));
    return out;
}

inline std::optional<double> discord_crossover(const std::vector<double>& grid) {
    auto gap = [](double p) {
        return total_discord_pure(family_w_tilde(p)) - total_discord_pure(family_ghz_tilde(p));
    };
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (gap(grid[k]) <= 0.0) continue;
        if (k == 0) return grid[0];
        double lo = grid[k - 1], hi = grid[k];
        while (hi - lo > 1e-4) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) > 0.0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }
    return std::nullopt;
}

inline SweepResult sweep_families(const std::vector<double>& grid, std::vector<Family> families = {Family::ghz_tilde, Family::w_tilde}) {
    SweepResult out;
    for (Family f : families)
        for (double p : grid) out.rows.push_back({p, f, analyze(family_state(f, p))});
    const bool both = std::find(families.begin(), families.end(), Family::ghz_tilde) != families.end() &&
                      std::find(families.begin(), families.end(), Family::w_tilde) != families.end();
    if (both) out.crossover = discord_crossover(grid);
    return out;
}

}  // namespace tricorr
