#pragma once

// Two-qubit correlation measures: concurrence, entanglement of formation,
// mutual information, and directional/symmetrized classical correlation and
// discord. The measurement optimizer scans rank-1 projective measurements on
// a theta x phi grid and polishes the best point with a simplex search; the
// Koashi-Winter closed forms for reductions of pure three-qubit states serve
// as its independent check.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tricorr/errors.hpp"
#include "tricorr/qstate.hpp"
#include "tricorr/simplex.hpp"

namespace tricorr {

enum class Method { closed_form, optimizer };

inline const char* to_string(Method m) { return m == Method::closed_form ? "closed-form" : "optimizer"; }

// Projectors onto |m0> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and its
// orthogonal complement.
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;

    // Maps arbitrary angles onto theta in [0, pi], phi in [0, 2 pi) through
    // the Bloch vector of |m0>.
    static MeasurementBasis canonical(double theta, double phi) {
        const double nx = std::sin(theta) * std::cos(phi);
        const double ny = std::sin(theta) * std::sin(phi);
        const double nz = std::cos(theta);
        MeasurementBasis b;
        b.theta = std::acos(std::clamp(nz, -1.0, 1.0));
        if (std::hypot(nx, ny) < 1e-14) {
            b.phi = 0.0;
        } else {
            b.phi = std::atan2(ny, nx);
            if (b.phi < 0.0) b.phi += 2.0 * std::numbers::pi;
            if (b.phi >= 2.0 * std::numbers::pi) b.phi = 0.0;
        }
        return b;
    }

    Eigen::Vector2cd ket() const {
        return {cplx(std::cos(theta / 2.0), 0.0), std::polar(std::sin(theta / 2.0), phi)};
    }

    std::array<Eigen::Matrix2cd, 2> projectors() const {
        const Eigen::Vector2cd m = ket();
        const Eigen::Matrix2cd p0 = m * m.adjoint();
        return {p0, Eigen::Matrix2cd::Identity() - p0};
    }
};

struct DirectionalResult {
    double value = 0.0;
    MeasurementBasis optimal_basis;
    Method method = Method::optimizer;
};

struct OptimizerOptions {
    std::size_t theta_points = 60;
    std::size_t phi_points = 120;
    int refine_iterations = 200;
    double refine_tolerance = 1e-10;
};

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho) {
    if (rho.n_parties() != 2 || rho.dim() != 4) throw std::invalid_argument("expected a two-qubit density matrix");
}

// Entropy (bits) of the normalized 2x2 state sigma / tr(sigma).
inline double qubit_entropy_unnormalized(const Eigen::Matrix2cd& sigma, double p) {
    const double half_diff = 0.5 * (sigma(0, 0).real() - sigma(1, 1).real());
    const double radius = 2.0 * std::sqrt(half_diff * half_diff + std::norm(sigma(0, 1))) / p;
    const double lambda = std::clamp(0.5 * (1.0 + radius), 0.5, 1.0);
    return binary_entropy(lambda);
}

// Measuring one qubit of a two-qubit state in the basis {|m>, |m_perp>}
// leaves the other qubit in sum_{b,b'} conj(m_b) m_b' blocks[b][b'].
class MeasuredConditional {
public:
    MeasuredConditional(const Matrix& rho, std::size_t measured) {
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp)
                for (int x = 0; x < 2; ++x)
                    for (int xp = 0; xp < 2; ++xp) {
                        const int r = measured == 1 ? 2 * x + b : 2 * b + x;
                        const int c = measured == 1 ? 2 * xp + bp : 2 * bp + xp;
                        blocks_[b][bp](x, xp) = rho(r, c);
                    }
        marginal_ = blocks_[0][0] + blocks_[1][1];
    }

    const Eigen::Matrix2cd& unmeasured_marginal() const { return marginal_; }

    double operator()(const MeasurementBasis& basis) const {
        const Eigen::Vector2cd m = basis.ket();
        Eigen::Matrix2cd s0 = Eigen::Matrix2cd::Zero();
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp) s0 += std::conj(m(b)) * m(bp) * blocks_[b][bp];
        const Eigen::Matrix2cd s1 = marginal_ - s0;
        double total = 0.0;
        for (const Eigen::Matrix2cd* s : std::array<const Eigen::Matrix2cd*, 2>{&s0, &s1}) {
            const double p = s->trace().real();
            if (p < 1e-12) continue;
            total += p * qubit_entropy_unnormalized(*s, p);
        }
        return total;
    }

private:
    Eigen::Matrix2cd blocks_[2][2];
    Eigen::Matrix2cd marginal_;
};

struct GridMinimum {
    MeasurementBasis basis;
    double value = infinity;
};

template <class F>
GridMinimum minimize_over_bloch_sphere(const F& f, const OptimizerOptions& opt) {
    if (opt.theta_points < 2 || opt.phi_points < 1) throw std::invalid_argument("measurement grid too small");
    const double dtheta = std::numbers::pi / static_cast<double>(opt.theta_points - 1);
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(opt.phi_points);

    // Ties within 1e-10 keep the lexicographically smallest (theta, phi).
    GridMinimum best;
    for (std::size_t i = 0; i < opt.theta_points; ++i)
        for (std::size_t j = 0; j < opt.phi_points; ++j) {
            const MeasurementBasis b{static_cast<double>(i) * dtheta, static_cast<double>(j) * dphi};
            const double v = f(b);
            if (v < best.value - 1e-10) best = {b, v};
        }

    SimplexOptions sopt;
    sopt.max_iterations = opt.refine_iterations;
    sopt.size_tolerance = opt.refine_tolerance;
    sopt.initial_step = std::min(dtheta, dphi);
    const SimplexResult refined = minimize_simplex(
        [&f](const std::vector<double>& x) { return f(MeasurementBasis{x[0], x[1]}); },
        {best.basis.theta, best.basis.phi}, sopt);
    if (refined.value < best.value - 1e-10) {
        const MeasurementBasis b = MeasurementBasis::canonical(refined.x[0], refined.x[1]);
        best = {b, f(b)};
    }
    return best;
}

inline double qubit_entropy(const Eigen::Matrix2cd& m) { return qubit_entropy_unnormalized(m, m.trace().real()); }

}  // namespace detail

// S(A) + S(B) - S(AB) for the bipartition `side` | rest.
inline double mutual_information(const DensityMatrix& rho, const std::vector<std::size_t>& side) {
    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < rho.n_parties(); ++p)
        if (std::find(side.begin(), side.end(), p) == side.end()) rest.push_back(p);
    const double i = von_neumann_entropy(partial_trace(rho, side)) + von_neumann_entropy(partial_trace(rho, rest)) -
                     von_neumann_entropy(rho);
    return std::max(i, 0.0);
}

inline double mutual_information(const DensityMatrix& rho) {
    if (rho.n_parties() != 2) throw std::invalid_argument("mutual_information expects a two-party state");
    return mutual_information(rho, {0});
}

// Wootters concurrence from any factor A with rho = A A^dagger (4 x r). The
// lambdas are the square roots of the eigenvalues of the Hermitian sandwich
// sqrt(rho) rho~ sqrt(rho), which are the singular values of A^T (Y x Y) A,
// so no square root of a near-zero eigenvalue is ever taken.
inline double concurrence_from_factor(const Matrix& a) {
    if (a.rows() != 4 || a.cols() < 1) throw std::invalid_argument("concurrence factor must be 4 x r");
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix tau = a.transpose() * yy * a;
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(tau).singularValues();  // descending
    double c = sv(0);
    for (Eigen::Index i = 1; i < sv.size(); ++i) c -= sv(i);
    return std::clamp(c, 0.0, 1.0);
}

inline double concurrence(const DensityMatrix& rho) {
    detail::require_two_qubits(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(Eigen::Matrix4cd(rho.matrix()));
    const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return concurrence_from_factor(es.eigenvectors() * root.asDiagonal());
}

// 2 sqrt(det rho_i): the concurrence between qubit i and the rest of a pure
// state.
inline double one_to_rest_concurrence(const DensityMatrix& rho_i) {
    if (rho_i.n_parties() != 1) throw std::invalid_argument("expected a single-qubit density matrix");
    const Matrix& m = rho_i.matrix();
    const double det = m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
    return std::clamp(2.0 * std::sqrt(std::max(det, 0.0)), 0.0, 1.0);
}

inline double eof_from_concurrence(double c) {
    if (c < -1e-12 || c > 1.0 + 1e-12) throw std::invalid_argument("concurrence outside [0,1]");
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

inline double entanglement_of_formation(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

// S(other | {E_i}) = sum_i p_i S(rho_{other|i}) for a projective measurement
// on `measured`.
inline double conditional_entropy_measured(const DensityMatrix& rho, const MeasurementBasis& basis,
                                           const std::string& measured) {
    detail::require_two_qubits(rho);
    return detail::MeasuredConditional(rho.matrix(), rho.index_of(measured))(basis);
}

inline double conditional_entropy_measured(const DensityMatrix& rho, const MeasurementBasis& basis) {
    detail::require_two_qubits(rho);
    return conditional_entropy_measured(rho, basis, rho.parties()[1]);
}

// J_{x:m}: the largest drop in S(rho_x) achievable by measuring m.
inline DirectionalResult classical_correlation_directional(const DensityMatrix& rho, const std::string& measured,
                                                           const OptimizerOptions& opt = {}) {
    detail::require_two_qubits(rho);
    const detail::MeasuredConditional cond(rho.matrix(), rho.index_of(measured));
    const auto best = detail::minimize_over_bloch_sphere(cond, opt);
    double j = detail::qubit_entropy(cond.unmeasured_marginal()) - best.value;
    if (j < -1e-9) throw consistency_error("classical correlation came out negative");
    j = std::max(j, 0.0);
    return {j, best.basis, Method::optimizer};
}

inline DirectionalResult discord_directional(const DensityMatrix& rho, const std::string& measured,
                                             const OptimizerOptions& opt = {}) {
    const DirectionalResult j = classical_correlation_directional(rho, measured, opt);
    double d = mutual_information(rho) - j.value;
    if (d < -1e-6) throw consistency_error("discord below -1e-6: " + std::to_string(d));
    d = std::max(d, 0.0);
    return {d, j.optimal_basis, Method::optimizer};
}

inline double symmetrized_classical(const DensityMatrix& rho, const OptimizerOptions& opt = {}) {
    detail::require_two_qubits(rho);
    return std::max(classical_correlation_directional(rho, rho.parties()[0], opt).value,
                    classical_correlation_directional(rho, rho.parties()[1], opt).value);
}

inline double symmetrized_discord(const DensityMatrix& rho, const OptimizerOptions& opt = {}) {
    detail::require_two_qubits(rho);
    return std::min(discord_directional(rho, rho.parties()[0], opt).value,
                    discord_directional(rho, rho.parties()[1], opt).value);
}

struct BipartiteSummary {
    std::array<std::string, 2> parties;
    double mutual_information = 0.0;
    // Indexed by the measured party.
    std::array<DirectionalResult, 2> classical;
    std::array<DirectionalResult, 2> discord;
    double symmetrized_classical = 0.0;
    double symmetrized_discord = 0.0;
};

inline BipartiteSummary summarize(const DensityMatrix& rho, const OptimizerOptions& opt = {}) {
    detail::require_two_qubits(rho);
    BipartiteSummary s;
    s.parties = {rho.parties()[0], rho.parties()[1]};
    s.mutual_information = mutual_information(rho);
    for (std::size_t m = 0; m < 2; ++m) {
        s.classical[m] = classical_correlation_directional(rho, s.parties[m], opt);
        double d = s.mutual_information - s.classical[m].value;
        if (d < -1e-6) throw consistency_error("discord below -1e-6: " + std::to_string(d));
        s.discord[m] = {std::max(d, 0.0), s.classical[m].optimal_basis, Method::optimizer};
    }
    s.symmetrized_classical = std::max(s.classical[0].value, s.classical[1].value);
    s.symmetrized_discord = std::min(s.discord[0].value, s.discord[1].value);
    return s;
}

namespace detail {

inline void require_three_qubits(const PureState& psi) {
    if (psi.n_qubits() != 3) throw unsupported_input("closed form needs a pure three-qubit state");
}

inline std::size_t label_index(const PureState& psi, const std::string& label) {
    const auto& l = psi.labels();
    auto it = std::find(l.begin(), l.end(), label);
    if (it == l.end()) throw std::invalid_argument("unknown party '" + label + "'");
    return static_cast<std::size_t>(it - l.begin());
}

struct KoashiWinterParties {
    std::size_t i, j, k;
};

inline KoashiWinterParties kw_parties(const PureState& psi, const std::string& i, const std::string& j) {
    require_three_qubits(psi);
    const std::size_t a = label_index(psi, i);
    const std::size_t b = label_index(psi, j);
    if (a == b) throw std::invalid_argument("Koashi-Winter needs two distinct parties");
    return {a, b, 3 - a - b};
}

inline PureState require_pure(const DensityMatrix& rho) {
    auto psi = as_pure(rho);
    if (!psi) throw unsupported_input("closed form valid only for pure states; input is mixed");
    return *psi;
}

}  // namespace detail

// J_{i:j} = S(rho_i) - E(rho_ik) for a pure three-qubit state.
inline double koashi_winter_classical(const PureState& psi, const std::string& i, const std::string& j) {
    const auto p = detail::kw_parties(psi, i, j);
    const DensityMatrix rho = density_of(psi);
    const double v = von_neumann_entropy(reduce(rho, {p.i})) -
                     entanglement_of_formation(reduce(rho, {p.i, p.k}));
    return std::max(v, 0.0);
}

// D_{i:j} = S(rho_j) - S(rho_k) + E(rho_ik) for a pure three-qubit state.
inline double koashi_winter_discord(const PureState& psi, const std::string& i, const std::string& j) {
    const auto p = detail::kw_parties(psi, i, j);
    const DensityMatrix rho = density_of(psi);
    const double v = von_neumann_entropy(reduce(rho, {p.j})) -
                     von_neumann_entropy(reduce(rho, {p.k})) +
                     entanglement_of_formation(reduce(rho, {p.i, p.k}));
    return std::max(v, 0.0);
}

inline double koashi_winter_classical(const DensityMatrix& rho, const std::string& i, const std::string& j) {
    return koashi_winter_classical(detail::require_pure(rho), i, j);
}

inline double koashi_winter_discord(const DensityMatrix& rho, const std::string& i, const std::string& j) {
    return koashi_winter_discord(detail::require_pure(rho), i, j);
}

}  // namespace tricorr
