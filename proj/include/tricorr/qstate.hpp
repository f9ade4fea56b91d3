#pragma once

// Dense linear algebra for labeled few-qubit registers.
//
// Basis convention: party 0 is the most significant bit of a computational
// basis index, so |abc> sits at index 4a + 2b + c.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "tricorr/errors.hpp"

namespace tricorr {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t max_qubits = 6;
inline constexpr double infinity = std::numeric_limits<double>::infinity();

namespace tolerance {
inline constexpr double norm = 1e-10;
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
// Eigenvalues in [-positivity, 0) are treated as roundoff and clipped.
inline constexpr double positivity = 1e-10;
inline constexpr double purity = 1e-8;
}  // namespace tolerance

inline std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
    return out;
}

namespace detail {

inline std::size_t qubits_for_dim(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim) throw invalid_state("dimension is not a power of two");
    return n;
}

inline void check_labels(const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty()) throw std::invalid_argument("empty party label");
        for (std::size_t j = 0; j < i; ++j)
            if (labels[i] == labels[j]) throw std::invalid_argument("duplicate party label '" + labels[i] + "'");
    }
}

// Places the bits of `value` (first position = most significant) at the
// given party positions of an n-party basis index.
inline std::size_t scatter_bits(std::size_t value, std::span<const std::size_t> positions, std::size_t n) {
    std::size_t out = 0;
    const std::size_t m = positions.size();
    for (std::size_t j = 0; j < m; ++j)
        if ((value >> (m - 1 - j)) & 1u) out |= std::size_t{1} << (n - 1 - positions[j]);
    return out;
}

inline std::size_t gather_bits(std::size_t index, std::span<const std::size_t> positions, std::size_t n) {
    std::size_t out = 0;
    for (std::size_t p : positions) out = (out << 1) | ((index >> (n - 1 - p)) & 1u);
    return out;
}

inline double max_antihermitian(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace detail

class PureState {
public:
    explicit PureState(Vector amplitudes, std::vector<std::string> labels = {})
        : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
        const std::size_t n = detail::qubits_for_dim(static_cast<std::size_t>(amplitudes_.size()));
        if (n == 0 || n > max_qubits) throw std::invalid_argument("pure state must have 1..6 qubits");
        if (labels_.empty()) labels_ = default_labels(n);
        if (labels_.size() != n) throw std::invalid_argument("label count does not match qubit count");
        detail::check_labels(labels_);
        const double norm = amplitudes_.norm();
        if (std::abs(norm - 1.0) > tolerance::norm)
            throw invalid_state("pure state is not normalized (norm " + std::to_string(norm) + ")");
    }

    // Rescales to unit norm first; rejects the zero vector.
    static PureState normalized(Vector amplitudes, std::vector<std::string> labels = {}) {
        const double norm = amplitudes.norm();
        if (!(norm > 0.0)) throw invalid_state("pure state has zero norm");
        return PureState(amplitudes / norm, std::move(labels));
    }

    std::size_t n_qubits() const { return labels_.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    Vector amplitudes_;
    std::vector<std::string> labels_;
};

struct unchecked_t {
    explicit unchecked_t() = default;
};
inline constexpr unchecked_t unchecked{};

class DensityMatrix {
public:
    DensityMatrix(std::vector<std::string> parties, Matrix matrix)
        : parties_(std::move(parties)), matrix_(std::move(matrix)) {
        validate();
    }

    // Skips validation; for results derived from an already valid state.
    DensityMatrix(unchecked_t, std::vector<std::string> parties, Matrix matrix)
        : parties_(std::move(parties)), matrix_(detail::hermitian_part(matrix)) {}

    std::size_t n_parties() const { return parties_.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const std::vector<std::string>& parties() const { return parties_; }
    const Matrix& matrix() const { return matrix_; }

    std::size_t index_of(const std::string& label) const {
        auto it = std::find(parties_.begin(), parties_.end(), label);
        if (it == parties_.end()) throw std::invalid_argument("unknown party '" + label + "'");
        return static_cast<std::size_t>(it - parties_.begin());
    }

private:
    void validate();

    std::vector<std::string> parties_;
    Matrix matrix_;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // descending
    bool clipped = false;
};

// Real spectrum of a Hermitian matrix, sorted descending. Values in
// [-1e-10, 0) are set to 0 and flagged.
inline Spectrum eig_hermitian(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
    if (m.size() == 0) throw std::invalid_argument("empty matrix");
    if (detail::max_antihermitian(m) > tolerance::hermitian) throw std::invalid_argument("matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(detail::hermitian_part(m), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw consistency_error("Hermitian eigensolver failed");
    Spectrum out;
    const auto& ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
    for (double& v : out.eigenvalues) {
        if (v < 0.0 && v >= -tolerance::positivity) {
            v = 0.0;
            out.clipped = true;
        }
    }
    return out;
}

inline void DensityMatrix::validate() {
    if (parties_.empty()) throw std::invalid_argument("density matrix needs at least one party");
    detail::check_labels(parties_);
    if (parties_.size() > max_qubits) throw std::invalid_argument("density matrix limited to 6 qubits");
    if (matrix_.rows() != matrix_.cols()) throw invalid_state("density matrix is not square");
    if (static_cast<std::size_t>(matrix_.rows()) != (std::size_t{1} << parties_.size()))
        throw invalid_state("density matrix dimension does not match party count");
    if (detail::max_antihermitian(matrix_) > tolerance::hermitian)
        throw invalid_state("density matrix is not Hermitian");
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > tolerance::trace)
        throw invalid_state("density matrix trace is " + std::to_string(tr) + ", not 1");
    matrix_ = detail::hermitian_part(matrix_);
    const Spectrum s = eig_hermitian(matrix_);
    if (s.eigenvalues.back() < -tolerance::positivity)
        throw invalid_state("density matrix is not positive semidefinite (eigenvalue " +
                            std::to_string(s.eigenvalues.back()) + ")");
}

inline DensityMatrix density_of(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return DensityMatrix(unchecked, psi.labels(), v * v.adjoint());
}

inline std::vector<std::size_t> party_indices(const DensityMatrix& rho, std::span<const std::string> labels) {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(rho.index_of(l));
    return out;
}

// Reduced state on `keep` (party indices). The result lists the kept parties
// in their original order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    const std::size_t n = rho.n_parties();
    std::sort(keep.begin(), keep.end());
    if (keep.empty()) throw std::invalid_argument("partial trace needs a nonempty set of kept parties");
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw std::invalid_argument("kept parties repeat");
    if (keep.back() >= n) throw std::invalid_argument("kept party out of range");
    if (keep.size() == n) throw std::invalid_argument("partial trace must drop at least one party");

    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < n; ++p)
        if (!std::binary_search(keep.begin(), keep.end(), p)) traced.push_back(p);

    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    std::vector<std::size_t> kept_idx(dk), traced_idx(dt);
    for (std::size_t i = 0; i < dk; ++i) kept_idx[i] = detail::scatter_bits(i, keep, n);
    for (std::size_t t = 0; t < dt; ++t) traced_idx[t] = detail::scatter_bits(t, traced, n);

    const Matrix& m = rho.matrix();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t)
                acc += m(static_cast<Eigen::Index>(kept_idx[i] | traced_idx[t]),
                         static_cast<Eigen::Index>(kept_idx[j] | traced_idx[t]));
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }

    std::vector<std::string> labels;
    for (std::size_t p : keep) labels.push_back(rho.parties()[p]);
    return DensityMatrix(unchecked, std::move(labels), std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    return partial_trace(rho, party_indices(rho, keep));
}

inline DensityMatrix reduce(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::vector<std::size_t>(keep));
}

// rho_A (x) rho_B, parties concatenated.
inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<std::string> labels = a.parties();
    labels.insert(labels.end(), b.parties().begin(), b.parties().end());
    detail::check_labels(labels);
    Matrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
    return DensityMatrix(unchecked, std::move(labels), std::move(m));
}

inline PureState tensor(const PureState& a, const PureState& b) {
    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    // Clashing labels (typically two default-labelled factors) are replaced.
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) labels = default_labels(labels.size());
    Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
    return PureState(std::move(v), std::move(labels));
}

// Tensor product of the marginals on each group, laid out in rho's party
// order. Groups must partition the parties.
inline DensityMatrix product_of_marginals(const DensityMatrix& rho,
                                          const std::vector<std::vector<std::size_t>>& groups) {
    const std::size_t n = rho.n_parties();
    std::vector<int> seen(n, 0);
    for (const auto& g : groups)
        for (std::size_t p : g) {
            if (p >= n) throw std::invalid_argument("group party out of range");
            ++seen[p];
        }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
        throw std::invalid_argument("groups must partition the parties");

    std::vector<std::vector<std::size_t>> sorted;
    std::vector<Matrix> marginals;
    for (auto g : groups) {
        std::sort(g.begin(), g.end());
        marginals.push_back(g.size() == n ? rho.matrix() : partial_trace(rho, g).matrix());
        sorted.push_back(std::move(g));
    }
    const std::size_t d = rho.dim();
    Matrix out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
            cplx v = 1.0;
            for (std::size_t k = 0; k < sorted.size(); ++k)
                v *= marginals[k](static_cast<Eigen::Index>(detail::gather_bits(x, sorted[k], n)),
                                  static_cast<Eigen::Index>(detail::gather_bits(y, sorted[k], n)));
            out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v;
        }
    return DensityMatrix(unchecked, rho.parties(), std::move(out));
}

// Shannon entropy in bits of a spectrum; 0 log 0 = 0. Rejects eigenvalues
// below -1e-10.
inline double entropy_bits(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double v : eigenvalues) {
        if (v < -tolerance::positivity) throw invalid_state("negative eigenvalue in entropy");
        if (v > 0.0) s -= v * std::log2(v);
    }
    return std::max(s, 0.0);
}

inline double von_neumann_entropy(const Matrix& m) {
    return entropy_bits(eig_hermitian(m).eigenvalues);
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

inline double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) throw std::invalid_argument("binary entropy argument outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    double s = 0.0;
    if (x > 0.0) s -= x * std::log2(x);
    if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
    return s;
}

// S(rho || sigma) in bits. Returns `infinity` when rho has weight above 1e-9
// outside the support of sigma (eigenvalues below 1e-12).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("relative entropy: dimension mismatch");
    if (rho.parties() != sigma.parties()) throw std::invalid_argument("relative entropy: party sets differ");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sigma.matrix());
    if (solver.info() != Eigen::Success) throw consistency_error("Hermitian eigensolver failed");
    const Matrix& vecs = solver.eigenvectors();
    const auto& vals = solver.eigenvalues();
    double cross = 0.0;
    for (Eigen::Index j = 0; j < vals.size(); ++j) {
        const double weight = (vecs.col(j).adjoint() * rho.matrix() * vecs.col(j))(0, 0).real();
        if (vals(j) < 1e-12) {
            if (weight > 1e-9) return infinity;
            continue;
        }
        cross += weight * std::log2(vals(j));
    }
    return std::max(-von_neumann_entropy(rho) - cross, 0.0);
}

// The dominant eigenvector when rho is pure to within 1e-8, phase-fixed so
// the first non-negligible amplitude is real and positive.
inline std::optional<PureState> as_pure(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
    if (solver.info() != Eigen::Success) throw consistency_error("Hermitian eigensolver failed");
    const Eigen::Index top = solver.eigenvalues().size() - 1;
    if (solver.eigenvalues()(top) <= 1.0 - tolerance::purity) return std::nullopt;
    Vector v = solver.eigenvectors().col(top);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-8) {
            v *= std::conj(v(i)) / std::abs(v(i));
            break;
        }
    return PureState::normalized(std::move(v), rho.parties());
}

inline bool is_pure(const DensityMatrix& rho) { return as_pure(rho).has_value(); }

// Amplitudes are i.i.d. standard complex Gaussians, then normalized.
template <class Rng>
PureState haar_random_pure(std::size_t n_qubits, Rng& rng) {
    if (n_qubits < 1 || n_qubits > max_qubits) throw std::invalid_argument("haar_random_pure: n_qubits must be in 1..6");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(static_cast<Eigen::Index>(std::size_t{1} << n_qubits));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = cplx(re, im);
    }
    return PureState::normalized(std::move(v));
}

inline PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_random_pure(n_qubits, rng);
}

// Haar unitary from the QR decomposition of a Ginibre matrix.
template <class Rng>
Matrix random_unitary(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = cplx(re, im);
        }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const cplx diag = r(j, j);
        if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
    }
    return q;
}

// Convex mixture of `components` Haar-random pure states with flat
// Dirichlet weights.
inline DensityMatrix random_mixed(std::size_t n_qubits, std::size_t components, std::uint64_t seed) {
    if (components == 0) throw std::invalid_argument("random_mixed needs at least one component");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(components);
    for (double& x : w) x = expo(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < components; ++k) {
        const PureState psi = haar_random_pure(n_qubits, rng);
        m += (w[k] / total) * psi.amplitudes() * psi.amplitudes().adjoint();
    }
    m /= m.trace().real();
    return DensityMatrix(default_labels(n_qubits), std::move(m));
}

inline PureState apply_local_unitary(const PureState& psi, std::size_t party, const Eigen::Matrix2cd& u) {
    const std::size_t n = psi.n_qubits();
    if (party >= n) throw std::invalid_argument("party out of range");
    const std::size_t bit = std::size_t{1} << (n - 1 - party);
    Vector v = psi.amplitudes();
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i & bit) continue;
        const auto i0 = static_cast<Eigen::Index>(i);
        const auto i1 = static_cast<Eigen::Index>(i | bit);
        const cplx a0 = v(i0);
        const cplx a1 = v(i1);
        v(i0) = u(0, 0) * a0 + u(0, 1) * a1;
        v(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return PureState::normalized(std::move(v), psi.labels());
}

}  // namespace tricorr
