#pragma once

// Named states: GHZ, W, the interpolating families, and the Acin canonical
// form. `named_state` parses the short names used by the CLI.

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "tricorr/qstate.hpp"

namespace tricorr {

inline PureState basis_state(std::string_view bits) {
    if (bits.empty() || bits.size() > max_qubits) throw std::invalid_argument("basis_state: 1..6 bits expected");
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("basis_state: bits must be 0 or 1");
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << bits.size()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

// (|0...0> + |1...1>) / sqrt(2)
inline PureState ghz_state(std::size_t n = 3) {
    if (n < 2 || n > max_qubits) throw std::invalid_argument("ghz_state: n must be in 2..6");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    v(0) = std::numbers::sqrt2 / 2.0;
    v(v.size() - 1) = std::numbers::sqrt2 / 2.0;
    return PureState::normalized(std::move(v));
}

// (|001> + |010> + |100>) / sqrt(3)
inline PureState w_state() {
    Vector v = Vector::Zero(8);
    v(1) = v(2) = v(4) = 1.0;
    return PureState::normalized(std::move(v));
}

// Bell pair (|00> + |11>)/sqrt(2) on two qubits.
inline PureState bell_state() { return ghz_state(2); }

namespace detail {
inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("family parameter p must lie in [0,1]");
}
}  // namespace detail

// sqrt(p) |GHZ> + sqrt(1-p) |100>
inline PureState family_ghz_tilde(double p) {
    detail::check_probability(p);
    Vector v = std::sqrt(p) * ghz_state().amplitudes();
    v(4) += std::sqrt(1.0 - p);
    return PureState::normalized(std::move(v));
}

// sqrt(p) |W> + sqrt(1-p) |000>
inline PureState family_w_tilde(double p) {
    detail::check_probability(p);
    Vector v = std::sqrt(p) * w_state().amplitudes();
    v(0) += std::sqrt(1.0 - p);
    return PureState::normalized(std::move(v));
}

struct AcinForm {
    double lambda0 = 0.0, lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0, lambda4 = 0.0;
    double theta = 0.0;
};

// l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>
inline PureState acin_state(const AcinForm& f) {
    const double l[5] = {f.lambda0, f.lambda1, f.lambda2, f.lambda3, f.lambda4};
    double norm2 = 0.0;
    for (double x : l) {
        if (!(x >= 0.0)) throw std::invalid_argument("Acin coefficients must be nonnegative");
        norm2 += x * x;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) throw std::invalid_argument("Acin coefficients must satisfy sum lambda_i^2 = 1");
    Vector v = Vector::Zero(8);
    v(0) = l[0];
    v(4) = std::polar(l[1], f.theta);
    v(5) = l[2];
    v(6) = l[3];
    v(7) = l[4];
    return PureState::normalized(std::move(v));
}

namespace detail {

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_keyed(std::string_view arg, std::string_view key) {
    if (arg.substr(0, key.size() + 1) != std::string(key) + "=")
        throw std::invalid_argument("expected '" + std::string(key) + "=<value>'");
    return parse_double(arg.substr(key.size() + 1));
}

}  // namespace detail

// Accepts: ghz, ghz:n=<2..6>, w, ghz_tilde:p=<p>, w_tilde:p=<p>,
// acin:<l0>,<l1>,<l2>,<l3>,<l4>,<theta>.
inline PureState named_state(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    if (name == "ghz") {
        if (args.empty()) return ghz_state();
        const double n = detail::parse_keyed(args, "n");
        if (n != std::floor(n)) throw std::invalid_argument("ghz: n must be an integer");
        return ghz_state(static_cast<std::size_t>(n));
    }
    if (name == "w" && args.empty()) return w_state();
    if (name == "ghz_tilde") return family_ghz_tilde(detail::parse_keyed(args, "p"));
    if (name == "w_tilde") return family_w_tilde(detail::parse_keyed(args, "p"));
    if (name == "acin") {
        const auto parts = detail::split(args, ',');
        if (parts.size() != 6) throw std::invalid_argument("acin expects l0,l1,l2,l3,l4,theta");
        AcinForm f;
        f.lambda0 = detail::parse_double(parts[0]);
        f.lambda1 = detail::parse_double(parts[1]);
        f.lambda2 = detail::parse_double(parts[2]);
        f.lambda3 = detail::parse_double(parts[3]);
        f.lambda4 = detail::parse_double(parts[4]);
        f.theta = detail::parse_double(parts[5]);
        return acin_state(f);
    }
    throw std::invalid_argument("unknown named state '" + std::string(spec) + "'");
}

}  // namespace tricorr
