#pragma once

// File formats.
//
//   state:  {"n": 3, "labels": ["a","b","c"], "amplitudes": [[re,im], ...]}
//   matrix: {"parties": ["a","b"], "matrix": [[[re,im], ...], ...]}
//   sweep:  CSV with header p,family,T,J,D,T2,T3,J2,J3,D2,D3,tangle

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tricorr/bipartite.hpp"
#include "tricorr/errors.hpp"
#include "tricorr/qstate.hpp"
#include "tricorr/tripartite.hpp"
#include "tricorr/verify.hpp"

namespace tricorr {

using json = nlohmann::ordered_json;

inline constexpr const char* sweep_csv_header = "p,family,T,J,D,T2,T3,J2,J3,D2,D3,tangle";

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("error reading '" + path.string() + "'");
    return ss.str();
}

// Writes through a temporary file in the same directory, then renames.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write '" + path.string() + "'");
        out << content;
        if (!out.flush()) throw io_error("error writing '" + path.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw io_error("cannot write '" + path.string() + "'");
    }
}

namespace detail {

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what(), e.byte);
    }
}

inline cplx complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw invalid_state("complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_to(cplx z) { return json::array({z.real(), z.imag()}); }

inline std::vector<std::string> labels_from(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) throw invalid_state(std::string("missing '") + key + "' array");
    std::vector<std::string> out;
    for (const auto& l : j[key]) {
        if (!l.is_string()) throw invalid_state(std::string("'") + key + "' entries must be strings");
        out.push_back(l.get<std::string>());
    }
    return out;
}

}  // namespace detail

// Rejects wrong-length arrays and norm deviations above 1e-8; accepted states
// are renormalized.
inline PureState parse_state_json(const std::string& text) {
    const json j = detail::parse_json(text);
    if (!j.is_object()) throw invalid_state("state file must hold a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw invalid_state("missing integer 'n'");
    const auto n = j["n"].get<long long>();
    if (n < 1 || n > static_cast<long long>(max_qubits)) throw invalid_state("'n' must be in 1..6");
    std::vector<std::string> labels =
        j.contains("labels") ? detail::labels_from(j, "labels") : default_labels(static_cast<std::size_t>(n));
    if (labels.size() != static_cast<std::size_t>(n)) throw invalid_state("'labels' length does not match 'n'");
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) throw invalid_state("missing 'amplitudes' array");
    const auto& amps = j["amplitudes"];
    const std::size_t dim = std::size_t{1} << n;
    if (amps.size() != dim)
        throw invalid_state("'amplitudes' has " + std::to_string(amps.size()) + " entries, expected " + std::to_string(dim));
    Vector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = detail::complex_from(amps[i]);
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-8)
        throw invalid_state("state is not normalized (norm " + std::to_string(norm) + ", tolerance 1e-8)");
    return PureState::normalized(std::move(v), std::move(labels));
}

inline json to_json(const PureState& psi) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) amps.push_back(detail::complex_to(psi.amplitudes()(i)));
    return {{"n", psi.n_qubits()}, {"labels", psi.labels()}, {"amplitudes", amps}};
}

inline DensityMatrix parse_matrix_json(const std::string& text) {
    const json j = detail::parse_json(text);
    if (!j.is_object()) throw invalid_state("matrix file must hold a JSON object");
    std::vector<std::string> parties = detail::labels_from(j, "parties");
    if (parties.empty() || parties.size() > max_qubits) throw invalid_state("'parties' must list 1..6 parties");
    if (!j.contains("matrix") || !j["matrix"].is_array()) throw invalid_state("missing 'matrix' array");
    const auto& rows = j["matrix"];
    const std::size_t dim = std::size_t{1} << parties.size();
    if (rows.size() != dim) throw invalid_state("'matrix' must have " + std::to_string(dim) + " rows");
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        if (!rows[r].is_array() || rows[r].size() != dim)
            throw invalid_state("'matrix' row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = detail::complex_from(rows[r][c]);
    }
    return DensityMatrix(std::move(parties), std::move(m));
}

inline json to_json(const DensityMatrix& rho) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) row.push_back(detail::complex_to(rho.matrix()(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"parties", rho.parties()}, {"matrix", rows}};
}

inline json to_json(const MeasurementBasis& b) { return {{"theta", b.theta}, {"phi", b.phi}}; }

inline json to_json(const DirectionalResult& r) {
    return {{"value", r.value}, {"optimal_basis", to_json(r.optimal_basis)}, {"method", to_string(r.method)}};
}

inline json to_json(const BipartiteSummary& s) {
    json out = {{"parties", s.parties}, {"mutual_information", s.mutual_information}};
    json dirs = json::array();
    for (std::size_t m = 0; m < 2; ++m) {
        const std::size_t other = 1 - m;
        dirs.push_back({{"direction", s.parties[other] + ":" + s.parties[m]},
                        {"measured", s.parties[m]},
                        {"classical", to_json(s.classical[m])},
                        {"discord", to_json(s.discord[m])}});
    }
    out["directional"] = std::move(dirs);
    out["symmetrized_classical"] = s.symmetrized_classical;
    out["symmetrized_discord"] = s.symmetrized_discord;
    return out;
}

inline json to_json(const CorrelationReport& r) {
    json pairs = json::array();
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = party_pairs[p];
        pairs.push_back({{"pair", r.parties[i] + r.parties[j]},
                         {"mutual_information", r.pairwise_mutual[p]},
                         {"classical", r.pairwise_classical[p]},
                         {"discord", r.pairwise_discord[p]}});
    }
    json cuts = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        std::string rest;
        for (std::size_t k = 0; k < 3; ++k)
            if (k != i) rest += r.parties[k];
        cuts.push_back({{"cut", rest + "|" + r.parties[i]}, {"mutual_information", r.cut_mutual[i]}});
    }
    json entropies = json::object();
    for (std::size_t i = 0; i < 3; ++i) entropies[r.parties[i]] = r.entropies[i];

    return {{"T", r.T},
            {"J", r.J},
            {"D", r.D},
            {"T2", r.T2},
            {"T3", r.T3},
            {"J2", r.J2},
            {"J3", r.J3},
            {"D2", r.D2},
            {"D3", r.D3},
            {"tangle", r.tangle ? json(*r.tangle) : json(nullptr)},
            {"entropies", entropies},
            {"pairwise", pairs},
            {"cut_mutual", cuts},
            {"ordering", {{"labels", r.ordering.labels}, {"sorted_mutual_infos", r.ordering.sorted_mutual_infos}}},
            {"pure", r.pure},
            {"method", to_string(r.method)}};
}

// Elapsed time is left out unless asked for, so repeated runs serialize
// byte-identically.
inline json to_json(const ViolationReport& r, bool with_timing = false) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json jc = {{"name", c.name},
                   {"tolerance", c.tolerance},
                   {"count_checked", c.count_checked},
                   {"count_violated", c.count_violated}};
        if (c.has_worst_margin()) {
            jc["worst_margin"] = c.worst_excess;
            jc["worst_seed"] = c.worst_seed;
        } else {
            jc["worst_margin"] = nullptr;
            jc["worst_seed"] = nullptr;
        }
        checks.push_back(std::move(jc));
    }
    json out = {{"seed", r.seed},
                {"n_samples", r.n_samples},
                {"n_qubits", r.n_qubits},
                {"passed", r.passed()},
                {"checks", checks}};
    if (r.exploratory) {
        out["exploratory"] = {{"samples", r.exploratory->samples},
                              {"ladder_consistent", r.exploratory->ladder_consistent},
                              {"notes", r.exploratory->lines}};
    }
    if (with_timing) out["elapsed_seconds"] = r.elapsed.count();
    return out;
}

inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string sweep_csv(const SweepResult& s) {
    std::string out = std::string(sweep_csv_header) + "\n";
    for (const auto& row : s.rows) {
        const auto& r = row.report;
        out += fixed6(row.p) + "," + to_string(row.family);
        for (double v : {r.T, r.J, r.D, r.T2, r.T3, r.J2, r.J3, r.D2, r.D3, r.tangle.value_or(0.0)}) out += "," + fixed6(v);
        out += "\n";
    }
    return out;
}

}  // namespace tricorr
