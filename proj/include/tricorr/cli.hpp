#pragma once

// tricorr command-line front end. `run` takes the arguments without the
// program name and writes everything to the given streams, so tests can drive
// it in-process.
//
// Exit codes: 0 ok, 1 validation/parse, 2 I/O, 3 internal invariant,
// 4 verification violations.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tricorr/bipartite.hpp"
#include "tricorr/errors.hpp"
#include "tricorr/io.hpp"
#include "tricorr/states.hpp"
#include "tricorr/tripartite.hpp"
#include "tricorr/verify.hpp"

namespace tricorr::cli {

enum exit_code : int { ok = 0, validation = 1, io = 2, internal = 3, violations = 4 };

struct GlobalFlags {
    std::string format = "table";
    std::uint64_t seed = 1;
    std::string grid;  // GxH
    int refine_iters = OptimizerOptions{}.refine_iterations;
    double tol = 1e-9;
    bool timing = false;
};

namespace detail {

inline OptimizerOptions optimizer_options(const GlobalFlags& g) {
    OptimizerOptions opt;
    opt.refine_iterations = g.refine_iters;
    if (!g.grid.empty()) {
        const auto x = g.grid.find('x');
        if (x == std::string::npos) throw std::invalid_argument("--grid expects GxH, e.g. 60x120");
        const double gt = tricorr::detail::parse_double(std::string_view(g.grid).substr(0, x));
        const double gp = tricorr::detail::parse_double(std::string_view(g.grid).substr(x + 1));
        if (gt < 2 || gp < 1 || gt != std::floor(gt) || gp != std::floor(gp) || gt > 10000 || gp > 10000)
            throw std::invalid_argument("--grid: G must be an integer >= 2 and H an integer >= 1");
        opt.theta_points = static_cast<std::size_t>(gt);
        opt.phi_points = static_cast<std::size_t>(gp);
    }
    return opt;
}

inline bool looks_like_path(const std::string& s) {
    return s.find('/') != std::string::npos || (s.size() > 5 && s.ends_with(".json"));
}

struct LoadedState {
    std::optional<PureState> pure;
    std::optional<DensityMatrix> mixed;
    DensityMatrix density() const { return pure ? density_of(*pure) : *mixed; }
};

// A file holding either a state vector or a density matrix, or a named state.
inline LoadedState load_state(const std::string& arg) {
    LoadedState out;
    if (std::filesystem::is_regular_file(arg)) {
        const std::string text = read_file(arg);
        const json j = tricorr::detail::parse_json(text);
        if (j.is_object() && j.contains("matrix"))
            out.mixed = parse_matrix_json(text);
        else
            out.pure = parse_state_json(text);
        return out;
    }
    if (looks_like_path(arg)) throw io_error("cannot open '" + arg + "'");
    out.pure = named_state(arg);
    return out;
}

inline std::string table(const CorrelationReport& r) {
    std::ostringstream s;
    const auto row = [&](const std::string& k, const std::string& v) { s << k << std::string(k.size() < 6 ? 6 - k.size() : 1, ' ') << v << "\n"; };
    for (const auto& [name, v] : std::vector<std::pair<std::string, double>>{
             {"T", r.T}, {"J", r.J}, {"D", r.D}, {"T2", r.T2}, {"T3", r.T3}, {"J2", r.J2}, {"J3", r.J3}, {"D2", r.D2}, {"D3", r.D3}})
        row(name, fixed6(v));
    row("tangle", r.tangle ? fixed6(*r.tangle) : "n/a");
    s << "order  " << r.ordering.labels[0] << r.ordering.labels[1] << r.ordering.labels[2] << "\n";
    s << "method " << to_string(r.method) << "\n";
    s << "pair   I          J          D\n";
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = party_pairs[p];
        s << r.parties[i] << r.parties[j] << std::string(5, ' ') << fixed6(r.pairwise_mutual[p]) << "   "
          << fixed6(r.pairwise_classical[p]) << "   " << fixed6(r.pairwise_discord[p]) << "\n";
    }
    return s.str();
}

inline std::string report_csv(const CorrelationReport& r) {
    std::string out = "T,J,D,T2,T3,J2,J3,D2,D3,tangle\n";
    bool first = true;
    for (double v : {r.T, r.J, r.D, r.T2, r.T3, r.J2, r.J3, r.D2, r.D3}) {
        out += (first ? "" : ",") + fixed6(v);
        first = false;
    }
    out += "," + (r.tangle ? fixed6(*r.tangle) : std::string{}) + "\n";
    return out;
}

inline std::string sweep_table(const SweepResult& s) {
    std::ostringstream o;
    o << "p         family     T          J          D          D3\n";
    for (const auto& row : s.rows) {
        std::string fam = to_string(row.family);
        fam.resize(10, ' ');
        o << fixed6(row.p) << "  " << fam << " " << fixed6(row.report.T) << "   " << fixed6(row.report.J) << "   "
          << fixed6(row.report.D) << "   " << fixed6(row.report.D3) << "\n";
    }
    return o.str();
}

inline std::string crossover_line(const SweepResult& s) {
    return s.crossover ? "crossover p* = " + fixed6(*s.crossover) + "\n" : "crossover p* = none on this grid\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation measures for few-qubit pure and mixed states", "tricorr"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--seed", g.seed, "Master seed for random sampling");
    app.add_option("--grid", g.grid, "Bloch-sphere optimizer grid GxH (default 60x120)");
    app.add_option("--refine-iters", g.refine_iters, "Simplex refinement iterations")->check(CLI::Range(0, 100000));
    app.add_option("--tol", g.tol, "Tolerance for report invariants")->check(CLI::PositiveNumber);
    app.add_flag("--timing", g.timing, "Print elapsed time to stderr");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Full correlation report for a three-qubit state");
    std::string state_arg;
    bool pure_only = false;
    std::string dump_dir;
    analyze_cmd->add_option("state", state_arg, "State file (JSON) or named state: ghz, w, ghz_tilde:p=P, w_tilde:p=P, acin:l0,l1,l2,l3,l4,theta")
        ->required();
    analyze_cmd->add_flag("--pure-only", pure_only, "Closed forms only; reject mixed input");
    analyze_cmd->add_option("--dump-reductions", dump_dir, "Write the two-qubit reductions as matrix JSON into DIR");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the GHZ-like and W-like families over p");
    std::string family = "both";
    double p_min = 0.0, p_max = 1.0, step = 0.01;
    std::string out_csv;
    sweep_cmd->add_option("family", family, "ghz_tilde | w_tilde | both")->required()->check(CLI::IsMember({"ghz_tilde", "w_tilde", "both"}));
    sweep_cmd->add_option("p_min", p_min)->required()->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("p_max", p_max)->required()->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("step", step)->required()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", out_csv, "Write the CSV here");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Monte-Carlo check of the proved relations on Haar-random states");
    std::size_t samples = 1000;
    std::size_t qubits = 3;
    bool oracle = false, explore = false;
    verify_cmd->add_option("--samples", samples, "Number of random states")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
    verify_cmd->add_option("--qubits", qubits, "Qubits per sample (3..6)")->check(CLI::Range(std::size_t{3}, std::size_t{6}));
    verify_cmd->add_flag("--oracle", oracle, "Also compare the optimizer against the closed forms");
    verify_cmd->add_flag("--explore", explore, "Log the conjectured n-party ladder (never counts as a violation)");

    // discord2q
    auto* discord_cmd = app.add_subcommand("discord2q", "Directional and symmetrized discord of a two-qubit density matrix");
    std::string matrix_file, measured;
    discord_cmd->add_option("matrix", matrix_file, "Matrix JSON file")->required();
    discord_cmd->add_option("--measured", measured, "Label of the measured party (default: the second)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::validation;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        const OptimizerOptions opt = detail::optimizer_options(g);
        std::string text;

        if (*analyze_cmd) {
            const auto loaded = detail::load_state(state_arg);
            AnalyzeOptions aopt;
            aopt.mixed.single = opt;
            aopt.pure_only = pure_only;
            const DensityMatrix rho = loaded.density();
            const CorrelationReport r = analyze(rho, aopt);
            if (r.pure) check_report(r, g.tol);
            if (!dump_dir.empty()) {
                std::filesystem::create_directories(dump_dir);
                for (const auto& [i, j] : party_pairs) {
                    const DensityMatrix red = reduce(rho, {i, j});
                    write_file_atomic(std::filesystem::path(dump_dir) / ("rho_" + rho.parties()[i] + rho.parties()[j] + ".json"),
                                      to_json(red).dump(2) + "\n");
                }
            }
            if (g.format == "json")
                text = to_json(r).dump(2) + "\n";
            else if (g.format == "csv")
                text = detail::report_csv(r);
            else
                text = detail::table(r);
        } else if (*sweep_cmd) {
            if (p_min > p_max) throw std::invalid_argument("p_min must not exceed p_max");
            std::vector<Family> fams;
            if (family != "w_tilde") fams.push_back(Family::ghz_tilde);
            if (family != "ghz_tilde") fams.push_back(Family::w_tilde);
            const SweepResult s = sweep_families(p_grid(p_min, p_max, step), fams);
            const bool both = fams.size() == 2;
            if (!out_csv.empty()) {
                write_file_atomic(out_csv, sweep_csv(s));
                if (both) text += detail::crossover_line(s);
                text += "wrote " + std::to_string(s.rows.size()) + " rows to " + out_csv + "\n";
            } else if (g.format == "csv") {
                text = sweep_csv(s);
                if (both) err << detail::crossover_line(s);
            } else if (g.format == "json") {
                json rows = json::array();
                for (const auto& row : s.rows)
                    rows.push_back({{"p", row.p}, {"family", to_string(row.family)}, {"report", to_json(row.report)}});
                json j = {{"rows", rows}};
                if (both) j["crossover"] = s.crossover ? json(*s.crossover) : json(nullptr);
                text = j.dump(2) + "\n";
            } else {
                text = detail::sweep_table(s);
                if (both) text += detail::crossover_line(s);
            }
        } else if (*verify_cmd) {
            if (oracle && qubits != 3) throw std::invalid_argument("--oracle requires --qubits 3");
            SuiteOptions sopt;
            sopt.explore = explore;
            sopt.optimizer = opt;
            ViolationReport rep = run_suite(samples, g.seed, qubits, sopt);
            if (oracle) {
                rep = merge(std::move(rep), oracle_crosscheck(samples, g.seed, opt));
            }
            // Always JSON: the report is nested.
            out << to_json(rep).dump(2) << "\n";
            if (g.timing) err << "elapsed " << fixed6(rep.elapsed.count()) << " s\n";
            return rep.passed() ? exit_code::ok : exit_code::violations;
        } else if (*discord_cmd) {
            const DensityMatrix rho = parse_matrix_json(read_file(matrix_file));
            if (rho.n_parties() != 2) throw invalid_state("discord2q expects a two-qubit matrix");
            const std::string m = measured.empty() ? rho.parties()[1] : measured;
            const std::size_t mi = rho.index_of(m);
            const BipartiteSummary s = summarize(rho, opt);
            if (g.format == "table") {
                const std::string dir = rho.parties()[1 - mi] + ":" + rho.parties()[mi];
                std::ostringstream o;
                o << "I                 " << fixed6(s.mutual_information) << "\n"
                  << "J_" << dir << "             " << fixed6(s.classical[mi].value) << "\n"
                  << "discord_" << dir << "       " << fixed6(s.discord[mi].value) << "\n"
                  << "basis theta,phi   " << fixed6(s.discord[mi].optimal_basis.theta) << ","
                  << fixed6(s.discord[mi].optimal_basis.phi) << "\n"
                  << "J (symmetrized)   " << fixed6(s.symmetrized_classical) << "\n"
                  << "D (symmetrized)   " << fixed6(s.symmetrized_discord) << "\n";
                text = o.str();
            } else {
                json j = to_json(s);
                j["measured"] = m;
                j["classical"] = to_json(s.classical[mi]);
                j["discord"] = to_json(s.discord[mi]);
                text = g.format == "json" ? j.dump(2) + "\n"
                                          : "measured,I,J,discord,theta,phi\n" + m + "," + fixed6(s.mutual_information) + "," +
                                                fixed6(s.classical[mi].value) + "," + fixed6(s.discord[mi].value) + "," +
                                                fixed6(s.discord[mi].optimal_basis.theta) + "," +
                                                fixed6(s.discord[mi].optimal_basis.phi) + "\n";
            }
        }
        out << text;
        if (g.timing)
            err << "elapsed " << fixed6(std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()) << " s\n";
        return exit_code::ok;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::io;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::io;
    } catch (const consistency_error& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    } catch (const std::invalid_argument& e) {  // invalid_state, unsupported_input, bad flags
        err << "error: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    }
}

}  // namespace tricorr::cli
