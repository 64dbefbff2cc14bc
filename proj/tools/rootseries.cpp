// Command-line front end: solve / converge / trace / compare.
//
// Exit codes: 0 success (possibly with warnings), 2 parse or validation
// failure, 3 series overflow, 4 compare distance at or above tolerance.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rootseries/rootseries.hpp"

namespace rs = rootseries;

namespace {

struct RunConfig {
    std::string input_text;
    std::string file;
    double t = 1.0;
    int terms = 200;
    int phases = 256;
    double window = 0.25;
    std::string format = "json";
    std::string out;
    double tolerance = 1e-6;  // compare only
};

std::string load_input(const RunConfig& cfg) {
    if (!cfg.file.empty() && !cfg.input_text.empty())
        throw rs::ValidationError("give the polynomial either inline or via --file, not both");
    if (!cfg.file.empty()) {
        std::ifstream in(cfg.file);
        if (!in) throw rs::ValidationError("cannot read file: " + cfg.file);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (cfg.input_text.empty())
        throw rs::ValidationError("no polynomial given (inline text or --file)");
    return cfg.input_text;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw rs::ValidationError("cannot write file: " + out_path);
    out << payload;
}

std::vector<std::string> common_warnings(const RunConfig& cfg, const rs::ConvergenceReport& rep) {
    std::vector<std::string> w;
    if (std::isfinite(rep.rc_estimate) && std::abs(cfg.t) >= rep.rc_estimate)
        w.push_back("t=" + rs::format_number(cfg.t) +
                    " is at or beyond the empirical radius-of-convergence estimate " +
                    rs::format_number(rep.rc_estimate) + "; the series may diverge there");
    if (rep.low_confidence)
        w.push_back("rc_estimate is low-confidence: fewer than 50 series terms");
    return w;
}

int cmd_solve(const RunConfig& cfg) {
    rs::PolynomialSpec spec = rs::parse_polynomial(load_input(cfg));
    rs::SeriesState st = rs::compute_beta(rs::compute_w_sequence(spec, cfg.terms));
    rs::ConvergenceReport rep = rs::analyze_convergence(st, cfg.window);
    auto roots = rs::roots_at(st, cfg.t, cfg.terms, rep.rc_estimate);
    auto warnings = common_warnings(cfg, rep);
    if (cfg.format == "csv") {
        emit(rs::csv_roots(roots), cfg.out);
    } else {
        emit(rs::report_envelope(spec, st, roots, rep, warnings).dump(2) + "\n", cfg.out);
    }
    return 0;
}

int cmd_converge(const RunConfig& cfg) {
    rs::PolynomialSpec spec = rs::parse_polynomial(load_input(cfg));
    rs::SeriesState st = rs::compute_beta(rs::compute_w_sequence(spec, cfg.terms));
    rs::ConvergenceReport rep = rs::analyze_convergence(st, cfg.window);
    auto warnings = common_warnings(cfg, rep);
    if (cfg.format == "csv") {
        emit(rs::csv_q_profile(rep), cfg.out);
        return 0;
    }
    rs::json doc = rs::report_envelope(spec, st, {}, rep, warnings);
    rs::MajorantSequence ms = rs::s_sequence(spec);
    rs::json s_arr = rs::json::array();
    for (int q = 2; q <= ms.q_max; ++q) s_arr.push_back({{"q", q}, {"S", ms.S[q]}});
    doc["convergence"]["s_majorants"] = s_arr;
    emit(doc.dump(2) + "\n", cfg.out);
    return 0;
}

int cmd_trace(const RunConfig& cfg) {
    rs::PolynomialSpec spec = rs::parse_polynomial(load_input(cfg));
    rs::SeriesState st = rs::compute_beta(rs::compute_w_sequence(spec, cfg.terms));
    rs::ConvergenceReport rep = rs::analyze_convergence(st, cfg.window);
    auto warnings = common_warnings(cfg, rep);

    // two periods of u with inclusive endpoints: u_i = i n / phases, i = 0..2*phases
    std::vector<rs::TracePoint> pts;
    pts.reserve(2 * cfg.phases + 1);
    for (int i = 0; i <= 2 * cfg.phases; ++i) {
        rs::TracePoint p;
        p.u = double(i) * spec.n / cfg.phases;
        p.x = rs::evaluate_x(st, cfg.t, p.u, cfg.terms);
        pts.push_back(p);
    }
    if (cfg.format == "csv") {
        if (cfg.out.empty()) {
            std::cout << rs::csv_trace(pts) << "\n" << rs::csv_q_profile(rep);
        } else {
            emit(rs::csv_trace(pts), cfg.out);
            std::filesystem::path side(cfg.out);
            side.replace_extension(".qprofile.csv");
            emit(rs::csv_q_profile(rep), side.string());
        }
        return 0;
    }
    rs::json doc = rs::report_envelope(spec, st, {}, rep, warnings);
    rs::json arr = rs::json::array();
    for (const auto& p : pts)
        arr.push_back({{"u", p.u}, {"re", p.x.real()}, {"im", p.x.imag()}});
    doc["trace"] = arr;
    emit(doc.dump(2) + "\n", cfg.out);
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    rs::PolynomialSpec spec = rs::parse_polynomial(load_input(cfg));
    rs::SeriesState st = rs::compute_beta(rs::compute_w_sequence(spec, cfg.terms));
    rs::ConvergenceReport rep = rs::analyze_convergence(st, cfg.window);
    auto roots = rs::roots_at(st, cfg.t, cfg.terms, rep.rc_estimate);
    rs::ReferenceRoots ref = rs::reference_roots(spec, cfg.t);
    std::vector<rs::cplx> est;
    for (const auto& r : roots) est.push_back(r.value);
    rs::RootMatch match = rs::match_roots(est, ref.roots);

    auto warnings = common_warnings(cfg, rep);
    if (!ref.converged) warnings.push_back("reference root finder did not converge");

    if (cfg.format == "csv") {
        std::string out = "k,est_re,est_im,ref_re,ref_im,distance\n";
        for (int k = 0; k < spec.n; ++k) {
            const rs::cplx& r = ref.roots[match.permutation[k]];
            out += std::to_string(k) + ',' + rs::format_number(est[k].real()) + ',' +
                   rs::format_number(est[k].imag()) + ',' + rs::format_number(r.real()) + ',' +
                   rs::format_number(r.imag()) + ',' + rs::format_number(match.distances[k]) +
                   '\n';
        }
        emit(out, cfg.out);
    } else {
        rs::json doc = rs::report_envelope(spec, st, roots, rep, warnings);
        rs::json pairs = rs::json::array();
        for (int k = 0; k < spec.n; ++k) {
            const rs::cplx& r = ref.roots[match.permutation[k]];
            pairs.push_back({{"k", k},
                             {"est_re", est[k].real()},
                             {"est_im", est[k].imag()},
                             {"ref_re", r.real()},
                             {"ref_im", r.imag()},
                             {"distance", match.distances[k]}});
        }
        doc["compare"] = {{"pairs", pairs},
                          {"max_distance", match.max_distance},
                          {"tolerance", cfg.tolerance},
                          {"reference_converged", ref.converged}};
        emit(doc.dump(2) + "\n", cfg.out);
    }
    return match.max_distance < cfg.tolerance ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic power-series polynomial root solver"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("poly", cfg.input_text,
                        "polynomial, list form \"n=6; a=[8, 2, -3, -2, 1, -1]\" or equation "
                        "form \"x^6 = -x^5 + ... + 8\"");
        cmd->add_option("--file", cfg.file, "read the polynomial from a file instead");
        cmd->add_option("--t", cfg.t, "evaluation point (default 1.0)");
        cmd->add_option("--terms", cfg.terms, "series truncation order (default 200)")
            ->check(CLI::Range(2, 100000));
        cmd->add_option("--phases", cfg.phases, "trace samples per period (default 256)")
            ->check(CLI::Range(1, 1000000));
        cmd->add_option("--window", cfg.window,
                        "tail fraction for the RC estimate (default 0.25)");
        cmd->add_option("--format", cfg.format, "output format (default json)")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", cfg.out, "write the report to a file instead of stdout");
    };

    CLI::App* solve = app.add_subcommand("solve", "series roots, residuals and diagnostics");
    CLI::App* converge = app.add_subcommand("converge", "convergence diagnostics only");
    CLI::App* trace = app.add_subcommand("trace", "plot data: x(t,u) over two periods plus Q(m)");
    CLI::App* compare = app.add_subcommand("compare", "series roots vs. reference root finder");
    for (CLI::App* c : {solve, converge, trace, compare}) add_common(c);
    compare->add_option("--tolerance", cfg.tolerance,
                        "max allowed root distance (default 1e-6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!(cfg.window > 0.0) || cfg.window > 1.0)
            throw rs::ValidationError("--window must lie in (0, 1]");
        if (solve->parsed()) return cmd_solve(cfg);
        if (converge->parsed()) return cmd_converge(cfg);
        if (trace->parsed()) return cmd_trace(cfg);
        return cmd_compare(cfg);
    } catch (const rs::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rs::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rs::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
