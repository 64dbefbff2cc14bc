#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rootseries/convergence.hpp"
#include "rootseries/format.hpp"
#include "rootseries/series.hpp"

#ifndef ROOTSERIES_VERSION
#define ROOTSERIES_VERSION "0.0.0-dev"
#endif

namespace rootseries {

inline const char* version() { return ROOTSERIES_VERSION; }

using json = nlohmann::json;

inline json finite_or_unbounded(double v) {
    if (std::isinf(v)) return json("unbounded");
    return json(v);
}

inline json beta_preview_json(const SeriesState& st, int count = 10) {
    json arr = json::array();
    for (int m = 1; m <= std::min(count, st.m_max); ++m)
        arr.push_back({{"m", m}, {"re", st.beta[m].real()}, {"im", st.beta[m].imag()}});
    return arr;
}

inline json roots_json(const std::vector<RootEvaluation>& roots) {
    json arr = json::array();
    for (const auto& r : roots)
        arr.push_back({{"k", r.k},
                       {"re", r.value.real()},
                       {"im", r.value.imag()},
                       {"residual", std::abs(r.residual)}});
    return arr;
}

inline json convergence_json(const ConvergenceReport& rep) {
    json profile = json::array();
    for (const auto& e : rep.q_profile) {
        json q = e.Q ? json(*e.Q) : json(nullptr);
        profile.push_back({{"m", e.m}, {"Q", q}});
    }
    return {{"alpha", rep.alpha},
            {"norm_M", rep.norm},
            {"lbrc", finite_or_unbounded(rep.lbrc_value)},
            {"rc_estimate", finite_or_unbounded(rep.rc_estimate)},
            {"q_profile", profile}};
}

// The common envelope every command emits in JSON mode. The input echo is the
// compact text form and parses back to identical coefficients.
inline json report_envelope(const PolynomialSpec& spec, const SeriesState& st,
                            const std::vector<RootEvaluation>& roots,
                            const ConvergenceReport& rep,
                            const std::vector<std::string>& warnings) {
    return {{"spec", format_polynomial(spec)},
            {"beta_preview", beta_preview_json(st)},
            {"roots", roots_json(roots)},
            {"convergence", convergence_json(rep)},
            {"warnings", warnings},
            {"version", version()}};
}

inline std::string csv_roots(const std::vector<RootEvaluation>& roots) {
    std::string out = "k,re,im,residual\n";
    for (const auto& r : roots)
        out += std::to_string(r.k) + ',' + format_number(r.value.real()) + ',' +
               format_number(r.value.imag()) + ',' + format_number(std::abs(r.residual)) + '\n';
    return out;
}

// Missing Q(m) values become empty cells.
inline std::string csv_q_profile(const ConvergenceReport& rep) {
    std::string out = "m,Q\n";
    for (const auto& e : rep.q_profile) {
        out += std::to_string(e.m) + ',';
        if (e.Q) out += format_number(*e.Q);
        out += '\n';
    }
    return out;
}

struct TracePoint {
    double u = 0.0;
    cplx x;
};

inline std::string csv_trace(const std::vector<TracePoint>& pts) {
    std::string out = "u,re,im\n";
    for (const auto& p : pts)
        out += format_number(p.u) + ',' + format_number(p.x.real()) + ',' +
               format_number(p.x.imag()) + '\n';
    return out;
}

}  // namespace rootseries
