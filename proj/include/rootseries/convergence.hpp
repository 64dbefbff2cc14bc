#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rootseries/series.hpp"

namespace rootseries {

inline double unbounded() { return std::numeric_limits<double>::infinity(); }

// Row-sum norm of M in closed form. z(u,n) = -2u^2 + u(2n+1) - n equals the
// n-scaled absolute row sum (n-i)(2i-1) at row i = u; the quadratic peaks at
// u = n/2 + 1/4, so the max over integer rows is at floor or ceil of that.
inline double norm_M(int n) {
    if (n < 2) throw ValidationError("norm_M needs n >= 2");
    auto z = [n](double u) { return -2.0 * u * u + u * (2.0 * n + 1.0) - n; };
    double v = n / 2.0 + 0.25;
    return std::max(z(std::floor(v)), z(std::ceil(v))) / n;
}

// Exact C_r = (2r)!/((r+1)! r!) via the integer recurrence
// C_r = C_{r-1} * 2(2r-1)/(r+1); the intermediate product needs 128 bits.
inline std::uint64_t catalan(int r) {
    if (r < 0) throw std::domain_error("catalan needs r >= 0");
    if (r > 35) throw std::overflow_error("catalan exact range is r <= 35");
    unsigned __int128 c = 1;
    for (int i = 1; i <= r; ++i) c = c * (2 * (2 * i - 1)) / (i + 1);
    return static_cast<std::uint64_t>(c);
}

// C_r as a double: exact range when possible, log-gamma beyond it
// (relative error well under 1e-12).
inline double catalan_value(int r) {
    if (r <= 35) return static_cast<double>(catalan(r));
    return std::exp(std::lgamma(2.0 * r + 1.0) - std::lgamma(r + 2.0) - std::lgamma(r + 1.0));
}

// 4^r / (sqrt(pi) r^{3/2}), the leading asymptotic term; diagnostics only.
inline double catalan_asymptotic(int r) {
    if (r < 1) throw std::domain_error("catalan_asymptotic needs r >= 1");
    return std::pow(4.0, r) / (std::sqrt(pi) * std::pow(r, 1.5));
}

// Majorants S_q >= w(q) = max-component modulus of W(q).
struct MajorantSequence {
    int n = 0;
    double alpha = 0.0;   // max_{k>=1} |a_k|
    double a0_mod = 0.0;  // |a_0|
    double norm = 0.0;    // ||M||
    double mu = 0.0;      // ||M|| / |a_0|
    int q_max = 0;
    std::vector<double> S;  // S[q] valid for q = 2..q_max

    // sigma_p(alpha): alpha/||M|| while p <= n, zero beyond.
    double sigma(int p) const { return p <= n ? alpha / norm : 0.0; }
};

// S_2 = alpha + alpha/||M||;
// q = 3..n:  S_q = (1/|a0|) sum_{p=1}^{q-2} [||M|| S_{p+1} + alpha] S_{q-p}
//                  + alpha + alpha/||M||;
// q > n:     S_q = mu sum_{p=1}^{q-2} S_{p+1} S_{q-p}.
inline MajorantSequence s_sequence(const PolynomialSpec& spec, int q_max = 0) {
    MajorantSequence ms;
    ms.n = spec.n;
    if (q_max == 0) q_max = spec.n;
    if (q_max < 2) throw ValidationError("s_sequence needs q_max >= 2");
    ms.q_max = q_max;
    for (int k = 1; k < spec.n; ++k) ms.alpha = std::max(ms.alpha, std::abs(spec.a[k]));
    ms.a0_mod = spec.rho;
    ms.norm = norm_M(spec.n);
    ms.mu = ms.norm / ms.a0_mod;
    ms.S.assign(static_cast<std::size_t>(q_max) + 1, 0.0);
    ms.S[2] = ms.alpha + ms.alpha / ms.norm;
    for (int q = 3; q <= q_max; ++q) {
        double acc = 0.0;
        if (q <= spec.n) {
            for (int p = 1; p <= q - 2; ++p)
                acc += (ms.norm * ms.S[p + 1] + ms.alpha) * ms.S[q - p];
            ms.S[q] = acc / ms.a0_mod + ms.alpha + ms.alpha / ms.norm;
        } else {
            for (int p = 1; p <= q - 2; ++p) acc += ms.S[p + 1] * ms.S[q - p];
            ms.S[q] = ms.mu * acc;
        }
    }
    return ms;
}

// Analytic lower bound on the radius of convergence:
// (1/4) ( max_{k=1..n-1} ( S_{k+1} ||M|| / (C_{k-1} |a0|^{1-k/n}) )^{1/k} )^{-1};
// unbounded (infinity) when alpha = 0.
inline double lbrc(const PolynomialSpec& spec) {
    MajorantSequence ms = s_sequence(spec);
    if (ms.alpha == 0.0) return unbounded();
    double best = 0.0;
    for (int k = 1; k <= spec.n - 1; ++k) {
        double inner = ms.S[k + 1] * ms.norm /
                       (catalan_value(k - 1) * std::pow(ms.a0_mod, 1.0 - double(k) / spec.n));
        best = std::max(best, std::pow(inner, 1.0 / k));
    }
    return 0.25 / best;
}

struct QEntry {
    int m = 0;
    std::optional<double> Q;  // empty where W(m)_1 vanished
};

struct ConvergenceReport {
    double alpha = 0.0;
    double norm = 0.0;          // ||M||
    double lbrc_value = 0.0;    // infinity = unbounded
    std::vector<QEntry> q_profile;
    double rc_estimate = 0.0;   // infinity = unbounded (no usable tail entries)
    int m_max_used = 0;
    int tail_window = 0;        // number of trailing entries the estimate used
    bool low_confidence = false;
};

// Empirical radius profile Q(m) = 1/(|a0|^{1/n} |W(m)_1|^{1/m}) and the
// tail-window minimum as a lim inf proxy. |W(m)_1| below 1e-300 is treated
// as the exact-zero missing-value case.
inline ConvergenceReport q_profile(const SeriesState& st, double window_fraction = 0.25) {
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw ValidationError("window fraction must lie in (0, 1]");
    ConvergenceReport rep;
    rep.m_max_used = st.m_max;
    rep.low_confidence = st.m_max < 50;
    double a0_root = std::pow(st.spec.rho, 1.0 / st.spec.n);
    rep.q_profile.reserve(st.m_max);
    for (int m = 1; m <= st.m_max; ++m) {
        QEntry e;
        e.m = m;
        double w1 = std::abs(st.W[m][0]);
        if (w1 >= 1e-300) e.Q = 1.0 / (a0_root * std::pow(w1, 1.0 / m));
        rep.q_profile.push_back(e);
    }
    int wc = std::max(1, static_cast<int>(std::lround(st.m_max * window_fraction)));
    wc = std::min(wc, st.m_max);
    rep.tail_window = wc;
    double rc = unbounded();
    for (int m = st.m_max - wc + 1; m <= st.m_max; ++m)
        if (rep.q_profile[m - 1].Q) rc = std::min(rc, *rep.q_profile[m - 1].Q);
    rep.rc_estimate = rc;
    return rep;
}

// Full report: profile plus the analytic pieces.
inline ConvergenceReport analyze_convergence(const SeriesState& st,
                                             double window_fraction = 0.25) {
    ConvergenceReport rep = q_profile(st, window_fraction);
    MajorantSequence ms = s_sequence(st.spec);
    rep.alpha = ms.alpha;
    rep.norm = ms.norm;
    rep.lbrc_value = lbrc(st.spec);
    return rep;
}

// A mu-convolution of order m: terms 1..m are the seed, and every later term
// is mu times the full self-convolution, v_q = mu sum_{i=1}^{q-1} v_i v_{q-i}.
inline std::vector<double> mu_convolution(const std::vector<double>& seed, double mu,
                                          int q_max) {
    if (seed.empty()) throw ValidationError("mu_convolution needs a nonempty seed");
    std::vector<double> v(static_cast<std::size_t>(q_max) + 1, 0.0);
    int m = static_cast<int>(seed.size());
    for (int q = 1; q <= std::min(m, q_max); ++q) v[q] = seed[q - 1];
    for (int q = m + 1; q <= q_max; ++q) {
        double acc = 0.0;
        for (int i = 1; i <= q - 1; ++i) acc += v[i] * v[q - i];
        v[q] = mu * acc;
    }
    return v;
}

// Order-1 closed form: v_{q+1} = v_1 C_q (v_1 mu)^q.
inline double mu_convolution_order1_closed(double v1, double mu, int q) {
    if (q < 1) throw std::domain_error("term index must be >= 1");
    return v1 * catalan_value(q - 1) * std::pow(v1 * mu, q - 1);
}

// Seed bound for the domination argument: the order-1 convolution started at
// v1 = max_k (u_k / (C_{k-1} mu^{k-1}))^{1/k} dominates the order-m one.
inline double v1_bound(const std::vector<double>& seed, double mu) {
    double best = 0.0;
    for (int k = 1; k <= static_cast<int>(seed.size()); ++k)
        best = std::max(best,
                        std::pow(seed[k - 1] / (catalan_value(k - 1) * std::pow(mu, k - 1)),
                                 1.0 / k));
    return best;
}

}  // namespace rootseries
