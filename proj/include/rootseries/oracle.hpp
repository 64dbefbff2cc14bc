#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rootseries/polynomial_spec.hpp"

namespace rootseries {

// B_q^1 = b_1 t + ... + b_q t^q; powers of this are the brute-force ground
// truth for the coefficient recurrences.
struct TruncatedSeries {
    std::vector<cplx> coeffs;  // coeffs[i] is b_{i+1}
    int q() const { return static_cast<int>(coeffs.size()); }

    TruncatedSeries prefix(int len) const {
        TruncatedSeries s;
        s.coeffs.assign(coeffs.begin(), coeffs.begin() + std::min<int>(len, q()));
        return s;
    }
};

// Coefficient of t^d in (B_q^1)^r, by r-1 explicit truncated multiplications.
// Zero outside the support d in [r, r*q].
inline cplx brute_K(const TruncatedSeries& series, int d, int r) {
    if (r < 1) throw std::domain_error("brute_K needs r >= 1");
    if (d < r || d > r * series.q()) return {0.0, 0.0};
    std::vector<cplx> base(static_cast<std::size_t>(d) + 1, cplx(0.0, 0.0));
    for (int deg = 1; deg <= std::min(series.q(), d); ++deg) base[deg] = series.coeffs[deg - 1];
    std::vector<cplx> cur = base, next;
    for (int j = 2; j <= r; ++j) {
        next.assign(static_cast<std::size_t>(d) + 1, cplx(0.0, 0.0));
        for (int p = j - 1; p <= d; ++p) {
            if (cur[p] == cplx(0.0, 0.0)) continue;
            for (int s = 1; s + p <= d; ++s) next[p + s] += cur[p] * base[s];
        }
        cur.swap(next);
    }
    return cur[d];
}

struct Prop1Bounds {
    int d_max = 10;
    int r_max = 5;
    double tol = 1e-9;
};

struct Prop1Report {
    bool passed = true;
    int checks = 0;
    int failures = 0;
    std::string first_failure;
};

namespace detail {
inline void prop1_check(Prop1Report& rep, cplx got, cplx want, double tol,
                        const std::string& label) {
    ++rep.checks;
    if (std::abs(got - want) <= tol * std::max(1.0, std::abs(want))) return;
    ++rep.failures;
    rep.passed = false;
    if (rep.first_failure.empty()) rep.first_failure = label;
}
}  // namespace detail

// Checks the three coefficient recurrences against brute_K:
//  - truncation invariance: K(d, B_q^r) is the same for every q >= d-r+1;
//  - convolution: K(d, B_q^r) = sum_m b_m K(d-m, B_q^{r-1});
//  - the aligned-index form for K(q+s, B_{q+s}^{s+1}), valid for q >= 2
//    (at q = 1 the b_q b_1^s tail and the m=1 head are the same term and
//    would be counted twice).
inline Prop1Report verify_prop1(const TruncatedSeries& series, Prop1Bounds bounds = {}) {
    Prop1Report rep;
    const double tol = bounds.tol;
    int len = series.q();
    for (int r = 1; r <= bounds.r_max; ++r) {
        for (int d = r; d <= bounds.d_max; ++d) {
            cplx full = brute_K(series, d, r);
            for (int q = std::max(1, d - r + 1); q <= len; ++q)
                detail::prop1_check(rep, brute_K(series.prefix(q), d, r), full, tol,
                                    "truncation invariance at d=" + std::to_string(d) +
                                        " r=" + std::to_string(r) + " q=" + std::to_string(q));
            if (r >= 2) {
                cplx acc(0.0, 0.0);
                for (int m = 1; m <= std::min(len, d - r + 1); ++m)
                    acc += series.coeffs[m - 1] * brute_K(series, d - m, r - 1);
                detail::prop1_check(rep, acc, full, tol,
                                    "convolution at d=" + std::to_string(d) +
                                        " r=" + std::to_string(r));
            }
        }
    }
    for (int q = 2; q <= len; ++q) {
        for (int s = 1; s <= bounds.r_max - 1; ++s) {
            cplx lhs = brute_K(series.prefix(std::min(q + s, len)), q + s, s + 1);
            cplx rhs = series.coeffs[0] * brute_K(series.prefix(std::min(q + s - 1, len)),
                                                  q + s - 1, s);
            for (int m = 2; m <= q - 1; ++m)
                rhs += series.coeffs[m - 1] *
                       brute_K(series.prefix(std::min(q + s - m, len)), q + s - m, s);
            cplx b1s(1.0, 0.0);
            for (int i = 0; i < s; ++i) b1s *= series.coeffs[0];
            rhs += series.coeffs[q - 1] * b1s;
            detail::prop1_check(rep, rhs, lhs, tol,
                                "aligned form at q=" + std::to_string(q) +
                                    " s=" + std::to_string(s));
        }
    }
    return rep;
}

// Branch-dependent companion recursion in the original variables. Exists to
// cross-check the W path; the b_1-power scaling in M1^{-1} degrades
// conditioning, hence the modest default m_max.
struct VPath {
    int branch_k = 0;
    cplx b1;
    std::vector<std::vector<cplx>> V;  // V[m], m = 1..last computed
    std::vector<cplx> M1_inv;          // row-major (n-1)^2
    std::vector<cplx> B_diag;          // (b1^{n-1}, ..., b1)
    std::optional<int> overflow_at;
};

namespace detail {
inline cplx ipow(cplx b, int e) {
    cplx r(1.0, 0.0);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
}  // namespace detail

// Closed-form inverse of the leading-coefficient matrix of the companion
// recursion: entries -(n-i) b1^{n+i-j-2} / (n b1^{n-1}) below the diagonal,
// i b1^{n+i-j-2} / (n b1^{n-1}) on and above it (1-based). Row-major (n-1)^2.
inline std::vector<cplx> m1_inverse(int n, cplx b1) {
    int d = n - 1;
    cplx denom = double(n) * detail::ipow(b1, n - 1);
    std::vector<cplx> inv(static_cast<std::size_t>(d) * d);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            cplx common = detail::ipow(b1, n + i - j - 2) / denom;
            inv[(i - 1) * d + (j - 1)] = (i > j ? -double(n - i) : double(i)) * common;
        }
    return inv;
}

inline VPath v_path(const PolynomialSpec& spec, int k, int m_max = 60) {
    if (m_max < 1) throw ValidationError("v_path needs m_max >= 1");
    int n = spec.n, d = n - 1;
    VPath vp;
    vp.branch_k = k;
    vp.b1 = principal_root_b1(spec, k);
    cplx denom = double(n) * detail::ipow(vp.b1, n - 1);
    vp.M1_inv = m1_inverse(n, vp.b1);
    vp.B_diag.resize(d);
    for (int i = 1; i <= d; ++i) vp.B_diag[i - 1] = detail::ipow(vp.b1, n - i);

    std::vector<cplx> col(d);  // (1, 2 b1, ..., (n-1) b1^{n-2})
    for (int i = 1; i <= d; ++i) col[i - 1] = double(i) * detail::ipow(vp.b1, i - 1);

    vp.V.assign(static_cast<std::size_t>(m_max) + 1, {});
    vp.V[1].resize(d);
    for (int i = 1; i <= d; ++i) vp.V[1][i - 1] = detail::ipow(vp.b1, i);

    std::vector<cplx> X(d), out(d);
    for (int q = 2; q <= m_max; ++q) {
        std::fill(X.begin(), X.end(), cplx(0.0, 0.0));  // X(q-1) = sum b_m V(q-m+1)
        for (int m = 2; m <= q - 1; ++m) {
            cplx bm = vp.V[m][0];
            const auto& v = vp.V[q - m + 1];
            for (int i = 0; i < d; ++i) X[i] += bm * v[i];
        }
        cplx src(0.0, 0.0);
        for (int m = 1; m <= std::min(n - 1, q - 1); ++m) src += spec.a[m] * vp.V[q - m][m - 1];
        cplx shead = src / denom;
        bool finite = true;
        for (int i = 0; i < d; ++i) {
            cplx acc(0.0, 0.0);
            for (int j = 0; j < d; ++j) acc += vp.M1_inv[i * d + j] * X[j];
            out[i] = -acc + shead * col[i];
            finite = finite && std::isfinite(out[i].real()) && std::isfinite(out[i].imag());
        }
        if (!finite) {
            vp.overflow_at = q;
            vp.V.resize(q);
            break;
        }
        vp.V[q] = out;
    }
    return vp;
}

// W(q) = b1^{1-q} B V(q), the change of variables that removes the branch.
inline std::vector<cplx> w_from_v(const VPath& vp, int q) {
    std::vector<cplx> w(vp.B_diag.size());
    cplx scale = std::pow(vp.b1, 1.0 - q);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = scale * vp.B_diag[i] * vp.V[q][i];
    return w;
}

struct ReferenceRoots {
    std::vector<cplx> roots;
    bool converged = false;
    int iterations = 0;
};

// Aberth-Ehrlich simultaneous iteration on x^n - t^n sum a_k x^k with
// deterministic perturbed-circle starting points. Plays the role of an
// external root finder, so it shares no code with the series path.
inline ReferenceRoots reference_roots(const PolynomialSpec& spec, double t) {
    int n = spec.n;
    ReferenceRoots rr;
    rr.roots.assign(n, cplx(0.0, 0.0));
    if (t == 0.0) {  // all roots collapse to 0
        rr.converged = true;
        return rr;
    }
    double tn = 1.0;
    for (int i = 0; i < n; ++i) tn *= t;
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);  // monic coefficients
    c[n] = 1.0;
    for (int k = 0; k < n; ++k) c[k] = -spec.a[k] * tn;

    double cmax = 0.0;
    for (int k = 0; k < n; ++k) cmax = std::max(cmax, std::abs(c[k]));
    double radius = 1.0 + cmax;  // Cauchy bound
    for (int j = 0; j < n; ++j)
        rr.roots[j] = radius * (1.0 + 1e-4 * j) * std::polar(1.0, 2.0 * pi * j / n + 0.43);

    auto eval = [&](cplx x, cplx& p, cplx& dp) {
        p = c[n];
        dp = cplx(0.0, 0.0);
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * x + p;
            p = p * x + c[k];
        }
    };
    double scale = std::max(1.0, std::abs(spec.a[0] * tn));
    double target = 1e-13 * scale;
    int it = 0;
    for (; it < 600; ++it) {
        bool all_done = true;
        for (int j = 0; j < n; ++j) {
            cplx p, dp;
            eval(rr.roots[j], p, dp);
            if (std::abs(p) > target) all_done = false;
            cplx w = dp != cplx(0.0, 0.0) ? p / dp : p;
            cplx s(0.0, 0.0);
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                cplx diff = rr.roots[j] - rr.roots[i];
                if (diff != cplx(0.0, 0.0)) s += 1.0 / diff;
            }
            cplx den = cplx(1.0, 0.0) - w * s;
            cplx corr = den != cplx(0.0, 0.0) ? w / den : w;
            cplx z = rr.roots[j] - corr;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                z = radius * (1.0 + 1e-3 * (j + 1)) * std::polar(1.0, 2.0 * pi * j / n + 1.1);
            rr.roots[j] = z;
        }
        if (all_done) break;
    }
    rr.iterations = it;
    rr.converged = true;
    for (int j = 0; j < n; ++j) {
        cplx p, dp;
        eval(rr.roots[j], p, dp);
        if (std::abs(p) > 1e-12 * scale) rr.converged = false;
    }
    return rr;
}

struct RootMatch {
    std::vector<int> permutation;         // permutation[i]: reference index for estimate i
    std::vector<double> distances;        // |estimate[i] - reference[permutation[i]]|
    std::vector<double> distance_matrix;  // row-major, all pairwise distances (audits)
    double max_distance = 0.0;
};

// Greedy minimal-distance assignment: smallest pair first, remove, repeat.
inline RootMatch match_roots(const std::vector<cplx>& estimates,
                             const std::vector<cplx>& reference) {
    if (estimates.size() != reference.size())
        throw ValidationError("match_roots needs equally sized lists");
    int n = static_cast<int>(estimates.size());
    RootMatch m;
    m.permutation.assign(n, -1);
    m.distances.assign(n, 0.0);
    m.distance_matrix.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.distance_matrix[i * n + j] = std::abs(estimates[i] - reference[j]);
    std::vector<bool> used_e(n, false), used_r(n, false);
    for (int step = 0; step < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (used_e[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (used_r[j]) continue;
                if (m.distance_matrix[i * n + j] < best) {
                    best = m.distance_matrix[i * n + j];
                    bi = i;
                    bj = j;
                }
            }
        }
        used_e[bi] = used_r[bj] = true;
        m.permutation[bi] = bj;
        m.distances[bi] = best;
        m.max_distance = std::max(m.max_distance, best);
    }
    return m;
}

}  // namespace rootseries
