#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "rootseries/polynomial_spec.hpp"

namespace rootseries {

// Thrown when the W recursion (or a stored beta) leaves the finite range.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what_seq, int q)
        : std::runtime_error(what_seq + " overflowed at index " + std::to_string(q)),
          first_bad_q(q) {}
    int first_bad_q;
};

// (n-1) x (n-1) real matrix with entry(i,j) = -(n-i)/n below the diagonal
// and i/n on or above it (1-based indices).
struct MatrixM {
    int n = 0;
    std::vector<double> e;  // row-major, (n-1)^2

    double entry(int i, int j) const { return e[(i - 1) * (n - 1) + (j - 1)]; }
};

inline MatrixM build_matrix_M(int n) {
    if (n < 2) throw ValidationError("matrix M needs n >= 2");
    MatrixM m;
    m.n = n;
    int d = n - 1;
    m.e.resize(static_cast<std::size_t>(d) * d);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            m.e[(i - 1) * d + (j - 1)] = i > j ? -double(n - i) / n : double(i) / n;
    return m;
}

// The fixed vectors of the W recursion: u picks the first component, U is the
// (1/n)(1,...,n-1) column, and A_p is zero except for a_p in slot p.
struct StructureVectors {
    std::vector<double> u_row;          // (1, 0, ..., 0)
    std::vector<double> U_col;          // (1/n)(1, 2, ..., n-1)
    std::vector<std::vector<cplx>> A_rows;
};

inline StructureVectors build_structure_vectors(const PolynomialSpec& spec) {
    int d = spec.n - 1;
    StructureVectors sv;
    sv.u_row.assign(d, 0.0);
    sv.u_row[0] = 1.0;
    sv.U_col.resize(d);
    for (int i = 1; i <= d; ++i) sv.U_col[i - 1] = double(i) / spec.n;
    sv.A_rows.resize(d);
    for (int p = 1; p <= d; ++p) {
        sv.A_rows[p - 1].assign(d, cplx(0.0, 0.0));
        sv.A_rows[p - 1][p - 1] = spec.a[p];
    }
    return sv;
}

struct SeriesState {
    PolynomialSpec spec;
    int m_max = 0;
    std::vector<std::vector<cplx>> W;  // W[m], m = 1..m_max; W[0] unused
    std::vector<cplx> beta;            // beta[m], m = 1..m_max; beta[0] unused
};

// W(1) = a0 (1,...,1)', W(2) = (a1/n)(1,...,n-1)', and for q >= 3
//   W(q) = (1/a0) [ -M sum_{p=1}^{q-2} W(p+1)_1 W(q-p)
//                   + U sum_{p=1}^{min(n-1,q-1)} a_p W(q-p)_p ].
inline SeriesState compute_w_sequence(const PolynomialSpec& spec, int m_max) {
    if (m_max < 2) throw ValidationError("m_max must be at least 2");
    int n = spec.n, d = n - 1;
    MatrixM M = build_matrix_M(n);
    StructureVectors sv = build_structure_vectors(spec);

    SeriesState st;
    st.spec = spec;
    st.m_max = m_max;
    st.W.assign(static_cast<std::size_t>(m_max) + 1, {});
    st.W[1].assign(d, spec.a[0]);
    st.W[2].resize(d);
    for (int i = 1; i <= d; ++i) st.W[2][i - 1] = spec.a[1] * (double(i) / n);

    std::vector<cplx> conv(d), out(d);
    for (int q = 3; q <= m_max; ++q) {
        // conv = sum_p [u . W(p+1)] W(q-p); the scalar is just W(p+1)_1
        std::fill(conv.begin(), conv.end(), cplx(0.0, 0.0));
        for (int p = 1; p <= q - 2; ++p) {
            cplx w1 = st.W[p + 1][0];
            const auto& wq = st.W[q - p];
            for (int i = 0; i < d; ++i) conv[i] += w1 * wq[i];
        }
        cplx src(0.0, 0.0);  // sum_p [A_p . W(q-p)] = sum_p a_p W(q-p)_p
        int pmax = std::min(n - 1, q - 1);
        for (int p = 1; p <= pmax; ++p) src += spec.a[p] * st.W[q - p][p - 1];

        out.assign(d, cplx(0.0, 0.0));
        for (int i = 1; i <= d; ++i) {
            cplx acc(0.0, 0.0);
            for (int j = 1; j <= d; ++j) acc += M.entry(i, j) * conv[j - 1];
            out[i - 1] = (-acc + sv.U_col[i - 1] * src) / spec.a[0];
        }
        for (int i = 0; i < d; ++i)
            if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag()))
                throw DivergenceError("W sequence", q);
        st.W[q] = out;
    }
    return st;
}

// beta_m = rho^{m/n} e^{i m theta / n} W(m)_1 / a0. The direct product keeps
// real specs exactly real; when rho^{m/n} or W(m)_1/a0 leaves the finite
// nonzero range the term is redone in log magnitude, which stays meaningful
// as long as beta_m itself is representable.
inline SeriesState compute_beta(SeriesState st) {
    const PolynomialSpec& spec = st.spec;
    int n = spec.n;
    st.beta.assign(static_cast<std::size_t>(st.m_max) + 1, cplx(0.0, 0.0));
    double log_rho = std::log(spec.rho);
    for (int m = 1; m <= st.m_max; ++m) {
        cplx w1 = st.W[m][0];
        if (w1 == cplx(0.0, 0.0)) continue;
        double mm = static_cast<double>(m);
        double pw = std::pow(spec.rho, mm / n);
        cplx w1a = w1 / spec.a[0];
        cplx b;
        if (std::isfinite(pw) && pw > 0.0 && w1a != cplx(0.0, 0.0) &&
            std::isfinite(w1a.real()) && std::isfinite(w1a.imag())) {
            b = w1a * pw;
            if (spec.theta != 0.0) b *= std::polar(1.0, mm * spec.theta / n);
        } else {
            double logmag = mm / n * log_rho + std::log(std::abs(w1)) - log_rho;
            double ang = mm * spec.theta / n + std::arg(w1) - spec.theta;
            b = std::polar(std::exp(logmag), ang);
        }
        if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
            throw DivergenceError("beta sequence", m);
        st.beta[m] = b;
    }
    return st;
}

// Partial sum sum_{m=1}^{q} beta_m e^{2 u pi m i / n} t^m, Horner in
// z = t e^{2 u pi i / n}. Non-integer u is allowed (plot traces); the roots
// are the integer-u values.
inline cplx evaluate_x(const SeriesState& st, double t, double u, int q) {
    if (q < 0 || q > st.m_max) throw std::out_of_range("truncation order q exceeds m_max");
    cplx z = t * unit_phase(u, st.spec.n);
    cplx acc(0.0, 0.0);
    for (int m = q; m >= 1; --m) acc = acc * z + st.beta[m];
    return acc * z;
}

// E(x) = x^n - (a_{n-1} x^{n-1} + ... + a_1 x + a_0) t^n, RHS by Horner.
inline cplx residual(const PolynomialSpec& spec, cplx x, double t) {
    int n = spec.n;
    cplx xn(1.0, 0.0);
    for (int i = 0; i < n; ++i) xn *= x;
    cplx rhs = spec.a[n - 1];
    for (int k = n - 2; k >= 0; --k) rhs = rhs * x + spec.a[k];
    double tn = 1.0;
    for (int i = 0; i < n; ++i) tn *= t;
    return xn - rhs * tn;
}

struct RootEvaluation {
    double t = 0.0;
    int k = 0;
    int q = 0;
    cplx value;
    cplx residual;
    bool beyond_radius = false;  // set when |t| >= the empirical RC estimate
};

inline std::vector<RootEvaluation> roots_at(const SeriesState& st, double t, int q,
                                            std::optional<double> rc_estimate = std::nullopt) {
    std::vector<RootEvaluation> out;
    out.reserve(st.spec.n);
    for (int k = 0; k < st.spec.n; ++k) {
        RootEvaluation r;
        r.t = t;
        r.k = k;
        r.q = q;
        r.value = evaluate_x(st, t, k, q);
        r.residual = residual(st.spec, r.value, t);
        r.beyond_radius = rc_estimate && std::abs(t) >= *rc_estimate;
        out.push_back(r);
    }
    return out;
}

}  // namespace rootseries
