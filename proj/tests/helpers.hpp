#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <rootseries/rootseries.hpp>

namespace testutil {

using rootseries::cplx;

// order-preserving bijection doubles -> uint64, so ulp distance is a
// subtraction; +-0 land one apart but the a == b early-out hides that
inline std::uint64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    if (!std::isfinite(a) || !std::isfinite(b))
        return std::numeric_limits<std::uint64_t>::max();
    auto key = [](double x) {
        std::uint64_t u = std::bit_cast<std::uint64_t>(x);
        return (u >> 63) ? ~u : (u | 0x8000000000000000ull);
    };
    std::uint64_t ka = key(a), kb = key(b);
    return ka > kb ? ka - kb : kb - ka;
}

inline std::uint64_t ulp_distance(cplx a, cplx b) {
    return std::max(ulp_distance(a.real(), b.real()), ulp_distance(a.imag(), b.imag()));
}

// |x - y| <= atol + rtol max(|x|, |y|)
inline bool near(cplx x, cplx y, double rtol, double atol = 0.0) {
    return std::abs(x - y) <= atol + rtol * std::max(std::abs(x), std::abs(y));
}

inline bool near(double x, double y, double rtol, double atol = 0.0) {
    return std::abs(x - y) <= atol + rtol * std::max(std::abs(x), std::abs(y));
}

inline cplx unit_disk(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = std::sqrt(u(rng));
    double ph = 2.0 * rootseries::pi * u(rng);
    return std::polar(r, ph);
}

// n in [n_lo, n_hi], |a0| in [a0_lo, a0_hi] at a random phase, the rest in
// the closed unit disk (nonzero a few of them so the tail is not trivial)
inline rootseries::PolynomialSpec random_spec(std::mt19937& rng, int n_lo, int n_hi,
                                              double a0_lo, double a0_hi) {
    std::uniform_int_distribution<int> nd(n_lo, n_hi);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int n = nd(rng);
    std::vector<cplx> a(static_cast<std::size_t>(n));
    a[0] = std::polar(a0_lo + (a0_hi - a0_lo) * u(rng), 2.0 * rootseries::pi * u(rng));
    for (int k = 1; k < n; ++k) a[static_cast<std::size_t>(k)] = unit_disk(rng);
    return rootseries::make_spec(n, std::move(a));
}

// real-coefficient variant of the same recipe
inline rootseries::PolynomialSpec random_real_spec(std::mt19937& rng, int n_lo, int n_hi,
                                                   double a0_lo, double a0_hi) {
    std::uniform_int_distribution<int> nd(n_lo, n_hi);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> mag(a0_lo, a0_hi);
    int n = nd(rng);
    std::vector<cplx> a(static_cast<std::size_t>(n));
    a[0] = cplx(u(rng) < 0.0 ? -mag(rng) : mag(rng), 0.0);
    for (int k = 1; k < n; ++k) a[static_cast<std::size_t>(k)] = cplx(u(rng), 0.0);
    return rootseries::make_spec(n, std::move(a));
}

// Leading-coefficient matrix of the companion recursion, built directly from
// its defining rows rather than by inverting anything: first row (2 b1, -1,
// 0, ...); row i >= 2 has b1^i in column 1, b1 on the diagonal and -1 on the
// superdiagonal. Row-major (n-1)^2.
inline std::vector<cplx> m1_forward(int n, cplx b1) {
    int d = n - 1;
    std::vector<cplx> m(static_cast<std::size_t>(d) * d, cplx(0.0, 0.0));
    m[0] = 2.0 * b1;
    for (int i = 2; i <= d; ++i) {
        m[static_cast<std::size_t>(i - 1) * d] = rootseries::detail::ipow(b1, i);
        m[static_cast<std::size_t>(i - 1) * d + (i - 1)] = b1;
    }
    for (int i = 1; i <= d - 1; ++i) m[static_cast<std::size_t>(i - 1) * d + i] = cplx(-1.0, 0.0);
    return m;
}

// Independent series construction: match coefficients of x^n against the
// right-hand side power by power and solve for the next b. Uses only the
// brute-force composition-sum evaluator, never the production recursion.
inline rootseries::TruncatedSeries series_by_matching(const rootseries::PolynomialSpec& spec,
                                                      int k, int q_max) {
    int n = spec.n;
    rootseries::TruncatedSeries s;
    s.coeffs.push_back(rootseries::principal_root_b1(spec, k));
    cplx denom = double(n) * rootseries::detail::ipow(s.coeffs[0], n - 1);
    for (int q = 1; q < q_max; ++q) {
        cplx rhs(0.0, 0.0);
        for (int m = 1; m <= std::min(n - 1, q); ++m)
            rhs += spec.a[static_cast<std::size_t>(m)] * rootseries::brute_K(s, q, m);
        cplx next = (rhs - rootseries::brute_K(s, n + q, n)) / denom;
        s.coeffs.push_back(next);
    }
    return s;
}

}  // namespace testutil
