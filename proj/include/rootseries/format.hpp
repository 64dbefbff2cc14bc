#pragma once

#include <charconv>
#include <cmath>
#include <string>

#include "rootseries/polynomial_spec.hpp"

namespace rootseries {

// Shortest representation that round-trips through from_chars bit-exactly.
inline std::string format_number(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// "re", "re+imi" or "re-imi". An imaginary part of -0.0 is kept as "-0i"
// so that format -> parse preserves the sign bit.
inline std::string format_complex(const cplx& v) {
    double re = v.real(), im = v.imag();
    if (im == 0.0 && !std::signbit(im)) return format_number(re);
    std::string s = format_number(re);
    if (im < 0.0 || std::signbit(im)) {
        s += '-';
        s += format_number(std::fabs(im));
    } else {
        s += '+';
        s += format_number(im);
    }
    s += 'i';
    return s;
}

// Compact list form; parse_polynomial reads this back to an identical spec.
inline std::string format_polynomial(const PolynomialSpec& spec) {
    std::string s = "n=" + std::to_string(spec.n) + "; a=[";
    for (int k = 0; k < spec.n; ++k) {
        if (k) s += ", ";
        s += format_complex(spec.a[k]);
    }
    s += ']';
    return s;
}

}  // namespace rootseries
