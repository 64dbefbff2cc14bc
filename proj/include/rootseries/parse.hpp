#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "rootseries/polynomial_spec.hpp"

namespace rootseries {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
    std::size_t position;
};

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' (" + what + ")");
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    int parse_int(const char* what) {
        skip_ws();
        int value = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec != std::errc{}) fail(std::string("expected integer (") + what + ")");
        pos_ = res.ptr - text_.data();
        return value;
    }

    // Unsigned decimal; the caller handles signs so that "+1.5" works too.
    double parse_unsigned_real(const char* what) {
        skip_ws();
        double value = 0.0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec == std::errc::result_out_of_range) fail("number out of range");
        if (res.ec != std::errc{} || text_[pos_] == '-')
            fail(std::string("expected number (") + what + ")");
        pos_ = res.ptr - text_.data();
        return value;
    }

    // One signed term of a complex literal: "1.5", "-2i", "i", "-i".
    // Returns the value and whether it was imaginary.
    std::pair<double, bool> parse_complex_term() {
        skip_ws();
        double sign = 1.0;
        if (accept('-')) sign = -1.0;
        else accept('+');
        skip_ws();
        if (peek() == 'i') {
            ++pos_;
            return {sign, true};
        }
        double v = sign * parse_unsigned_real("complex term");
        skip_ws();
        if (peek() == 'i') {
            ++pos_;
            return {v, true};
        }
        return {v, false};
    }

    // "a", "bi", "a+bi", "a-bi" with optional whitespace between tokens.
    cplx parse_complex() {
        auto [v1, imag1] = parse_complex_term();
        if (imag1) return {0.0, v1};
        skip_ws();
        if (peek() == '+' || peek() == '-') {
            std::size_t mark = pos_;
            auto [v2, imag2] = parse_complex_term();
            if (!imag2) {
                pos_ = mark;
                fail("second part of a complex literal must end in 'i'");
            }
            return {v1, v2};
        }
        return {v1, 0.0};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline PolynomialSpec parse_compact(Cursor& c) {
    c.expect('n', "compact form starts with n=");
    c.expect('=', "compact form");
    int n = c.parse_int("degree");
    c.expect(';', "separator between n and a");
    c.expect('a', "coefficient list");
    c.expect('=', "coefficient list");
    c.expect('[', "coefficient list");
    std::vector<cplx> a;
    if (!c.accept(']')) {
        a.push_back(c.parse_complex());
        while (c.accept(',')) a.push_back(c.parse_complex());
        c.expect(']', "end of coefficient list");
    }
    c.skip_ws();
    if (!c.done()) c.fail("unexpected trailing input");
    return make_spec(n, std::move(a));
}

// "x^N = c_{n-1} x^{n-1} + ... + c_1 x + c_0" with real coefficients;
// missing powers are zero, repeated powers are rejected.
inline PolynomialSpec parse_equation(Cursor& c) {
    c.expect('x', "equation form starts with x^n");
    c.expect('^', "equation form starts with x^n");
    int n = c.parse_int("degree");
    if (n < 2) c.fail("degree must be at least 2");
    c.expect('=', "equation form");
    std::vector<cplx> a(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    bool first = true;
    for (;;) {
        c.skip_ws();
        if (c.done()) break;
        double sign = 1.0;
        if (c.accept('-')) sign = -1.0;
        else if (c.accept('+')) sign = 1.0;
        else if (!first) c.fail("expected '+' or '-' between terms");
        c.skip_ws();
        std::size_t term_pos = c.pos();
        double coeff = 1.0;
        bool have_number = c.peek() != 'x';
        if (have_number) coeff = c.parse_unsigned_real("coefficient");
        int power = 0;
        c.skip_ws();
        if (c.peek() == 'x') {
            c.accept('x');
            power = c.accept('^') ? c.parse_int("exponent") : 1;
        } else if (!have_number) {
            c.fail("expected a term");
        }
        if (power < 0 || power >= n)
            throw ParseError("term power must lie in 0.." + std::to_string(n - 1), term_pos);
        if (seen[power])
            throw ParseError("power " + std::to_string(power) + " appears twice", term_pos);
        seen[power] = true;
        a[power] = cplx(sign * coeff, 0.0);
        first = false;
    }
    return make_spec(n, std::move(a));
}

}  // namespace detail

// Accepts the compact list form "n=6; a=[8, 2, -3, -2, 1, -1]" (a_0 first,
// complex entries as "re+imi") or the equation form
// "x^6 = -x^5 + x^4 - 2x^3 - 3x^2 + 2x + 8".
inline PolynomialSpec parse_polynomial(std::string_view text) {
    detail::Cursor c(text);
    c.skip_ws();
    switch (c.peek()) {
        case 'n': return detail::parse_compact(c);
        case 'x': return detail::parse_equation(c);
        default: c.fail("input must start with 'n=' (list form) or 'x^' (equation form)");
    }
}

}  // namespace rootseries
