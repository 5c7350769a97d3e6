#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nmcode {

// Exact non-negative rational. All probabilities and bounds in this library
// are ratios of enumeration counts, so 64-bit numerator/denominator with
// 128-bit intermediates is enough; arithmetic throws on overflow instead of
// silently losing exactness.
struct Rational {
    uint64_t num = 0;
    uint64_t den = 1;

    Rational() = default;
    Rational(uint64_t n, uint64_t d) : num(n), den(d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        reduce();
    }
    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1, 1); }

    void reduce() {
        uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(u128(a.num) * b.den + u128(b.num) * a.den, u128(a.den) * b.den);
    }
    // Absolute difference; subtraction never goes negative in this library.
    static Rational abs_diff(const Rational& a, const Rational& b) {
        u128 lhs = u128(a.num) * b.den;
        u128 rhs = u128(b.num) * a.den;
        return from128(lhs > rhs ? lhs - rhs : rhs - lhs, u128(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(u128(a.num) * b.num, u128(a.den) * b.den);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return u128(a.num) * b.den < u128(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return u128(a.num) * b.den <= u128(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

private:
    using u128 = unsigned __int128;

    static Rational from128(u128 n, u128 d) {
        u128 g = gcd128(n, d);
        if (g != 0) {
            n /= g;
            d /= g;
        }
        if (n > UINT64_MAX || d > UINT64_MAX || d == 0)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num = static_cast<uint64_t>(n);
        r.den = static_cast<uint64_t>(d);
        return r;
    }
    static u128 gcd128(u128 a, u128 b) {
        while (b) {
            u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
};

} // namespace nmcode
