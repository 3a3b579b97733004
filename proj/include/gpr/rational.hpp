#pragma once
// rational.hpp - Minimal exact rational on top of Int.
//
// Only what guard evaluation needs: construction, +, *, /, comparison.
// Denominators stay positive; no gcd reduction (operands here are tiny).

#include <cmath>

#include "gpr/bigint.hpp"

namespace gpr {

struct Rational {
    Int num;
    Int den = 1;

    Rational() = default;
    Rational(Int n) : num(std::move(n)) {} // NOLINT: implicit by design
    Rational(Int n, Int d) : num(std::move(n)), den(std::move(d)) {
        if (den.isZero()) throw BadArgument("Rational: zero denominator");
        if (den.isNegative()) {
            num = -num;
            den = -den;
        }
        // denominators here are powers of two in practice; cancelling common
        // factors of two keeps repeated sums from ballooning
        if (!num.isZero()) {
            std::uint64_t k = std::min(num.trailingZeroBits(), den.trailingZeroBits());
            if (k > 0) {
                num = num.shiftedRightTruncate(k);
                den = den.shiftedRightTruncate(k);
            }
        }
    }

    static Rational pow2(std::int64_t e) {
        if (e >= 0) return Rational(Int::pow2(static_cast<std::uint64_t>(e)));
        return Rational(Int(1), Int::pow2(static_cast<std::uint64_t>(-e)));
    }

    bool isZero() const { return num.isZero(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num.isZero()) throw BadArgument("Rational: division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num * b.den <=> b.num * a.den;
    }

    Rational abs() const { return Rational(num.abs(), den); }

    double toDouble() const { return num.toDouble() / den.toDouble(); }
};

// Exact conversion: every finite double is a dyadic rational m * 2^(e-53).
inline Rational doubleToRational(double x) {
    if (x == 0.0) return Rational(Int(0));
    int exp = 0;
    double m = std::frexp(x, &exp);
    auto mi = static_cast<std::int64_t>(std::ldexp(m, 53)); // integral by construction
    return Rational(Int(mi)) * Rational::pow2(exp - 53);
}

} // namespace gpr
