#pragma once
// master_theorem.hpp - Case analysis for recurrences T(n) = sum T(alpha_i n) + M(n)
// with quadratic-bit-cost non-recursive work (d = 2).

#include <cmath>
#include <vector>

#include "gpr/errors.hpp"

namespace gpr {

struct RecurrenceDescriptor {
    std::vector<double> alphas; // each in (0,1)
    int c = 1;                  // polylog exponent of the kernel cost
};

struct Type2Classification {
    int caseId = 1;          // 1: root-dominated, 2: balanced, 3: leaf-dominated
    double exponent = 2.0;   // 2, 2, or gamma with sum alpha_i^gamma = 1
    int extraLogPower = 0;   // 1 in the balanced case
    double alphaSquareSum = 0.0;
};

inline Type2Classification classifyType2(const RecurrenceDescriptor& r) {
    for (double a : r.alphas)
        if (!(a > 0.0 && a < 1.0))
            throw BadArgument("classifyType2: every alpha must lie in (0,1)");
    Type2Classification out;
    double s2 = 0.0;
    for (double a : r.alphas) s2 += a * a;
    out.alphaSquareSum = s2;

    constexpr double kEqBand = 1e-12;
    if (std::fabs(s2 - 1.0) <= kEqBand) {
        out.caseId = 2;
        out.exponent = 2.0;
        out.extraLogPower = 1;
        return out;
    }
    if (s2 < 1.0) {
        out.caseId = 1;
        out.exponent = 2.0;
        return out;
    }

    // leaf-dominated: solve sum alpha_i^gamma = 1 by bisection; the sum is
    // strictly decreasing in gamma, with value > 1 at gamma = 2
    auto f = [&](double gamma) {
        double s = 0.0;
        for (double a : r.alphas) s += std::pow(a, gamma);
        return s;
    };
    double lo = 2.0, hi = 4.0;
    while (f(hi) > 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw BadArgument("classifyType2: exponent out of range");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    out.caseId = 3;
    out.exponent = 0.5 * (lo + hi);
    return out;
}

} // namespace gpr
