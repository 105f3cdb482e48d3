#pragma once

#include "isoc/poly.hpp"

#include <random>
#include <vector>

namespace testing {

using isoc::Poly;
using isoc::Rational;

// Deterministic source of small random rationals and polynomials.
class Sampler {
public:
    explicit Sampler(unsigned seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Rational rational(long span = 9, long maxDen = 6) { return Rational(integer(-span, span), integer(1, maxDen)); }

    // Rational in [lo, hi] with denominator at most maxDen.
    Rational rationalIn(long lo, long hi, long maxDen = 4) {
        const long den = integer(1, maxDen);
        return Rational(integer(lo * den, hi * den), den);
    }

    Rational nonzeroRational(long span = 9, long maxDen = 6) {
        for (;;) {
            Rational r = rational(span, maxDen);
            if (!r.isZero()) return r;
        }
    }

    Poly poly(const std::vector<isoc::Var>& vars, int terms = 5, unsigned maxExp = 3) {
        Poly p;
        for (int t = 0; t < terms; ++t) {
            Poly m = rational();
            for (const auto& v : vars) m *= isoc::pow(Poly::var(v), static_cast<unsigned>(integer(0, maxExp)));
            p += m;
        }
        return p;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

} // namespace testing

#include "isoc/quintic.hpp"

namespace testing {

// Printed constants of the quintic family, transcribed by hand.
inline const char* const kPrintedD[4] = {
    "2*(a + c)",
    "-4*a*b - 4*b*c + 3*d + f + 3*h",
    "2*(-85*a^3 + 15*a*b^2 - 67*a^2*c + 15*b^2*c + 61*a*c^2 + 43*c^3 - 24*b*d - 34*a*e"
    " - 22*c*e - 12*b*f - 50*a*g - 38*c*g - 48*b*h)",
    "44600*a^3*b + 2736*a*b^3 + 84696*a^2*b*c + 2736*b^3*c + 47688*a*b*c^2 + 7592*b*c^3"
    " - 37120*a^2*d - 1782*b^2*d - 32552*a*c*d - 2704*c^2*d + 2364*a*b*e + 1284*b*c*e"
    " - 2673*d*e - 6120*a^2*f - 234*b^2*f - 3384*a*c*f + 792*c^2*f - 891*e*f"
    " + 6876*a*b*g + 5076*b*c*g - 3807*d*g - 1269*f*g + 4720*a^2*h + 1098*b^2*h"
    " + 31448*a*c*h + 19456*c^2*h - 2673*e*h - 3807*g*h",
};

inline std::map<isoc::Var, Rational> toPoint(const std::array<Rational, 8>& v) {
    std::map<isoc::Var, Rational> pt;
    for (int i = 0; i < 8; ++i) pt[isoc::quintic::kParamNames[i]] = v[i];
    return pt;
}

// Random point on the variety of the four reduced relations, solved by hand:
// c = -a, f = -3(d + h), and for a != 0
//   a g + b h = b d - a e,  a b g + (b^2 - 2 a^2) h = 2 a^2 d.
inline std::array<Rational, 8> relationPoint(Sampler& s) {
    const long branch = s.integer(0, 5);
    Rational a = s.rational(), b = s.rational(), d = s.rational(), e = s.rational(), g = s.rational(),
             h = s.rational();
    if (branch == 0) {
        a = b = 0;
    } else if (branch == 1) {
        a = d = h = 0;
    } else {
        if (a.isZero()) a = 1;
        const Rational r1 = b * d - a * e, r2 = Rational(2) * a * a * d;
        const Rational det = Rational(-2) * a * a * a;
        g = (r1 * (b * b - Rational(2) * a * a) - b * r2) / det;
        h = (a * r2 - a * b * r1) / det;
    }
    return {a, b, -a, d, e, Rational(-3) * (d + h), g, h};
}

inline std::array<Poly, 4> printedRelations(const std::array<Rational, 8>& v) {
    const Rational &a = v[0], &b = v[1], &c = v[2], &d = v[3], &e = v[4], &f = v[5], &g = v[6], &h = v[7];
    return {a + c, Rational(3) * d + f + Rational(3) * h,
            Rational(3) * c * e - b * f + Rational(3) * c * g - Rational(6) * b * h,
            Rational(2) * c * c * f - Rational(3) * b * c * g + Rational(3) * b * b * h};
}

} // namespace testing
