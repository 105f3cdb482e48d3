#include "isoc/structure.hpp"

#include <algorithm>
#include <cmath>

namespace isoc::structure {

namespace {

Poly dx(const Poly& p) { return differentiate(p, "x"); }
Poly dy(const Poly& p) { return differentiate(p, "y"); }

} // namespace

Bracket lieBracket(const PlanarSystem& lhs, const PlanarSystem& rhs) {
    const auto& [p, q] = lhs;
    const auto& [r, s] = rhs;
    return {dx(p) * r + dy(p) * s - dx(r) * p - dy(r) * q,
            dx(q) * r + dy(q) * s - dx(s) * p - dy(s) * q};
}

std::optional<Poly> cofactorOf(const PlanarSystem& sys, const Poly& curve) {
    if (curve.isZero()) throw std::invalid_argument("cofactorOf: zero curve");
    return divideExact(lieDerivative(sys, curve), curve);
}

Poly radialCofactorTheoremCheck(const Poly& R, const Poly& Q) {
    const PlanarSystem sys{Y() + X() * R, -X() + Y() * R};
    const PlanarSystem radial{X() * Q, Y() * Q};
    const Bracket b = lieBracket(sys, radial);
    if (!b.isZero())
        throw NotCommuting("systems do not commute; bracket (" + b.first.toString() + ", " + b.second.toString() +
                           ")");
    return X() * lieDerivative(sys, Q) - X() * (X() * dx(R) + Y() * dy(R)) * Q;
}

RationalFunction integratingFactorFromPair(const PlanarSystem& sys, const PlanarSystem& partner) {
    const Poly w = sys.p * partner.q - sys.q * partner.p;
    if (w.isZero()) throw DegeneratePair("p s - q r vanishes identically");
    const Bracket b = lieBracket(sys, partner);
    if (!b.isZero()) throw NotCommuting("systems do not commute; bracket (" + b.first.toString() + ", ...)");
    const Poly identity = (dx(sys.p) + dy(sys.q)) * w - lieDerivative(sys, w);
    if (!identity.isZero())
        throw std::logic_error("integrating factor certificate failed: " + identity.toString());
    return RationalFunction(Poly(1), w);
}

Poly certificateResidual(const PlanarSystem& sys, const AlgebraicInvariant& inv) {
    return lieDerivative(sys, inv.curve) - inv.cofactor * inv.curve;
}

Poly certificateResidual(const PlanarSystem& sys, const ExpInvariant& inv) {
    if (const auto* re = std::get_if<RationalExponent>(&inv.exponent)) {
        const Poly& n = re->exponent.numerator();
        const Poly& d = re->exponent.denominator();
        return sys.p * (dx(n) * d - n * dx(d)) + sys.q * (dy(n) * d - n * dy(d)) - inv.cofactor * d * d;
    }
    const auto& ie = std::get<IntegralExponent>(inv.exponent);
    return lieDerivative(sys, ie.u) - inv.cofactor * (ie.eMinusG + ie.u + ie.u * ie.u);
}

DarbouxVerdict verifyDarbouxIntegral(const PlanarSystem& sys, const DarbouxCandidate& cand) {
    std::vector<std::pair<Poly, RationalFunction>> weighted;
    std::size_t index = 0;
    for (const auto& [inv, lambda] : cand.algebraic) {
        ++index;
        const Poly r = certificateResidual(sys, inv);
        if (!r.isZero()) throw InvariantNotCertified("algebraic invariant #" + std::to_string(index), r);
        weighted.emplace_back(inv.cofactor, lambda);
    }
    index = 0;
    for (const auto& [inv, lambda] : cand.exponential) {
        ++index;
        const Poly r = certificateResidual(sys, inv);
        if (!r.isZero()) throw InvariantNotCertified("exponential invariant #" + std::to_string(index), r);
        weighted.emplace_back(inv.cofactor, lambda);
    }
    // sum_i num_i K_i prod_{j != i} den_j
    Poly sum;
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        Poly term = weighted[i].second.numerator() * weighted[i].first;
        for (std::size_t j = 0; j < weighted.size(); ++j)
            if (j != i) term *= weighted[j].second.denominator();
        sum += term;
    }
    return {sum.isZero(), sum};
}

double evaluateDarboux(const DarbouxCandidate& cand, double x, double y) {
    const std::map<Var, double> pt{{"x", x}, {"y", y}};
    double h = 1.0;
    for (const auto& [inv, lambda] : cand.algebraic) {
        const double c = evalDouble(inv.curve, pt);
        const double l = lambda.evalDouble(pt);
        if (l != std::round(l) && c <= 0.0) throw DomainError("non-integer power of a non-positive invariant");
        h *= std::pow(c, l);
    }
    for (const auto& [inv, lambda] : cand.exponential) {
        double e = 0.0;
        if (const auto* re = std::get_if<RationalExponent>(&inv.exponent)) {
            const double den = evalDouble(re->exponent.denominator(), pt);
            if (den == 0.0) throw DomainError("exponent denominator vanishes");
            e = evalDouble(re->exponent.numerator(), pt) / den;
        } else {
            const auto& ie = std::get<IntegralExponent>(inv.exponent);
            e = c3Exponent(evalDouble(ie.u, pt), evalDouble(ie.eMinusG, pt));
        }
        h *= std::exp(lambda.evalDouble(pt) * e);
    }
    return h;
}

Poly rationalIntegralResidual(const PlanarSystem& sys, const RationalFunction& h) {
    const Poly& n = h.numerator();
    const Poly& d = h.denominator();
    return sys.p * (dx(n) * d - n * dx(d)) + sys.q * (dy(n) * d - n * dy(d));
}

Poly reversibilityResidual(const PlanarSystem& sys, const Poly& alpha, const Poly& beta) {
    if (alpha.isZero() && beta.isZero()) throw std::invalid_argument("reflection line (0, 0) is undefined");
    const Poly a2 = alpha * alpha, b2 = beta * beta, ab = alpha * beta;
    const Poly norm = a2 + b2;
    const std::map<Var, Poly> reflect{{"x", (b2 - a2) * X() - 2 * ab * Y()},
                                      {"y", -2 * ab * X() + (a2 - b2) * Y()}};

    const auto pc = homogeneousComponents(sys.p);
    const auto qc = homogeneousComponents(sys.q);
    unsigned top = 0;
    if (!pc.empty()) top = std::max(top, pc.rbegin()->first);
    if (!qc.empty()) top = std::max(top, qc.rbegin()->first);

    // norm^top * f(x', y')
    auto reflected = [&](const std::map<unsigned, Poly>& comps) {
        Poly out;
        for (const auto& [k, fk] : comps) out += substitute(fk, reflect) * pow(norm, top - k);
        return out;
    };
    const Poly pr = reflected(pc), qr = reflected(qc);
    const Poly& p = sys.p;
    const Poly& q = sys.q;
    return 2 * ab * (p * pr - q * qr) + (b2 - a2) * (p * qr + pr * q);
}

ReversibilityVerdict reversibleModuloConstraint(const PlanarSystem& sys, const Poly& constraint, const Var& slope) {
    if (constraint.degreeIn(slope) == 0)
        throw std::invalid_argument("constraint must involve the slope symbol '" + slope + "'");
    if (sys.p.dependsOn(slope) || sys.q.dependsOn(slope))
        throw std::invalid_argument("system already uses the slope symbol '" + slope + "'");
    const Poly residual = reversibilityResidual(sys, Poly::var(slope), Poly(-1));
    const Poly rem = pseudoRemainder(residual, constraint, slope);
    return {rem.isZero(), rem};
}

Poly angularSpeedResidual(const PlanarSystem& sys) {
    return X() * sys.q - Y() * sys.p + X() * X() + Y() * Y();
}

double c3Exponent(double u, double eMinusG) {
    const double disc = 4.0 * eMinusG - 1.0;
    const double lo = std::min(0.0, u), hi = std::max(0.0, u);
    auto checkRoot = [&](double root) {
        if (root >= lo && root <= hi)
            throw DomainError("integrand e-g+t+t^2 has a pole at t=" + std::to_string(root) + " inside [0, u]");
    };
    if (std::abs(disc) < 1e-12) {
        checkRoot(-0.5);
        auto anti = [](double t) { return -2.0 / (1.0 + 2.0 * t); };
        return anti(u) - anti(0.0);
    }
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        auto anti = [s](double t) { return 2.0 / s * std::atan((1.0 + 2.0 * t) / s); };
        return anti(u) - anti(0.0);
    }
    const double s = std::sqrt(-disc);
    checkRoot((-1.0 - s) / 2.0);
    checkRoot((-1.0 + s) / 2.0);
    auto anti = [s](double t) { return std::log(std::abs((1.0 + 2.0 * t - s) / (1.0 + 2.0 * t + s))) / s; };
    return anti(u) - anti(0.0);
}

} // namespace isoc::structure
