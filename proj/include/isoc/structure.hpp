#pragma once

#include "isoc/poly.hpp"
#include "isoc/system.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace isoc::structure {

class NotCommuting : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegeneratePair : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Bracket {
    Poly first;
    Poly second;
    bool isZero() const { return first.isZero() && second.isZero(); }
};

// [X, Y] = DX * Y - DY * X for X = (p, q), Y = (r, s).
Bracket lieBracket(const PlanarSystem& lhs, const PlanarSystem& rhs);

// K with p C_x + q C_y = K C, found by exact division.
std::optional<Poly> cofactorOf(const PlanarSystem& sys, const Poly& curve);

// For p = y + xR, q = -x + yR commuting with (xQ, yQ): returns
// x (Q_x p + Q_y q) - x (x R_x + y R_y) Q, which must vanish. Throws NotCommuting.
Poly radialCofactorTheoremCheck(const Poly& R, const Poly& Q);

// 1 / (p s - q r), certified by (p_x + q_y) W = p W_x + q W_y.
RationalFunction integratingFactorFromPair(const PlanarSystem& sys, const PlanarSystem& partner);

struct AlgebraicInvariant {
    Poly curve;
    Poly cofactor;
};

// exp(G) with G rational.
struct RationalExponent {
    RationalFunction exponent;
};

// exp(integral_0^u dt / (eMinusG + t + t^2)).
struct IntegralExponent {
    Poly u;
    Poly eMinusG;
};

struct ExpInvariant {
    std::variant<RationalExponent, IntegralExponent> exponent;
    Poly cofactor;
};

// Product of invariants raised to exponents; a first integral when the
// exponent-weighted cofactors sum to zero.
struct DarbouxCandidate {
    std::vector<std::pair<AlgebraicInvariant, RationalFunction>> algebraic;
    std::vector<std::pair<ExpInvariant, RationalFunction>> exponential;
};

// Cleared invariance residuals; zero iff the stated cofactor is correct.
Poly certificateResidual(const PlanarSystem& sys, const AlgebraicInvariant& inv);
Poly certificateResidual(const PlanarSystem& sys, const ExpInvariant& inv);

class InvariantNotCertified : public std::invalid_argument {
public:
    InvariantNotCertified(std::string which, Poly residual)
        : std::invalid_argument(which + " fails its cofactor certificate; residual " + residual.toString()),
          which(std::move(which)), residual(std::move(residual)) {}
    std::string which;
    Poly residual;
};

struct DarbouxVerdict {
    bool certified;
    Poly residual;  // cleared sum of lambda_i K_i
};

DarbouxVerdict verifyDarbouxIntegral(const PlanarSystem& sys, const DarbouxCandidate& cand);

// Numeric value of the Darboux product at (x, y). All symbols must be bound.
double evaluateDarboux(const DarbouxCandidate& cand, double x, double y);

// dH/dt for H = num/den, cleared of the denominator:
// p (N_x D - N D_x) + q (N_y D - N D_y).
Poly rationalIntegralResidual(const PlanarSystem& sys, const RationalFunction& h);

// 2ab (p p' - q q') + (b^2 - a^2)(p q' + p' q) with (x', y') the reflection of
// (x, y) across a x + b y = 0, multiplied through by (a^2 + b^2)^deg.
Poly reversibilityResidual(const PlanarSystem& sys, const Poly& alpha, const Poly& beta);

struct ReversibilityVerdict {
    bool reversible;
    Poly witness;  // remainder; zero when reversible
};

// Reversibility about the lines y = s x whose slope satisfies constraint(s) = 0,
// decided by pseudo-remainder in s.
ReversibilityVerdict reversibleModuloConstraint(const PlanarSystem& sys, const Poly& constraint,
                                                const Var& slope = "s");

// x q - y p + x^2 + y^2; zero iff the system is x' = y + xR, y' = -x + yR.
Poly angularSpeedResidual(const PlanarSystem& sys);

// integral_0^u dt / (eMinusG + t + t^2) via the closed-form antiderivatives.
double c3Exponent(double u, double eMinusG);

} // namespace isoc::structure
