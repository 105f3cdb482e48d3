#pragma once

#include "isoc/lyapunov.hpp"
#include "isoc/poly.hpp"
#include "isoc/structure.hpp"
#include "isoc/system.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

// The O-symmetric uniformly isochronous quintic family
//   x' = y + x P(x, y),  y' = -x + y P(x, y),
//   P = a x^2 + b x y + c y^2 + d x^4 + e x^3 y + f x^2 y^2 + g x y^3 + h y^4.
namespace isoc::quintic {

inline constexpr std::array<const char*, 8> kParamNames{"a", "b", "c", "d", "e", "f", "g", "h"};

// Symbol standing for 1/a in the symbolic third center case.
inline const Var kInverseA = "ai";

struct QuinticParams {
    std::array<Poly, 8> values;

    static QuinticParams symbolic();
    static QuinticParams numeric(const std::array<Rational, 8>& v);

    Poly& operator[](char name);
    const Poly& operator[](char name) const;

    bool isNumeric() const;
    // Throws std::invalid_argument if any entry is symbolic.
    std::array<Rational, 8> rationals() const;
    std::map<Var, Poly> bindings() const;
    std::string toString() const;
};

// The quartic-plus-quadratic factor P.
Poly radialFactor(const QuinticParams& params);
PlanarSystem buildSystem(const QuinticParams& params);

// a + c, 3d + f + 3h, 3ce - bf + 3cg - 6bh, 2c^2 f - 3bcg + 3b^2 h.
std::array<Poly, 4> reducedConditions(const QuinticParams& params);

enum class CaseTag { I, II, III };

std::string caseName(CaseTag tag);

struct CenterCase {
    CaseTag tag;
    std::optional<std::array<Rational, 3>> witness;  // (f, g, h) for CaseIII
};

// f, g, h forced by the third center case; a != 0.
std::array<Rational, 3> caseIIIfgh(const Rational& a, const Rational& b, const Rational& d, const Rational& e);

// Symbolic parameter sets of the three center cases. The third uses kInverseA;
// apply reduceInversePair(p, "a", kInverseA) after expanding.
QuinticParams caseIParams();
QuinticParams caseIIParams();
QuinticParams caseIIIParams();

// The third-case system multiplied by 2a^3 (a time rescaling), polynomial in
// a, b, d, e. gShift is added to g before scaling.
PlanarSystem scaledCaseIIISystem(const Poly& gShift = Poly());

// First matching case in the order (i), (ii), (iii).
std::optional<CenterCase> theoremCase(const QuinticParams& params);

struct Center {
    CenterCase center;
};
struct Focus {
    lyapunov::FocusOrder order;
};
struct Undetermined {
    int constantsChecked;
};
using Classification = std::variant<Center, Focus, Undetermined>;

Classification classify(const QuinticParams& params, int m = 4);

class NoSymbolicPartner : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CaseMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws CaseMismatch if params do not have the shape of the case.
void checkCaseShape(const QuinticParams& params, CaseTag tag);

PlanarSystem commutingPartner(const QuinticParams& params, CaseTag tag);

// Rescaling of the second case to b = 1. Original coordinates are recovered as
// (x, y) = scale * (X, Y), or scale * (Y, X) when swapped; time runs backwards
// when timeReversed.
struct BNormalization {
    QuinticParams params;
    bool swapped = false;
    bool timeReversed = false;
    Rational scaleSquared{1};            // 1 / |b|
    std::optional<Rational> exactScale;  // sqrt(1/|b|) when rational
    double scale = 1.0;
};

BNormalization normalizeB(const QuinticParams& params);

struct RotationData {
    double phi = 0.0;
    double b1 = 0.0, e1 = 0.0, g1 = 0.0;
    double residual = 0.0;
    std::array<double, 8> rotated{};  // a..h of the rotated system
};

RotationData rotateToCanonical(const QuinticParams& params);

enum class IntegralKind { RationalH, DarbouxWithExp, NumericOnly };

struct FirstIntegralSpec {
    IntegralKind kind;
    PlanarSystem system;  // the system integrated (after b-normalization)
    std::optional<BNormalization> normalization;
    std::variant<RationalFunction, structure::DarbouxCandidate, RotationData> payload;
};

// Certified before return (exact dH/dt or cofactor-sum check).
FirstIntegralSpec firstIntegral(const QuinticParams& params, CaseTag tag);

// Numeric value of a RationalH or DarbouxWithExp integral in its own coordinates.
double evaluateIntegral(const FirstIntegralSpec& spec, double x, double y);

// Integral of the canonical (b1, e1, g1) system reached by the rotation.
FirstIntegralSpec canonicalIntegral(const RotationData& rotation);

// Evaluates a first integral in the coordinates of the original parameters:
// undoes b-normalization, and for NumericOnly rotates to the canonical form and
// uses its integral.
class IntegralEvaluator {
public:
    explicit IntegralEvaluator(FirstIntegralSpec spec);
    double operator()(double x, double y) const;

private:
    FirstIntegralSpec spec_;
    std::optional<FirstIntegralSpec> canonical_;
    double cosPhi_ = 1.0, sinPhi_ = 0.0;
};

} // namespace isoc::quintic
