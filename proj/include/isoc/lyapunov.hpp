#pragma once

#include "isoc/poly.hpp"
#include "isoc/rational.hpp"
#include "isoc/system.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace isoc::lyapunov {

inline constexpr int kDefaultCap = 6;

class InvalidSystem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CapExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Matrix of L(f) = y f_x - x f_y on the basis x^k, x^(k-1) y, ..., y^k.
RationalMatrix rotationOperatorMatrix(unsigned k);

// Matrix solved at the stage of degree n. Odd n: L on degree n. Even n: L on
// degree n augmented with the constant D (coefficients of x^n and y^n) and the
// normalization coefficient(y^n) = 0; unknowns ordered (c_0, ..., c_n, D).
RationalMatrix stageMatrix(unsigned n);

// Comparison function F = (x^2 + y^2)/2 + f_3 + f_4 + ... with
// F' = D_1 (x^4 + y^4) + D_2 (x^6 + y^6) + ...
struct ComparisonState {
    std::map<unsigned, Poly> fComponents;  // degree k >= 3
    std::vector<Poly> constants;           // D_1, D_2, ... exactly as solved
};

// Throws InvalidSystem unless the linear part is (y, -x) with no constant terms.
void checkLinearCenter(const PlanarSystem& sys);

ComparisonState comparisonFunction(const PlanarSystem& sys, int m, int cap = kDefaultCap);

// Degree-n component of F' for the given f components (f_2 implied).
Poly derivativeComponent(const PlanarSystem& sys, const std::map<unsigned, Poly>& fComponents, unsigned n);

enum class Sign { Positive, Negative };

inline char signChar(Sign s) { return s == Sign::Positive ? '+' : '-'; }

struct LyapunovReport {
    // Integer-primitive, scaled by a positive factor so the sign of each
    // constant (and hence focus stability) is preserved.
    std::vector<Poly> constants;
    std::vector<Poly> raw;
    std::optional<int> firstNonzeroIndex;  // 1-based; set when parameter-free
    std::optional<Sign> sign;
};

LyapunovReport plConstants(const PlanarSystem& sys, int m, int cap = kDefaultCap);

struct FocusOrder {
    int index;  // 1-based
    Sign sign;
    friend bool operator==(const FocusOrder&, const FocusOrder&) = default;
};

// First constant with nonzero value at the bindings. Throws UnboundVariable if a
// parameter is left free.
std::optional<FocusOrder> firstNonzero(const LyapunovReport& report, const std::map<Var, Rational>& bindings);

} // namespace isoc::lyapunov
