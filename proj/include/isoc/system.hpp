#pragma once

#include "isoc/poly.hpp"

#include <string>

namespace isoc {

// Planar polynomial vector field x' = p(x, y), y' = q(x, y). Coefficients may
// depend on parameter symbols.
struct PlanarSystem {
    Poly p;
    Poly q;

    friend bool operator==(const PlanarSystem&, const PlanarSystem&) = default;
};

inline const Poly& X() {
    static const Poly x = Poly::var("x");
    return x;
}

inline const Poly& Y() {
    static const Poly y = Poly::var("y");
    return y;
}

inline PlanarSystem substitute(const PlanarSystem& s, const std::map<Var, Poly>& bindings) {
    return {substitute(s.p, bindings), substitute(s.q, bindings)};
}

inline PlanarSystem scaled(const PlanarSystem& s, const Poly& factor) {
    return {s.p * factor, s.q * factor};
}

// Derivative of f along the field: p f_x + q f_y.
inline Poly lieDerivative(const PlanarSystem& s, const Poly& f) {
    return s.p * differentiate(f, "x") + s.q * differentiate(f, "y");
}

} // namespace isoc
