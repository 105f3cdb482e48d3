#pragma once

#include "isoc/poly.hpp"
#include "isoc/rational.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace isoc {

class SingularMatrix : public std::runtime_error {
public:
    explicit SingularMatrix(RationalVector nullVector);
    RationalVector nullVector;
};

// Exact inverse by Gauss-Jordan elimination; throws SingularMatrix with a
// nonzero kernel vector when M is singular.
RationalMatrix inverse(const RationalMatrix& m);

// Solves M * sol = rhs where M is numeric and the right-hand side carries
// polynomial entries.
std::vector<Poly> solveLinearExact(const RationalMatrix& m, std::span<const Poly> rhs);

// M * v for polynomial vectors.
std::vector<Poly> multiply(const RationalMatrix& m, std::span<const Poly> v);

} // namespace isoc
