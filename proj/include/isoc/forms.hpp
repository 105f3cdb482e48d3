#pragma once

#include "isoc/poly.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace isoc {

template <typename Scalar>
using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Binary form sum_j c(j) x^(k-j) y^j of degree k = c.size() - 1.
template <typename Scalar>
class BinaryForm {
public:
    BinaryForm() : coeffs_(Coefficients<Scalar>::Zero(1)) {}
    explicit BinaryForm(Coefficients<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() == 0) throw std::invalid_argument("binary form needs at least one coefficient");
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Coefficients<Scalar>& coefficients() const { return coeffs_; }
    Scalar coefficient(int xPower, int yPower) const {
        if (xPower + yPower != degree()) return Scalar(0);
        return coeffs_(yPower);
    }

    Scalar operator()(Scalar x, Scalar y) const {
        // Horner in t = y/x is unsafe at x = 0; sum directly.
        Scalar sum(0);
        const int k = degree();
        for (int j = 0; j <= k; ++j) sum += coeffs_(j) * std::pow(x, k - j) * std::pow(y, j);
        return sum;
    }

    Scalar onCircle(Scalar phi) const { return (*this)(std::cos(phi), std::sin(phi)); }

private:
    Coefficients<Scalar> coeffs_;
};

// Coefficient map of f -> f(x cos(phi) + y sin(phi), -x sin(phi) + y cos(phi))
// on binary forms of degree k.
template <typename Scalar>
DenseMatrix<Scalar> rotationSubstitutionMatrix(int k, Scalar phi) {
    const Scalar c = std::cos(phi), s = std::sin(phi);
    DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(k + 1, k + 1);
    auto multiplyLinear = [](const Coefficients<Scalar>& f, Scalar ax, Scalar ay) {
        Coefficients<Scalar> out = Coefficients<Scalar>::Zero(f.size() + 1);
        out.head(f.size()) += ax * f;
        out.tail(f.size()) += ay * f;
        return out;
    };
    for (int j = 0; j <= k; ++j) {
        Coefficients<Scalar> col = Coefficients<Scalar>::Ones(1);
        for (int i = 0; i < k - j; ++i) col = multiplyLinear(col, c, s);
        for (int i = 0; i < j; ++i) col = multiplyLinear(col, -s, c);
        m.col(j) = col;
    }
    return m;
}

template <typename Scalar>
BinaryForm<Scalar> rotate(const BinaryForm<Scalar>& f, Scalar phi) {
    return BinaryForm<Scalar>(rotationSubstitutionMatrix<Scalar>(f.degree(), phi) * f.coefficients());
}

// Degree-k component in x, y of a parameter-free polynomial.
inline BinaryForm<double> toBinaryForm(const Poly& p, int k) {
    Coefficients<double> c = Coefficients<double>::Zero(k + 1);
    for (const auto& [m, coeff] : p.terms()) {
        const unsigned i = m.exponent("x"), j = m.exponent("y");
        if (m.degree() != i + j) throw std::invalid_argument("toBinaryForm: polynomial has free parameters");
        if (static_cast<int>(i + j) == k) c(j) = coeff.toDouble();
    }
    return BinaryForm<double>(std::move(c));
}

} // namespace isoc
