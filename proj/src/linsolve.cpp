#include "isoc/linsolve.hpp"

namespace isoc {

namespace {

std::string describe(const RationalVector& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v(i).toString();
    }
    return s + ")";
}

// Kernel vector of a matrix already known to be rank deficient.
RationalVector nullVectorOf(RationalMatrix a) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<Eigen::Index> pivotCol;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && a(p, c).isZero()) ++p;
        if (p == rows) continue;
        a.row(p).swap(a.row(r));
        const Rational inv = a(r, c).inverse();
        for (Eigen::Index k = 0; k < cols; ++k) a(r, k) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c).isZero()) continue;
            const Rational f = a(i, c);
            for (Eigen::Index k = 0; k < cols; ++k) a(i, k) -= f * a(r, k);
        }
        pivotCol.push_back(c);
        ++r;
    }
    Eigen::Index freeCol = 0;
    for (Eigen::Index c = 0, next = 0; c < cols; ++c) {
        if (next < static_cast<Eigen::Index>(pivotCol.size()) && pivotCol[next] == c) {
            ++next;
            continue;
        }
        freeCol = c;
        break;
    }
    RationalVector v = RationalVector::Constant(cols, Rational(0));
    v(freeCol) = 1;
    for (std::size_t i = 0; i < pivotCol.size(); ++i) v(pivotCol[i]) = -a(static_cast<Eigen::Index>(i), freeCol);
    return v;
}

} // namespace

SingularMatrix::SingularMatrix(RationalVector v)
    : std::runtime_error("singular matrix; null vector " + describe(v)), nullVector(std::move(v)) {}

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const Eigen::Index n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (p < n && a(p, c).isZero()) ++p;
        if (p == n) throw SingularMatrix(nullVectorOf(m));
        a.row(p).swap(a.row(c));
        inv.row(p).swap(inv.row(c));
        const Rational s = a(c, c).inverse();
        a.row(c) *= s;
        inv.row(c) *= s;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == c || a(i, c).isZero()) continue;
            const Rational f = a(i, c);
            a.row(i) -= f * a.row(c);
            inv.row(i) -= f * inv.row(c);
        }
    }
    return inv;
}

std::vector<Poly> multiply(const RationalMatrix& m, std::span<const Poly> v) {
    if (static_cast<std::size_t>(m.cols()) != v.size()) throw std::invalid_argument("dimension mismatch");
    std::vector<Poly> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).isZero()) out[i] += m(i, j) * v[j];
    return out;
}

std::vector<Poly> solveLinearExact(const RationalMatrix& m, std::span<const Poly> rhs) {
    if (m.rows() != m.cols()) throw std::invalid_argument("solveLinearExact needs a square matrix");
    return multiply(inverse(m), rhs);
}

} // namespace isoc
