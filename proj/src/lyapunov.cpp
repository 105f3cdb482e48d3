#include "isoc/lyapunov.hpp"

#include "isoc/linsolve.hpp"

namespace isoc::lyapunov {

namespace {

Poly xyMonomial(unsigned i, unsigned j) {
    return Poly(Monomial({{"x", i}, {"y", j}}));
}

Poly formFromCoefficients(unsigned n, std::span<const Poly> c) {
    Poly f;
    for (unsigned j = 0; j <= n; ++j) f += c[j] * xyMonomial(n - j, j);
    return f;
}

struct Components {
    std::map<unsigned, Poly> p, q;

    const Poly& pAt(unsigned k) const { return at(p, k); }
    const Poly& qAt(unsigned k) const { return at(q, k); }

private:
    static const Poly& at(const std::map<unsigned, Poly>& m, unsigned k) {
        static const Poly zero;
        const auto it = m.find(k);
        return it == m.end() ? zero : it->second;
    }
};

// Sum over 2 <= i <= last of f_i,x p_(n+1-i) + f_i,y q_(n+1-i).
Poly partialDerivative(const Components& comps, const std::map<unsigned, Poly>& f, unsigned n, unsigned last) {
    Poly sum;
    for (unsigned i = 2; i <= last; ++i) {
        const auto it = f.find(i);
        if (it == f.end() || it->second.isZero()) continue;
        const Poly& pk = comps.pAt(n + 1 - i);
        const Poly& qk = comps.qAt(n + 1 - i);
        if (!pk.isZero()) sum += differentiate(it->second, "x") * pk;
        if (!qk.isZero()) sum += differentiate(it->second, "y") * qk;
    }
    return sum;
}

Components split(const PlanarSystem& sys) {
    return {homogeneousComponents(sys.p), homogeneousComponents(sys.q)};
}

std::map<unsigned, Poly> withQuadratic(std::map<unsigned, Poly> f) {
    f[2] = (X() * X() + Y() * Y()) / Rational(2);
    return f;
}

} // namespace

RationalMatrix rotationOperatorMatrix(unsigned k) {
    if (k == 0) throw std::invalid_argument("rotationOperatorMatrix needs k >= 1");
    const Eigen::Index n = k + 1;
    RationalMatrix m = RationalMatrix::Zero(n, n);
    // L(x^(k-j) y^j) = (k-j) x^(k-j-1) y^(j+1) - j x^(k-j+1) y^(j-1)
    for (unsigned j = 0; j <= k; ++j) {
        if (j < k) m(j + 1, j) = Rational(static_cast<long>(k - j));
        if (j > 0) m(j - 1, j) = Rational(-static_cast<long>(j));
    }
    return m;
}

RationalMatrix stageMatrix(unsigned n) {
    if (n % 2 == 1) return rotationOperatorMatrix(n);
    const Eigen::Index size = n + 2;
    RationalMatrix m = RationalMatrix::Zero(size, size);
    m.topLeftCorner(n + 1, n + 1) = rotationOperatorMatrix(n);
    m(0, n + 1) = -1;
    m(n, n + 1) = -1;
    m(n + 1, n) = 1;
    return m;
}

void checkLinearCenter(const PlanarSystem& sys) {
    const auto pc = homogeneousComponents(sys.p);
    const auto qc = homogeneousComponents(sys.q);
    if (pc.count(0) || qc.count(0)) throw InvalidSystem("system has a constant term; origin is not singular");
    const auto p1 = pc.count(1) ? pc.at(1) : Poly();
    const auto q1 = qc.count(1) ? qc.at(1) : Poly();
    if (!(p1 == Y()) || !(q1 == -X()))
        throw InvalidSystem("linear part must be (y, -x); got (" + p1.toString() + ", " + q1.toString() + ")");
}

ComparisonState comparisonFunction(const PlanarSystem& sys, int m, int cap) {
    if (m < 1) throw std::invalid_argument("number of constants must be positive");
    if (m > cap) throw CapExceeded("requested " + std::to_string(m) + " constants; cap is " + std::to_string(cap));
    checkLinearCenter(sys);
    const Components comps = split(sys);

    std::map<unsigned, Poly> f = withQuadratic({});
    ComparisonState state;
    for (unsigned k = 3; k <= static_cast<unsigned>(2 * m + 1); k += 2) {
        for (unsigned n : {k, k + 1}) {
            const Poly known = partialDerivative(comps, f, n, n - 1);
            std::vector<Poly> rhs;
            rhs.reserve(n + 2);
            for (unsigned j = 0; j <= n; ++j) rhs.push_back(-coefficientXY(known, n - j, j));
            if (n % 2 == 0) rhs.emplace_back();

            std::vector<Poly> sol;
            try {
                sol = solveLinearExact(stageMatrix(n), rhs);
            } catch (const SingularMatrix& e) {
                throw std::logic_error(std::string("comparison-function stage is singular: ") + e.what());
            }
            f[n] = formFromCoefficients(n, sol);
            if (n % 2 == 0) state.constants.push_back(sol[n + 1]);
        }
    }
    f.erase(2);
    state.fComponents = std::move(f);
    return state;
}

Poly derivativeComponent(const PlanarSystem& sys, const std::map<unsigned, Poly>& fComponents, unsigned n) {
    const Components comps = split(sys);
    return partialDerivative(comps, withQuadratic(fComponents), n, n);
}

LyapunovReport plConstants(const PlanarSystem& sys, int m, int cap) {
    ComparisonState state = comparisonFunction(sys, m, cap);
    LyapunovReport report;
    report.raw = state.constants;
    bool numeric = true;
    for (const Poly& d : report.raw) {
        report.constants.push_back(primitivePart(d));
        numeric = numeric && d.isConstant();
    }
    if (numeric) {
        for (std::size_t i = 0; i < report.raw.size(); ++i) {
            const Rational v = report.raw[i].constantValue();
            if (v.isZero()) continue;
            report.firstNonzeroIndex = static_cast<int>(i + 1);
            report.sign = v.sign() > 0 ? Sign::Positive : Sign::Negative;
            break;
        }
    }
    return report;
}

std::optional<FocusOrder> firstNonzero(const LyapunovReport& report, const std::map<Var, Rational>& bindings) {
    for (std::size_t i = 0; i < report.raw.size(); ++i) {
        const Rational v = evalRational(report.raw[i], bindings);
        if (v.isZero()) continue;
        return FocusOrder{static_cast<int>(i + 1), v.sign() > 0 ? Sign::Positive : Sign::Negative};
    }
    return std::nullopt;
}

} // namespace isoc::lyapunov
