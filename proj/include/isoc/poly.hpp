#pragma once

#include "isoc/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isoc {

using Var = std::string;

// Rank of a variable in the fixed order x, y, a, b, ..., h; other names follow
// alphabetically.
int variableRank(const Var& v);
bool variableLess(const Var& a, const Var& b);

// Power product. Factors are sorted by variableLess and never carry a zero exponent.
class Monomial {
public:
    using Factor = std::pair<Var, unsigned>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial of(const Var& v, unsigned exponent = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    unsigned degree() const { return degree_; }
    unsigned exponent(const Var& v) const;
    bool isOne() const { return factors_.empty(); }

    // Total degree counting only the given variables.
    unsigned degreeIn(const std::set<Var>& vars) const;
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    // Requires b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

    Monomial without(const Var& v) const;
    std::string toString() const;

private:
    std::vector<Factor> factors_;
    unsigned degree_ = 0;
};

// Graded lexicographic order, x most significant; a Poly iterates from the leading
// monomial down.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class UnboundVariable : public std::invalid_argument {
public:
    explicit UnboundVariable(const Var& v)
        : std::invalid_argument("unbound variable: " + v), variable(v) {}
    Var variable;
};

// Sparse multivariate polynomial with exact rational coefficients.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    Poly() = default;
    Poly(const Rational& c);
    Poly(long c) : Poly(Rational(c)) {}
    Poly(int c) : Poly(Rational(c)) {}
    Poly(const Monomial& m, const Rational& c = 1);

    static Poly var(const Var& v) { return Poly(Monomial::of(v)); }

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    // Value of a constant polynomial; throws std::logic_error otherwise.
    Rational constantValue() const;
    Rational coefficient(const Monomial& m) const;
    const Monomial& leadingMonomial() const;
    const Rational& leadingCoefficient() const;

    unsigned degree() const;
    unsigned degreeIn(const Var& v) const;
    std::set<Var> variables() const;
    bool dependsOn(const Var& v) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);
    // Adds c*m in place.
    void addTerm(const Monomial& m, const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(Poly a, int c) { return a *= Rational(c); }
    friend Poly operator*(int c, Poly a) { return a *= Rational(c); }
    friend Poly operator/(Poly a, const Rational& c) { return a *= c.inverse(); }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    std::string toString() const;
    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.toString(); }

private:
    TermMap terms_;
};

Poly pow(const Poly& p, unsigned exponent);

Poly differentiate(const Poly& p, const Var& v);

// Simultaneous substitution; unbound variables are kept.
Poly substitute(const Poly& p, const std::map<Var, Poly>& bindings);

Rational evalRational(const Poly& p, const std::map<Var, Rational>& point);
double evalDouble(const Poly& p, const std::map<Var, double>& point);

// Components by total degree in `vars`; other symbols count as degree 0.
std::map<unsigned, Poly> homogeneousComponents(const Poly& p, const std::set<Var>& vars = {"x", "y"});

// Coefficient of x^i y^j as a polynomial in the remaining symbols.
Poly coefficientXY(const Poly& p, unsigned i, unsigned j);
// Coefficients of p viewed as a univariate polynomial in v, index = power.
std::vector<Poly> coefficientsIn(const Poly& p, const Var& v);

// c*p with c > 0 chosen so that the coefficients are coprime integers.
Poly primitivePart(const Poly& p);
// p scaled by the positive lcm of its coefficient denominators.
Poly clearDenominators(const Poly& p);

// Quotient if den divides num exactly in Q[vars].
std::optional<Poly> divideExact(const Poly& num, const Poly& den);

// lc(divisor)^k * p mod divisor, treating both as univariate in v.
Poly pseudoRemainder(const Poly& p, const Poly& divisor, const Var& v);

// Cancels v^i * inv^j pairs, i.e. reduces modulo v*inv - 1.
Poly reduceInversePair(const Poly& p, const Var& v, const Var& inv);

class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(Poly num) : num_(std::move(num)), den_(1) {}
    RationalFunction(Poly num, Poly den);

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    double evalDouble(const std::map<Var, double>& point) const;
    std::string toString() const;

private:
    Poly num_;
    Poly den_;
};

} // namespace isoc
