#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace isoc {

// Exact rational number in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}
    Rational(int v) : value_(v) {}
    Rational(long num, long den);
    explicit Rational(const mpz_class& num, const mpz_class& den = 1);
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    // Exact binary value of a finite double.
    static Rational fromDouble(double v);
    // Accepts "[+-]uint[/uint]"; throws std::invalid_argument otherwise.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool isZero() const { return sgn(value_) == 0; }
    bool isInteger() const { return value_.get_den() == 1; }
    double toDouble() const { return value_.get_d(); }
    std::string toString() const { return value_.get_str(); }

    Rational abs() const { return Rational(::abs(value_)); }
    Rational inverse() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.toString(); }

private:
    mpq_class value_{0};
};

Rational pow(const Rational& base, unsigned exponent);
mpz_class lcm(const mpz_class& a, const mpz_class& b);

} // namespace isoc

namespace Eigen {

template <>
struct NumTraits<isoc::Rational> : GenericNumTraits<isoc::Rational> {
    using Real = isoc::Rational;
    using NonInteger = isoc::Rational;
    using Literal = isoc::Rational;
    using Nested = isoc::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 40,
        MulCost = 80
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace isoc {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

} // namespace isoc
