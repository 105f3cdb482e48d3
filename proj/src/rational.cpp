#include "isoc/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace isoc {

Rational::Rational(long num, long den) : value_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : value_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_.canonicalize();
}

Rational Rational::fromDouble(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite double has no rational value");
    return Rational(mpq_class(v));
}

Rational Rational::parse(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    auto digits = [&](std::string& out) {
        const std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        out.assign(text.substr(start, i - start));
        return !out.empty();
    };
    std::string num, den = "1";
    if (!digits(num)) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    if (i < text.size() && text[i] == '/') {
        ++i;
        if (!digits(den)) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    if (i != text.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    if (negative) n = -n;
    return Rational(n, d);
}

Rational Rational::inverse() const {
    if (isZero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1 / value_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.isZero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
}

Rational pow(const Rational& base, unsigned exponent) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
    return Rational(n, d);
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace isoc
