#include "isoc/parser.hpp"

#include <cctype>

namespace isoc {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Poly parse() {
        Poly p = expr();
        skipSpace();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool peekIs(auto pred) {
        skipSpace();
        return pos_ < text_.size() && pred(static_cast<unsigned char>(text_[pos_]));
    }

    mpz_class uint() {
        skipSpace();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected unsigned integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Poly expr() {
        Poly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = factor();
        while (accept('*')) acc *= factor();
        return acc;
    }

    Poly factor() {
        skipSpace();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (accept('-')) return -factor();
        if (accept('(')) {
            Poly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (peekIs([](unsigned char c) { return std::isdigit(c); })) {
            const mpz_class num = uint();
            mpz_class den = 1;
            if (accept('/')) {
                const std::size_t at = pos_;
                den = uint();
                if (den == 0) throw ParseError("zero denominator", at);
            }
            return Poly(Rational(num, den));
        }
        if (peekIs([](unsigned char c) { return std::isalpha(c); })) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const Var name(text_.substr(start, pos_ - start));
            unsigned exponent = 1;
            if (accept('^')) {
                skipSpace();
                if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
                const mpz_class e = uint();
                if (!e.fits_uint_p()) fail("exponent too large");
                exponent = static_cast<unsigned>(e.get_ui());
            }
            return Poly(Monomial::of(name, exponent));
        }
        fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Poly parseExpr(std::string_view text) {
    return Parser(text).parse();
}

} // namespace isoc
