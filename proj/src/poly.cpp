#include "isoc/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isoc {

int variableRank(const Var& v) {
    static constexpr std::string_view order = "xyabcdefgh";
    if (v.size() == 1) {
        const auto pos = order.find(v[0]);
        if (pos != std::string_view::npos) return static_cast<int>(pos);
    }
    return static_cast<int>(order.size());
}

bool variableLess(const Var& a, const Var& b) {
    const int ra = variableRank(a), rb = variableRank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& l, const Factor& r) { return variableLess(l.first, r.first); });
    for (auto& f : factors) {
        if (f.second == 0) continue;
        if (!factors_.empty() && factors_.back().first == f.first) {
            factors_.back().second += f.second;
        } else {
            factors_.push_back(std::move(f));
        }
        degree_ += f.second;
    }
}

Monomial Monomial::of(const Var& v, unsigned exponent) {
    return Monomial({{v, exponent}});
}

unsigned Monomial::exponent(const Var& v) const {
    for (const auto& [name, e] : factors_)
        if (name == v) return e;
    return 0;
}

unsigned Monomial::degreeIn(const std::set<Var>& vars) const {
    unsigned d = 0;
    for (const auto& [name, e] : factors_)
        if (vars.count(name)) d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    for (const auto& [name, e] : factors_)
        if (other.exponent(name) < e) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && variableLess(i->first, j->first))) {
            r.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || variableLess(j->first, i->first)) {
            r.factors_.push_back(*j++);
        } else {
            r.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (const auto& [name, e] : a.factors_) {
        const unsigned d = b.exponent(name);
        if (d > e) throw std::logic_error("monomial division is not exact");
        if (e > d) r.factors_.emplace_back(name, e - d);
    }
    r.degree_ = a.degree_ - b.degree_;
    return r;
}

Monomial Monomial::without(const Var& v) const {
    Monomial r;
    for (const auto& f : factors_) {
        if (f.first == v) continue;
        r.factors_.push_back(f);
        r.degree_ += f.second;
    }
    return r;
}

std::string Monomial::toString() const {
    // Parameters first, then x and y.
    std::vector<const Factor*> ordered;
    for (const auto& f : factors_)
        if (f.first != "x" && f.first != "y") ordered.push_back(&f);
    for (const auto& f : factors_)
        if (f.first == "x" || f.first == "y") ordered.push_back(&f);
    std::string out;
    for (const Factor* f : ordered) {
        if (!out.empty()) out += '*';
        out += f->first;
        if (f->second > 1) out += '^' + std::to_string(f->second);
    }
    return out.empty() ? "1" : out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0;
    for (; i < fa.size() && i < fb.size(); ++i) {
        if (fa[i].first != fb[i].first) return variableLess(fa[i].first, fb[i].first);
        if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
    }
    return i < fa.size() && i >= fb.size();
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
    if (!c.isZero()) terms_.emplace(Monomial(), c);
}

Poly::Poly(const Monomial& m, const Rational& c) {
    if (!c.isZero()) terms_.emplace(m, c);
}

bool Poly::isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isOne());
}

Rational Poly::constantValue() const {
    if (!isConstant()) throw std::logic_error("polynomial is not constant: " + toString());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Poly::coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Poly::leadingMonomial() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading monomial");
    return terms_.begin()->first;
}

const Rational& Poly::leadingCoefficient() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return terms_.begin()->second;
}

unsigned Poly::degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned Poly::degreeIn(const Var& v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
    return d;
}

std::set<Var> Poly::variables() const {
    std::set<Var> vars;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors()) vars.insert(f.first);
    return vars;
}

bool Poly::dependsOn(const Var& v) const {
    return degreeIn(v) > 0;
}

void Poly::addTerm(const Monomial& m, const Rational& c) {
    if (c.isZero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c.isZero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.addTerm(ma * mb, ca * cb);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

std::string Poly::toString() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Rational mag = c.abs();
        if (m.isOne()) {
            out += mag.toString();
        } else if (mag == Rational(1)) {
            out += m.toString();
        } else {
            out += mag.toString() + "*" + m.toString();
        }
    }
    return out;
}

Poly pow(const Poly& p, unsigned exponent) {
    Poly result(1), base = p;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

Poly differentiate(const Poly& p, const Var& v) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        const unsigned e = m.exponent(v);
        if (e == 0) continue;
        r.addTerm(m / Monomial::of(v), c * Rational(static_cast<long>(e)));
    }
    return r;
}

Poly substitute(const Poly& p, const std::map<Var, Poly>& bindings) {
    std::map<std::pair<Var, unsigned>, Poly> powers;
    auto power = [&](const Var& v, unsigned e) -> const Poly& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, pow(bindings.at(v), e)).first;
        return it->second;
    };
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Factor> kept;
        std::vector<const Poly*> replaced;
        for (const auto& [v, e] : m.factors()) {
            if (bindings.count(v)) {
                replaced.push_back(&power(v, e));
            } else {
                kept.emplace_back(v, e);
            }
        }
        Poly term(Monomial(std::move(kept)), c);
        for (const Poly* q : replaced) term = term * *q;
        r += term;
    }
    return r;
}

Rational evalRational(const Poly& p, const std::map<Var, Rational>& point) {
    Rational sum;
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (const auto& [v, e] : m.factors()) {
            const auto it = point.find(v);
            if (it == point.end()) throw UnboundVariable(v);
            t *= pow(it->second, e);
        }
        sum += t;
    }
    return sum;
}

double evalDouble(const Poly& p, const std::map<Var, double>& point) {
    double sum = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double t = c.toDouble();
        for (const auto& [v, e] : m.factors()) {
            const auto it = point.find(v);
            if (it == point.end()) throw UnboundVariable(v);
            t *= std::pow(it->second, static_cast<int>(e));
        }
        sum += t;
    }
    return sum;
}

std::map<unsigned, Poly> homogeneousComponents(const Poly& p, const std::set<Var>& vars) {
    std::map<unsigned, Poly> out;
    for (const auto& [m, c] : p.terms()) out[m.degreeIn(vars)].addTerm(m, c);
    return out;
}

Poly coefficientXY(const Poly& p, unsigned i, unsigned j) {
    Poly r;
    for (const auto& [m, c] : p.terms())
        if (m.exponent("x") == i && m.exponent("y") == j) r.addTerm(m.without("x").without("y"), c);
    return r;
}

std::vector<Poly> coefficientsIn(const Poly& p, const Var& v) {
    std::vector<Poly> out(p.degreeIn(v) + 1);
    for (const auto& [m, c] : p.terms()) out[m.exponent(v)].addTerm(m.without(v), c);
    return out;
}

Poly clearDenominators(const Poly& p) {
    mpz_class l = 1;
    for (const auto& [m, c] : p.terms()) l = lcm(l, c.denominator());
    return p * Rational(l);
}

Poly primitivePart(const Poly& p) {
    if (p.isZero()) return p;
    const Poly cleared = clearDenominators(p);
    mpz_class g = 0;
    for (const auto& [m, c] : cleared.terms()) {
        mpz_class n = c.numerator();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    return cleared * Rational(mpz_class(1), g);
}

std::optional<Poly> divideExact(const Poly& num, const Poly& den) {
    if (den.isZero()) throw std::domain_error("division by the zero polynomial");
    const Monomial& lm = den.leadingMonomial();
    const Rational& lc = den.leadingCoefficient();
    Poly rem = num, quot;
    while (!rem.isZero()) {
        const Monomial& rm = rem.leadingMonomial();
        if (!lm.divides(rm)) return std::nullopt;
        const Poly step(rm / lm, rem.leadingCoefficient() / lc);
        quot += step;
        rem -= step * den;
    }
    return quot;
}

Poly pseudoRemainder(const Poly& p, const Poly& divisor, const Var& v) {
    const auto dc = coefficientsIn(divisor, v);
    const unsigned dd = static_cast<unsigned>(dc.size() - 1);
    const Poly& lc = dc.back();
    if (lc.isZero()) throw std::domain_error("divisor is zero");
    Poly r = p;
    while (!r.isZero() && r.degreeIn(v) >= dd) {
        const unsigned dr = r.degreeIn(v);
        const Poly lead = coefficientsIn(r, v).back();
        r = lc * r - lead * Poly(Monomial::of(v, dr - dd)) * divisor;
    }
    return r;
}

Poly reduceInversePair(const Poly& p, const Var& v, const Var& inv) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        const unsigned i = m.exponent(v), j = m.exponent(inv);
        const unsigned k = std::min(i, j);
        if (k == 0) {
            r.addTerm(m, c);
            continue;
        }
        r.addTerm(m / Monomial({{v, k}, {inv, k}}), c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.isZero()) throw std::domain_error("rational function with zero denominator");
}

double RationalFunction::evalDouble(const std::map<Var, double>& point) const {
    return isoc::evalDouble(num_, point) / isoc::evalDouble(den_, point);
}

std::string RationalFunction::toString() const {
    if (den_ == Poly(1)) return num_.toString();
    return "(" + num_.toString() + ")/(" + den_.toString() + ")";
}

} // namespace isoc
