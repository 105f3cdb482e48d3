#include "isoc/quintic.hpp"

#include "isoc/forms.hpp"

#include <algorithm>
#include <cmath>

namespace isoc::quintic {

namespace {

int index(char name) {
    if (name < 'a' || name > 'h') throw std::out_of_range(std::string("no quintic parameter '") + name + "'");
    return name - 'a';
}

Poly xy(unsigned i, unsigned j) {
    return Poly(Monomial({{"x", i}, {"y", j}}));
}

Poly sym(const char* v) { return Poly::var(v); }

Poly reduceA(const Poly& p) { return reduceInversePair(p, "a", kInverseA); }

// sqrt(r) if r is the square of a rational.
std::optional<Rational> exactSqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    mpz_class n = r.numerator(), d = r.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rational(sn, sd);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw CaseMismatch(what);
}

} // namespace

QuinticParams QuinticParams::symbolic() {
    QuinticParams p;
    for (std::size_t i = 0; i < kParamNames.size(); ++i) p.values[i] = Poly::var(kParamNames[i]);
    return p;
}

QuinticParams QuinticParams::numeric(const std::array<Rational, 8>& v) {
    QuinticParams p;
    for (std::size_t i = 0; i < v.size(); ++i) p.values[i] = Poly(v[i]);
    return p;
}

Poly& QuinticParams::operator[](char name) { return values[index(name)]; }
const Poly& QuinticParams::operator[](char name) const { return values[index(name)]; }

bool QuinticParams::isNumeric() const {
    return std::all_of(values.begin(), values.end(), [](const Poly& p) { return p.isConstant(); });
}

std::array<Rational, 8> QuinticParams::rationals() const {
    std::array<Rational, 8> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i].isConstant())
            throw std::invalid_argument(std::string("parameter ") + kParamNames[i] + " is symbolic: " +
                                        values[i].toString());
        out[i] = values[i].constantValue();
    }
    return out;
}

std::map<Var, Poly> QuinticParams::bindings() const {
    std::map<Var, Poly> out;
    for (std::size_t i = 0; i < values.size(); ++i) out.emplace(kParamNames[i], values[i]);
    return out;
}

std::string QuinticParams::toString() const {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += std::string(kParamNames[i]) + "=" + values[i].toString();
    }
    return s;
}

Poly radialFactor(const QuinticParams& p) {
    return p['a'] * xy(2, 0) + p['b'] * xy(1, 1) + p['c'] * xy(0, 2) + p['d'] * xy(4, 0) + p['e'] * xy(3, 1) +
           p['f'] * xy(2, 2) + p['g'] * xy(1, 3) + p['h'] * xy(0, 4);
}

PlanarSystem buildSystem(const QuinticParams& params) {
    const Poly r = radialFactor(params);
    return {Y() + X() * r, -X() + Y() * r};
}

std::array<Poly, 4> reducedConditions(const QuinticParams& p) {
    const Poly &a = p['a'], &b = p['b'], &c = p['c'], &d = p['d'];
    const Poly &e = p['e'], &f = p['f'], &g = p['g'], &h = p['h'];
    return {a + c, 3 * d + f + 3 * h, 3 * c * e - b * f + 3 * c * g - 6 * b * h,
            2 * c * c * f - 3 * b * c * g + 3 * b * b * h};
}

std::string caseName(CaseTag tag) {
    switch (tag) {
    case CaseTag::I: return "i";
    case CaseTag::II: return "ii";
    case CaseTag::III: return "iii";
    }
    return "?";
}

std::array<Rational, 3> caseIIIfgh(const Rational& a, const Rational& b, const Rational& d, const Rational& e) {
    if (a.isZero()) throw std::invalid_argument("third center case needs a != 0");
    const Rational a2 = a * a, a3 = a2 * a;
    const Rational bdae = b * d - a * e;
    return {Rational(3) * b * (a * e - b * d) / (Rational(2) * a2),
            (Rational(2) * a2 * b * d + (Rational(2) * a2 - b * b) * bdae) / (Rational(2) * a3),
            (Rational(-2) * a2 * d + b * bdae) / (Rational(2) * a2)};
}

QuinticParams caseIParams() {
    QuinticParams p = QuinticParams::symbolic();
    p['a'] = p['b'] = p['c'] = Poly();
    p['f'] = -3 * (sym("d") + sym("h"));
    return p;
}

QuinticParams caseIIParams() {
    QuinticParams p = QuinticParams::symbolic();
    p['a'] = p['c'] = p['d'] = p['f'] = p['h'] = Poly();
    return p;
}

QuinticParams caseIIIParams() {
    const Poly a = sym("a"), b = sym("b"), d = sym("d"), e = sym("e"), ai = Poly::var(kInverseA);
    const Poly bdae = b * d - a * e;
    QuinticParams p = QuinticParams::symbolic();
    p['c'] = -a;
    p['f'] = Rational(3, 2) * b * (a * e - b * d) * ai * ai;
    p['g'] = (2 * a * a * b * d + (2 * a * a - b * b) * bdae) * Rational(1, 2) * ai * ai * ai;
    p['h'] = (-2 * a * a * d + b * bdae) * Rational(1, 2) * ai * ai;
    return p;
}

PlanarSystem scaledCaseIIISystem(const Poly& gShift) {
    QuinticParams p = caseIIIParams();
    p['g'] += gShift;
    const Poly a = sym("a");
    const PlanarSystem s = scaled(buildSystem(p), 2 * a * a * a);
    return {reduceA(s.p), reduceA(s.q)};
}

std::optional<CenterCase> theoremCase(const QuinticParams& params) {
    const auto v = params.rationals();
    const Rational &a = v[0], &b = v[1], &c = v[2], &d = v[3], &e = v[4], &f = v[5], &g = v[6], &h = v[7];
    if (a.isZero() && b.isZero() && c.isZero() && f == Rational(-3) * (d + h)) return CenterCase{CaseTag::I, {}};
    if (a.isZero() && c.isZero() && d.isZero() && f.isZero() && h.isZero()) return CenterCase{CaseTag::II, {}};
    if (!a.isZero() && c == -a) {
        const auto fgh = caseIIIfgh(a, b, d, e);
        if (f == fgh[0] && g == fgh[1] && h == fgh[2]) return CenterCase{CaseTag::III, fgh};
    }
    return std::nullopt;
}

Classification classify(const QuinticParams& params, int m) {
    if (auto c = theoremCase(params)) return Center{*c};
    const auto report = lyapunov::plConstants(buildSystem(params), m);
    if (report.firstNonzeroIndex) return Focus{{*report.firstNonzeroIndex, *report.sign}};
    return Undetermined{m};
}

void checkCaseShape(const QuinticParams& p, CaseTag tag) {
    switch (tag) {
    case CaseTag::I:
        require(p['a'].isZero() && p['b'].isZero() && p['c'].isZero(), "case (i) needs a = b = c = 0");
        require(p['f'] == -3 * (p['d'] + p['h']), "case (i) needs f = -3(d + h)");
        return;
    case CaseTag::II:
        require(p['a'].isZero() && p['c'].isZero() && p['d'].isZero() && p['f'].isZero() && p['h'].isZero(),
                "case (ii) needs a = c = d = f = h = 0");
        return;
    case CaseTag::III: {
        require(!p['a'].isZero(), "case (iii) needs a != 0");
        require(p['c'] == -p['a'], "case (iii) needs c = -a");
        if (p.isNumeric()) {
            const auto v = p.rationals();
            const auto fgh = caseIIIfgh(v[0], v[1], v[3], v[4]);
            require(v[5] == fgh[0] && v[6] == fgh[1] && v[7] == fgh[2], "case (iii) f, g, h do not match");
        }
        return;
    }
    }
}

PlanarSystem commutingPartner(const QuinticParams& params, CaseTag tag) {
    const QuinticParams& p = params;
    if (tag == CaseTag::III) {
        if (!p['d'].isZero() || !p['e'].isZero())
            throw NoSymbolicPartner("case (iii) partner is printed only for d = e = 0; rotate to the (ii) form");
        require(p['f'].isZero() && p['g'].isZero() && p['h'].isZero(), "case (iii) with d = e = 0 needs f = g = h = 0");
    }
    checkCaseShape(p, tag);
    switch (tag) {
    case CaseTag::I: {
        const Poly q4 = p['e'] * xy(4, 0) - 4 * p['d'] * xy(3, 1) + 4 * p['h'] * xy(1, 3) - p['g'] * xy(0, 4);
        return {X() * (1 + q4), Y() * (1 + q4)};
    }
    case CaseTag::II: {
        const Poly u = p['e'] * xy(2, 0) + p['g'] * xy(0, 2);
        const Poly factor = p['e'] - p['g'] + u * (p['b'] + u);
        return {X() * factor, Y() * factor};
    }
    case CaseTag::III: {
        const Poly factor = 1 + p['b'] * xy(2, 0) - 2 * p['a'] * xy(1, 1);
        return {X() * factor, Y() * factor};
    }
    }
    throw std::logic_error("unknown case");
}

BNormalization normalizeB(const QuinticParams& params) {
    checkCaseShape(params, CaseTag::II);
    if (!params['b'].isConstant()) throw std::invalid_argument("normalizeB needs a numeric b");
    const Rational b = params['b'].constantValue();
    if (b.isZero()) throw std::invalid_argument("normalizeB: b = 0 is already normalized");

    BNormalization out;
    out.swapped = b.sign() < 0;
    out.timeReversed = out.swapped;
    out.scaleSquared = b.abs().inverse();
    out.exactScale = exactSqrt(out.scaleSquared);
    out.scale = std::sqrt(out.scaleSquared.toDouble());

    // Substitute x = w X, y = w Y (or swapped), divide by w, reduce w^2 = 1/|b|.
    const Poly w = Poly::var("w");
    const PlanarSystem sys = buildSystem(params);
    const std::map<Var, Poly> change = out.swapped ? std::map<Var, Poly>{{"x", w * Y()}, {"y", w * X()}}
                                                   : std::map<Var, Poly>{{"x", w * X()}, {"y", w * Y()}};
    auto reduceW = [&](const Poly& p) {
        Poly r;
        for (const auto& [m, c] : p.terms()) {
            const unsigned e = m.exponent("w");
            if (e % 2 == 0) throw std::logic_error("normalizeB: even power of the scale");
            r.addTerm(m.without("w"), c * pow(out.scaleSquared, (e - 1) / 2));
        }
        return r;
    };
    PlanarSystem t{reduceW(substitute(sys.p, change)), reduceW(substitute(sys.q, change))};
    if (out.swapped) t = {-t.q, -t.p};

    QuinticParams np = QuinticParams::numeric({0, 0, 0, 0, 0, 0, 0, 0});
    np['b'] = coefficientXY(t.p, 2, 1);
    np['e'] = coefficientXY(t.p, 4, 1);
    np['g'] = coefficientXY(t.p, 2, 3);
    if (!(buildSystem(np) == t)) throw std::logic_error("normalizeB: rescaled system left the (ii) family");
    out.params = np;
    return out;
}

RotationData rotateToCanonical(const QuinticParams& params) {
    const auto v = params.rationals();
    if (v[0].isZero()) throw std::invalid_argument("rotateToCanonical needs a != 0");
    const double a = v[0].toDouble(), b = v[1].toDouble();

    Coefficients<double> quad(3), quart(5);
    for (int i = 0; i < 3; ++i) quad(i) = v[i].toDouble();
    for (int i = 0; i < 5; ++i) quart(i) = v[3 + i].toDouble();

    RotationData out;
    out.phi = std::atan((-b + std::sqrt(b * b + 4.0 * a * a)) / (2.0 * a));
    const BinaryForm<double> r2 = rotate(BinaryForm<double>(quad), out.phi);
    const BinaryForm<double> r4 = rotate(BinaryForm<double>(quart), out.phi);
    for (int i = 0; i < 3; ++i) out.rotated[i] = r2.coefficients()(i);
    for (int i = 0; i < 5; ++i) out.rotated[3 + i] = r4.coefficients()(i);
    out.b1 = r2.coefficient(1, 1);
    out.e1 = r4.coefficient(3, 1);
    out.g1 = r4.coefficient(1, 3);
    out.residual = std::max({std::abs(r2.coefficient(2, 0)), std::abs(r2.coefficient(0, 2)),
                             std::abs(r4.coefficient(4, 0)), std::abs(r4.coefficient(2, 2)),
                             std::abs(r4.coefficient(0, 4))});
    return out;
}

FirstIntegralSpec firstIntegral(const QuinticParams& params, CaseTag tag) {
    checkCaseShape(params, tag);
    const Poly r2 = X() * X() + Y() * Y();

    auto rationalSpec = [](const PlanarSystem& sys, RationalFunction h) {
        const Poly residual = structure::rationalIntegralResidual(sys, h);
        if (!residual.isZero()) throw std::logic_error("first integral certificate failed: " + residual.toString());
        return FirstIntegralSpec{IntegralKind::RationalH, sys, std::nullopt, std::move(h)};
    };

    switch (tag) {
    case CaseTag::I: {
        const PlanarSystem partner = commutingPartner(params, tag);
        return rationalSpec(buildSystem(params), RationalFunction(r2 * r2, *divideExact(partner.p, X())));
    }
    case CaseTag::II: {
        if (params['b'].isZero()) {
            const Poly den = 1 + params['e'] * pow(X(), 4) - params['g'] * pow(Y(), 4);
            return rationalSpec(buildSystem(params), RationalFunction(r2 * r2, den));
        }
        std::optional<BNormalization> norm;
        QuinticParams p = params;
        if (!(params['b'] == Poly(1))) {
            norm = normalizeB(params);
            p = norm->params;
        }
        const PlanarSystem sys = buildSystem(p);
        const Poly &e = p['e'], &g = p['g'];
        const Poly u = e * X() * X() + g * Y() * Y();
        const Poly twoXY = 2 * X() * Y();
        if (e.isZero() && g.isZero()) {
            FirstIntegralSpec spec =
                rationalSpec(sys, RationalFunction(1 - Y() * Y(), 1 + X() * X()));
            spec.normalization = norm;
            return spec;
        }
        structure::DarbouxCandidate cand;
        cand.algebraic.push_back({{r2, twoXY * (1 + u)}, Poly(2)});
        cand.algebraic.push_back({{e - g + u + u * u, twoXY * (1 + 2 * u)}, Poly(-1)});
        if (!(e == g)) {
            cand.exponential.push_back({{structure::IntegralExponent{u, e - g}, twoXY}, Poly(-1)});
        } else {
            cand.exponential.push_back(
                {{structure::RationalExponent{RationalFunction(1 + X() * X(), r2)}, -e * twoXY},
                 RationalFunction(Poly(1), e)});
        }
        const auto verdict = structure::verifyDarbouxIntegral(sys, cand);
        if (!verdict.certified)
            throw std::logic_error("Darboux cofactor sum does not vanish: " + verdict.residual.toString());
        return FirstIntegralSpec{IntegralKind::DarbouxWithExp, sys, norm, std::move(cand)};
    }
    case CaseTag::III: {
        if (params['d'].isZero() && params['e'].isZero()) {
            const Poly den = 1 + params['b'] * X() * X() - 2 * params['a'] * X() * Y();
            return rationalSpec(buildSystem(params), RationalFunction(r2, den));
        }
        return FirstIntegralSpec{IntegralKind::NumericOnly, buildSystem(params), std::nullopt,
                                 rotateToCanonical(params)};
    }
    }
    throw std::logic_error("unknown case");
}

double evaluateIntegral(const FirstIntegralSpec& spec, double x, double y) {
    if (const auto* h = std::get_if<RationalFunction>(&spec.payload)) {
        const double den = evalDouble(h->denominator(), {{"x", x}, {"y", y}});
        if (den == 0.0) throw structure::DomainError("first integral denominator vanishes");
        return evalDouble(h->numerator(), {{"x", x}, {"y", y}}) / den;
    }
    if (const auto* cand = std::get_if<structure::DarbouxCandidate>(&spec.payload))
        return structure::evaluateDarboux(*cand, x, y);
    throw std::invalid_argument("no closed-form first integral; only rotation data is available");
}

FirstIntegralSpec canonicalIntegral(const RotationData& rotation) {
    // Rotation leaves rounding noise; snap it so that exact coincidences
    // (zero coefficients, e1 = g1) pick the same integral branch as exact data.
    const double scale = std::max({1.0, std::abs(rotation.b1), std::abs(rotation.e1), std::abs(rotation.g1)});
    const double eps = 1e-12 * scale;
    auto snap = [&](double v) { return std::abs(v) < eps ? 0.0 : v; };
    const double b1 = snap(rotation.b1), e1 = snap(rotation.e1);
    const double g1 = std::abs(rotation.g1 - e1) <= eps ? e1 : snap(rotation.g1);
    QuinticParams p = QuinticParams::numeric({0, 0, 0, 0, 0, 0, 0, 0});
    p['b'] = Poly(Rational::fromDouble(b1));
    p['e'] = Poly(Rational::fromDouble(e1));
    p['g'] = Poly(Rational::fromDouble(g1));
    return firstIntegral(p, CaseTag::II);
}

IntegralEvaluator::IntegralEvaluator(FirstIntegralSpec spec) : spec_(std::move(spec)) {
    if (const auto* rot = std::get_if<RotationData>(&spec_.payload)) {
        canonical_ = canonicalIntegral(*rot);
        cosPhi_ = std::cos(rot->phi);
        sinPhi_ = std::sin(rot->phi);
    }
}

namespace {

double evaluateNormalized(const FirstIntegralSpec& spec, double x, double y) {
    if (spec.normalization) {
        const double s = spec.normalization->scale;
        if (spec.normalization->swapped) return evaluateIntegral(spec, y / s, x / s);
        return evaluateIntegral(spec, x / s, y / s);
    }
    return evaluateIntegral(spec, x, y);
}

} // namespace

double IntegralEvaluator::operator()(double x, double y) const {
    if (canonical_) {
        // x = X cos + Y sin, y = -X sin + Y cos
        const double u = x * cosPhi_ - y * sinPhi_;
        const double v = x * sinPhi_ + y * cosPhi_;
        return evaluateNormalized(*canonical_, u, v);
    }
    return evaluateNormalized(spec_, x, y);
}

} // namespace isoc::quintic
