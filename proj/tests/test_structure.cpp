#include "isoc/parser.hpp"
#include "isoc/quintic.hpp"
#include "isoc/structure.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace isoc;
using namespace isoc::structure;

namespace {

Poly P(std::string_view s) { return parseExpr(s); }

PlanarSystem sys(std::string_view p, std::string_view q) { return {P(p), P(q)}; }

// Canonical form: second case with b = 1.
PlanarSystem canonical(const Poly& e, const Poly& g) {
    quintic::QuinticParams params = quintic::QuinticParams::numeric({0, 1, 0, 0, 0, 0, 0, 0});
    params['e'] = e;
    params['g'] = g;
    return quintic::buildSystem(params);
}

const Poly e = Poly::var("e"), g = Poly::var("g");
const Poly u = P("e*x^2 + g*y^2");
const Poly C1 = P("x^2 + y^2");
const Poly C2 = e - g + u + u * u;
const Poly L1 = P("2*x*y*(1 + e*x^2 + g*y^2)");
const Poly L2 = P("2*x*y*(1 + 2*(e*x^2 + g*y^2))");
const Poly L3 = P("2*x*y");

Poly randomField(testing::Sampler& s) {
    Poly p;
    for (unsigned i = 0; i <= 3; ++i)
        for (unsigned j = 0; i + j <= 3; ++j)
            if (s.integer(0, 2) == 0) p += s.rational() * pow(X(), i) * pow(Y(), j);
    return p;
}

} // namespace

TEST_CASE("lieBracket examples") {
    const PlanarSystem a = sys("y + x^3", "-x + x^2*y");
    CHECK(lieBracket(a, a).isZero());
    const Bracket b = lieBracket(sys("y", "-x"), sys("x^2", "0"));
    CHECK(!b.isZero());
    // [X, Y] = DX.Y - DY.X with X = (y, -x), Y = (x^2, 0)
    CHECK(b.first == P("-2*x*y"));
    CHECK(b.second == P("-x^2"));
    const quintic::QuinticParams c1 = quintic::caseIParams();
    CHECK(lieBracket(quintic::buildSystem(c1), quintic::commutingPartner(c1, quintic::CaseTag::I)).isZero());
}

TEST_CASE("cofactorOf examples") {
    const quintic::QuinticParams params = quintic::QuinticParams::symbolic();
    const Poly R = quintic::radialFactor(params);
    CHECK(cofactorOf(quintic::buildSystem(params), C1) == 2 * R);
    const Poly Q = P("1 + a*x^2 + b*x*y^3");
    const auto k = cofactorOf({X() * Q, Y() * Q}, Q);
    CHECK(k == X() * differentiate(Q, "x") + Y() * differentiate(Q, "y"));
    CHECK(!cofactorOf(sys("y", "-x"), P("x")).has_value());
}

TEST_CASE("printed cofactors of the canonical form") {
    const PlanarSystem s = canonical(e, g);
    CHECK(cofactorOf(s, C1) == L1);
    CHECK(cofactorOf(s, C2) == L2);
    const Poly udot = s.p * differentiate(u, "x") + s.q * differentiate(u, "y");
    CHECK(udot == L3 * (e - g + u + u * u));
    CHECK(2 * L1 - L2 - L3 == Poly());
    CHECK(certificateResidual(s, ExpInvariant{IntegralExponent{u, e - g}, L3}).isZero());
}

TEST_CASE("e = g exponential invariant") {
    const PlanarSystem s = canonical(e, e);
    const RationalFunction G(P("1 + x^2"), C1);
    const Poly N = G.numerator(), D = G.denominator();
    const Poly gdot = s.p * (differentiate(N, "x") * D - N * differentiate(D, "x")) +
                      s.q * (differentiate(N, "y") * D - N * differentiate(D, "y"));
    CHECK(gdot + 2 * e * X() * Y() * D * D == Poly());
    const Poly L3e = -2 * e * X() * Y();
    CHECK(certificateResidual(s, ExpInvariant{RationalExponent{G}, L3e}).isZero());
    // 2 L1 - L2 + (1/e) L3 = 0 with g = e, cleared by e
    const Poly L1e = substitute(L1, {{"g", e}}), L2e = substitute(L2, {{"g", e}});
    CHECK(e * (2 * L1e - L2e) + L3e == Poly());
}

TEST_CASE("radialCofactorTheoremCheck") {
    const quintic::QuinticParams c1 = quintic::caseIParams();
    const Poly q4 = P("e*x^4 - 4*d*x^3*y + 4*h*x*y^3 - g*y^4");
    CHECK(radialCofactorTheoremCheck(quintic::radialFactor(c1), 1 + q4).isZero());
    const quintic::QuinticParams c2 = quintic::caseIIParams();
    const Poly Q2 = e - g + u * (Poly::var("b") + u);
    CHECK(radialCofactorTheoremCheck(quintic::radialFactor(c2), Q2).isZero());
    CHECK_THROWS_AS(radialCofactorTheoremCheck(P("x^2"), P("1 + x")), NotCommuting);
}

TEST_CASE("integrating factors") {
    const quintic::QuinticParams c1 = quintic::caseIParams();
    const RationalFunction mu1 =
        integratingFactorFromPair(quintic::buildSystem(c1), quintic::commutingPartner(c1, quintic::CaseTag::I));
    CHECK(mu1.numerator() == Poly(1));
    CHECK(mu1.denominator() == C1 * P("1 + e*x^4 - 4*d*x^3*y + 4*h*x*y^3 - g*y^4"));

    const quintic::QuinticParams c2 = quintic::caseIIParams();
    const RationalFunction mu2 =
        integratingFactorFromPair(quintic::buildSystem(c2), quintic::commutingPartner(c2, quintic::CaseTag::II));
    CHECK(mu2.denominator() == C1 * (e - g + u * (Poly::var("b") + u)));

    CHECK_THROWS_AS(integratingFactorFromPair(sys("y", "-x"), sys("y", "-x")), DegeneratePair);
    CHECK_THROWS_AS(integratingFactorFromPair(sys("y", "-x"), sys("x^2", "0")), NotCommuting);
}

TEST_CASE("verifyDarbouxIntegral") {
    const PlanarSystem s = canonical(e, g);
    DarbouxCandidate cand;
    cand.algebraic = {{{C1, L1}, Poly(2)}, {{C2, L2}, Poly(-1)}};
    cand.exponential = {{{IntegralExponent{u, e - g}, L3}, Poly(-1)}};
    CHECK(verifyDarbouxIntegral(s, cand).certified);

    DarbouxCandidate wrong = cand;
    wrong.algebraic[0].second = Poly(1);
    const DarbouxVerdict bad = verifyDarbouxIntegral(s, wrong);
    CHECK(!bad.certified);
    CHECK(bad.residual == -L1);

    DarbouxCandidate broken = cand;
    broken.algebraic[1].first.cofactor = L1;
    CHECK_THROWS_AS(verifyDarbouxIntegral(s, broken), InvariantNotCertified);

    DarbouxCandidate eq;
    eq.algebraic = {{{C1, substitute(L1, {{"g", e}})}, Poly(2)}, {{substitute(C2, {{"g", e}}), substitute(L2, {{"g", e}})}, Poly(-1)}};
    eq.exponential = {{{RationalExponent{RationalFunction(P("1 + x^2"), C1)}, -2 * e * X() * Y()},
                       RationalFunction(Poly(1), e)}};
    CHECK(verifyDarbouxIntegral(canonical(e, e), eq).certified);
    eq.exponential[0].second = RationalFunction(Poly(-1), e);
    CHECK(!verifyDarbouxIntegral(canonical(e, e), eq).certified);
}

TEST_CASE("reversibility") {
    const PlanarSystem secondCase = quintic::buildSystem(quintic::caseIIParams());
    CHECK(reversibilityResidual(secondCase, 1, 0).isZero());
    CHECK(reversibilityResidual(secondCase, 0, 1).isZero());
    testing::Sampler s(41);
    for (int i = 0; i < 10; ++i) {
        const Rational a = s.rational(), b = s.nonzeroRational();
        CHECK(reversibilityResidual(sys("y", "-x"), a, b).isZero());
    }
    // only b = 1 is a member of the second case, hence symmetric about both axes
    CHECK(reversibilityResidual(quintic::buildSystem(quintic::QuinticParams::numeric({0, 1, 0, 0, 0, 0, 0, 0})), 1, 0)
              .isZero());
    CHECK(!reversibilityResidual(quintic::buildSystem(quintic::QuinticParams::numeric({1, 0, 0, 0, 0, 0, 0, 0})), 1, 0)
               .isZero());
}

TEST_CASE("reversibleModuloConstraint") {
    const Poly constraint = P("a*s^2 - b*s - a");
    const ReversibilityVerdict yes = reversibleModuloConstraint(quintic::scaledCaseIIISystem(), constraint);
    CHECK(yes.reversible);
    CHECK(yes.witness.isZero());
    const ReversibilityVerdict no = reversibleModuloConstraint(quintic::scaledCaseIIISystem(Poly(1)), constraint);
    CHECK(!no.reversible);
    CHECK(!no.witness.isZero());
    CHECK(reversibleModuloConstraint(sys("y", "-x"), P("s^2 - 1")).reversible);
    CHECK_THROWS(reversibleModuloConstraint(sys("y", "-x"), P("s + 1 - s")));
}

TEST_CASE("reflection spot check of the third case") {
    // S = +-(4a^2 + b^2)^(-1/2) [[-b, 2a], [2a, b]] must satisfy S F(z) = -F(S z).
    testing::Sampler s(42);
    for (int trial = 0; trial < 10; ++trial) {
        Rational a = s.rationalIn(-3, 3);
        while (a.isZero()) a = s.rationalIn(-3, 3);
        const Rational b = s.rationalIn(-3, 3), d = s.rationalIn(-3, 3), ee = s.rationalIn(-3, 3);
        const auto fgh = quintic::caseIIIfgh(a, b, d, ee);
        const PlanarSystem f = quintic::buildSystem(quintic::QuinticParams::numeric({a, b, -a, d, ee, fgh[0], fgh[1], fgh[2]}));
        auto F = [&](const Eigen::Vector2d& z) {
            const std::map<Var, double> pt{{"x", z.x()}, {"y", z.y()}};
            return Eigen::Vector2d(evalDouble(f.p, pt), evalDouble(f.q, pt));
        };
        const double ad = a.toDouble(), bd = b.toDouble();
        Eigen::Matrix2d S;
        S << -bd, 2 * ad, 2 * ad, bd;
        S /= std::sqrt(4 * ad * ad + bd * bd);
        for (const Eigen::Matrix2d& M : {Eigen::Matrix2d(S), Eigen::Matrix2d(-S)}) {
            for (int i = 0; i < 100; ++i) {
                const Eigen::Vector2d z(s.uniform(-0.5, 0.5), s.uniform(-0.5, 0.5));
                const double scale = 1.0 + F(z).norm();
                CHECK((M * F(z) + F(M * z)).norm() / scale < 1e-9);
            }
        }
    }
}

TEST_CASE("angularSpeedResidual") {
    CHECK(angularSpeedResidual(quintic::buildSystem(quintic::QuinticParams::symbolic())).isZero());
    CHECK(angularSpeedResidual(sys("y", "-x")).isZero());
    CHECK(angularSpeedResidual(sys("y + x^2", "-x")) == P("-x^2*y"));
}

TEST_CASE("c3Exponent") {
    CHECK(c3Exponent(0.0, 3.0) == 0.0);
    CHECK(c3Exponent(1.0, 0.25) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(c3Exponent(2.0, -2.0), DomainError);
    // independent check: composite Simpson on each branch
    for (double k : {1.0, 0.1, 0.2, 0.25, 3.0}) {
        const double upper = 0.7;
        const int n = 2000;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = upper * i / n;
            const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
            sum += w / (k + t + t * t);
        }
        CHECK(c3Exponent(upper, k) == doctest::Approx(sum * upper / (3.0 * n)).epsilon(1e-10));
    }
    const double mid = c3Exponent(0.5, 0.25);
    CHECK(std::abs(c3Exponent(0.5, 0.25 + 1e-8) - mid) < 1e-6);
    CHECK(std::abs(c3Exponent(0.5, 0.25 - 1e-8) - mid) < 1e-6);
}

TEST_CASE("property: bracket antisymmetry") {
    testing::Sampler s(43);
    for (int i = 0; i < 100; ++i) {
        const PlanarSystem a{randomField(s), randomField(s)}, b{randomField(s), randomField(s)};
        const Bracket ab = lieBracket(a, b), ba = lieBracket(b, a);
        CHECK(ab.first == -ba.first);
        CHECK(ab.second == -ba.second);
    }
}

TEST_CASE("property: returned cofactors certify") {
    testing::Sampler s(44);
    int found = 0;
    for (int i = 0; i < 100; ++i) {
        const Poly Q = 1 + randomField(s);
        const Poly R = randomField(s);
        const PlanarSystem radial{X() * Q, Y() * Q};
        for (const Poly& c : {Q, C1, Q * C1, R + 1}) {
            if (c.isConstant()) continue;
            if (const auto k = cofactorOf(radial, c)) {
                ++found;
                CHECK((radial.p * differentiate(c, "x") + radial.q * differentiate(c, "y") - *k * c).isZero());
            }
        }
    }
    CHECK(found >= 200);
}
