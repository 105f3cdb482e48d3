#pragma once

#include "isoc/forms.hpp"
#include "isoc/quintic.hpp"
#include "isoc/system.hpp"

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace isoc::orbits {

template <typename Scalar>
using State2 = Eigen::Matrix<Scalar, 2, 1>;
using State = State2<double>;

// Parameter-free polynomial vector field compiled for fast evaluation.
template <typename Scalar>
class VectorField {
public:
    struct Term {
        Scalar coeff;
        int xPower;
        int yPower;
    };

    static VectorField fromSystem(const PlanarSystem& sys) {
        VectorField f;
        f.p_ = compile(sys.p);
        f.q_ = compile(sys.q);
        return f;
    }

    State2<Scalar> operator()(const State2<Scalar>& z) const { return {eval(p_, z), eval(q_, z)}; }

private:
    static std::vector<Term> compile(const Poly& poly) {
        std::vector<Term> out;
        for (const auto& [m, c] : poly.terms()) {
            const unsigned i = m.exponent("x"), j = m.exponent("y");
            if (m.degree() != i + j)
                throw std::invalid_argument("vector field has unbound parameters: " + poly.toString());
            out.push_back({static_cast<Scalar>(c.toDouble()), static_cast<int>(i), static_cast<int>(j)});
        }
        return out;
    }

    static Scalar eval(const std::vector<Term>& terms, const State2<Scalar>& z) {
        Scalar sum(0);
        for (const Term& t : terms) {
            Scalar v = t.coeff;
            for (int k = 0; k < t.xPower; ++k) v *= z.x();
            for (int k = 0; k < t.yPower; ++k) v *= z.y();
            sum += v;
        }
        return sum;
    }

    std::vector<Term> p_, q_;
};

enum class Method { FixedRK4, DormandPrince45 };

struct IntegratorConfig {
    Method method = Method::DormandPrince45;
    double relTol = 1e-10;
    double absTol = 1e-10;
    double maxStep = 0.02;
    long maxSteps = 2'000'000;
    double fixedStep = 1e-3;  // FixedRK4 only
    double escapeRadius = 1e9;
};

struct Sample {
    double t;
    State z;
};

struct Trajectory {
    std::vector<Sample> samples;
    IntegratorConfig config;
    std::vector<Sample> events;  // section crossings
    bool truncated = false;      // maxSteps reached before tEnd
};

class Escaped : public std::runtime_error {
public:
    explicit Escaped(double t)
        : std::runtime_error("orbit escaped past the divergence guard at t=" + std::to_string(t)), t(t) {}
    double t;
};

class StiffnessError : public std::runtime_error {
public:
    explicit StiffnessError(double t)
        : std::runtime_error("step size underflow at t=" + std::to_string(t)), t(t) {}
    double t;
};

class NoReturn : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Trajectory integrate(const PlanarSystem& sys, double x0, double y0, double tEnd, const IntegratorConfig& cfg = {});

struct RayReturn {
    double period;
    State endpoint;
    Trajectory trajectory;
};

// First return to the ray from the origin through (x0, y0); needs a system of
// the form x' = y + xR, y' = -x + yR.
RayReturn rayReturnTime(const PlanarSystem& sys, double x0, double y0, const IntegratorConfig& cfg = {});

double closureDefect(const PlanarSystem& sys, double x0, double y0, const IntegratorConfig& cfg = {});

// |endpoint| - |start| after one return; the sign shows focus stability.
double closureGrowth(const PlanarSystem& sys, double x0, double y0, const IntegratorConfig& cfg = {});

class InapplicableBoundary : public std::runtime_error {
public:
    explicit InapplicableBoundary(double c0)
        : std::runtime_error("boundary formula inapplicable (c0 <= 0); c0=" + std::to_string(c0)), c0(c0) {}
    double c0;
};

// e x^4 - 4 d x^3 y + 4 h x y^3 - g y^4
BinaryForm<double> caseIPartnerQuartic(double d, double e, double g, double h);

struct BoundarySample {
    double phi;
    double rho;  // +inf at global maximizers
};

struct BoundaryCurve {
    double c0;
    std::vector<double> maximizers;  // distinct angles in [0, 2 pi)
    std::vector<BoundarySample> samples;
};

// rho(phi) = (c0 - Q(cos phi, sin phi))^(-1/4), c0 = max Q on the unit circle.
BoundaryCurve boundaryCurve(double d, double e, double g, double h, int n = 360);

enum class BType { B2, B4, Unknown };

std::string typeName(BType t);

struct EgRule {};
struct MaximizerCount {
    int k;
};
struct Inapplicable {
    std::string reason;
};

struct CenterTypeVerdict {
    BType tag;
    std::variant<EgRule, MaximizerCount, Inapplicable> evidence;
};

CenterTypeVerdict centerType(const quintic::QuinticParams& params, const quintic::CenterCase& center);

// max |H - H0| / |H0| over the samples, H in the trajectory's coordinates.
double conservationDrift(const quintic::IntegralEvaluator& h, const Trajectory& traj);

} // namespace isoc::orbits
