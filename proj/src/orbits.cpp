#include "isoc/orbits.hpp"

#include "isoc/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace isoc::orbits {

namespace {

using Field = VectorField<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct StepResult {
    State z;
    State error;
};

State rk4Step(const Field& f, const State& z, double h) {
    const State k1 = f(z);
    const State k2 = f(z + 0.5 * h * k1);
    const State k3 = f(z + 0.5 * h * k2);
    const State k4 = f(z + h * k3);
    return z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4); the fifth-order solution is propagated.
StepResult dopriStep(const Field& f, const State& z, double h) {
    const State k1 = f(z);
    const State k2 = f(z + h * (1.0 / 5 * k1));
    const State k3 = f(z + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
    const State k4 = f(z + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
    const State k5 = f(z + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 + 64448.0 / 6561 * k3 - 212.0 / 729 * k4));
    const State k6 = f(z + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 + 46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                                5103.0 / 18656 * k5));
    const State y5 = z + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 - 2187.0 / 6784 * k5 +
                              11.0 / 84 * k6);
    const State k7 = f(y5);
    const State err = h * ((35.0 / 384 - 5179.0 / 57600) * k1 + (500.0 / 1113 - 7571.0 / 16695) * k3 +
                           (125.0 / 192 - 393.0 / 640) * k4 + (-2187.0 / 6784 + 92097.0 / 339200) * k5 +
                           (11.0 / 84 - 187.0 / 2100) * k6 - 1.0 / 40 * k7);
    return {y5, err};
}

// One accepted step from (t, z); h is updated to the suggested next size.
State advance(const Field& f, const IntegratorConfig& cfg, double t, const State& z, double& h, double limit,
              double& taken) {
    if (cfg.method == Method::FixedRK4) {
        taken = std::min(h, limit);
        return rk4Step(f, z, taken);
    }
    for (;;) {
        const double step = std::min(h, limit);
        const double floor = 1e-14 * std::max(1.0, std::abs(t));
        if (step < floor) {
            // radial e-folding within ~1000 floor steps: a finite-time blow-up
            // that the guard radius cannot catch in double precision
            const double growth = z.dot(f(z)) / z.squaredNorm();
            if (growth * floor > 1e-3) throw Escaped(t);
            throw StiffnessError(t);
        }
        const StepResult r = dopriStep(f, z, step);
        double norm = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double scale = cfg.absTol + cfg.relTol * std::max(std::abs(z(i)), std::abs(r.z(i)));
            norm = std::max(norm, std::abs(r.error(i)) / scale);
        }
        if (!std::isfinite(norm)) {
            h = 0.25 * step;
            continue;
        }
        const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        if (norm <= 1.0) {
            taken = step;
            h = std::min(step * factor, cfg.maxStep);
            return r.z;
        }
        h = step * factor;
    }
}

// Single step of exactly h, used to relocate events.
State stepExactly(const Field& f, const IntegratorConfig& cfg, const State& z, double h) {
    return cfg.method == Method::FixedRK4 ? rk4Step(f, z, h) : dopriStep(f, z, h).z;
}

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.relTol > 0 && cfg.absTol > 0 && cfg.maxStep > 0 && cfg.maxSteps > 0 && cfg.fixedStep > 0))
        throw std::invalid_argument("integrator tolerances and step bounds must be positive");
}

double initialStep(const IntegratorConfig& cfg) {
    return cfg.method == Method::FixedRK4 ? cfg.fixedStep : std::min(cfg.maxStep, 1e-3);
}

} // namespace

Trajectory integrate(const PlanarSystem& sys, double x0, double y0, double tEnd, const IntegratorConfig& cfg) {
    validate(cfg);
    if (!(tEnd > 0)) throw std::invalid_argument("integrate needs tEnd > 0");
    if (!std::isfinite(x0) || !std::isfinite(y0)) throw std::invalid_argument("integrate needs a finite start");
    const Field f = Field::fromSystem(sys);

    Trajectory traj;
    traj.config = cfg;
    double t = 0.0, h = initialStep(cfg);
    State z(x0, y0);
    traj.samples.push_back({t, z});
    for (long n = 0; t < tEnd; ++n) {
        if (n >= cfg.maxSteps) {
            traj.truncated = true;
            break;
        }
        double taken = 0.0;
        z = advance(f, cfg, t, z, h, tEnd - t, taken);
        t = tEnd - t <= taken ? tEnd : t + taken;
        if (!z.allFinite() || z.norm() > cfg.escapeRadius) throw Escaped(t);
        traj.samples.push_back({t, z});
    }
    return traj;
}

RayReturn rayReturnTime(const PlanarSystem& sys, double x0, double y0, const IntegratorConfig& cfg) {
    validate(cfg);
    if (x0 == 0.0 && y0 == 0.0) throw std::invalid_argument("ray return needs a start away from the origin");
    if (!structure::angularSpeedResidual(sys).isZero())
        throw std::invalid_argument("ray return needs constant angular speed (x q - y p = -(x^2 + y^2))");
    const Field f = Field::fromSystem(sys);
    const State start(x0, y0);
    auto section = [&](const State& z) { return x0 * z.y() - y0 * z.x(); };

    RayReturn out;
    out.trajectory.config = cfg;
    double t = 0.0, h = initialStep(cfg);
    State z = start;
    out.trajectory.samples.push_back({t, z});
    for (long n = 0; n < cfg.maxSteps; ++n) {
        double taken = 0.0;
        const State prev = z;
        z = advance(f, cfg, t, prev, h, cfg.maxStep, taken);
        if (!z.allFinite() || z.norm() > cfg.escapeRadius) throw Escaped(t + taken);
        const double g0 = section(prev), g1 = section(z);
        const bool crossed = g0 != 0.0 && (g1 == 0.0 || (g0 < 0) != (g1 < 0));
        if (crossed && z.dot(start) > 0) {
            // bracket [0, taken] from prev
            double lo = 0.0, hi = taken;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double gm = section(stepExactly(f, cfg, prev, mid));
                if ((gm < 0) == (g0 < 0) && gm != 0.0) lo = mid;
                else hi = mid;
            }
            const double tau = 0.5 * (lo + hi);
            const State hit = stepExactly(f, cfg, prev, tau);
            out.period = t + tau;
            out.endpoint = hit;
            out.trajectory.samples.push_back({out.period, hit});
            out.trajectory.events.push_back({out.period, hit});
            return out;
        }
        t += taken;
        out.trajectory.samples.push_back({t, z});
    }
    throw NoReturn("no return to the starting ray within maxSteps");
}

double closureDefect(const PlanarSystem& sys, double x0, double y0, const IntegratorConfig& cfg) {
    return (rayReturnTime(sys, x0, y0, cfg).endpoint - State(x0, y0)).norm();
}

double closureGrowth(const PlanarSystem& sys, double x0, double y0, const IntegratorConfig& cfg) {
    return rayReturnTime(sys, x0, y0, cfg).endpoint.norm() - State(x0, y0).norm();
}

BinaryForm<double> caseIPartnerQuartic(double d, double e, double g, double h) {
    Coefficients<double> c(5);
    c << e, -4.0 * d, 0.0, 4.0 * h, -g;
    return BinaryForm<double>(std::move(c));
}

BoundaryCurve boundaryCurve(double d, double e, double g, double h, int n) {
    if (n < 64) throw std::invalid_argument("boundaryCurve needs at least 64 grid points");
    const BinaryForm<double> q = caseIPartnerQuartic(d, e, g, h);
    auto value = [&](double phi) { return q.onCircle(phi); };

    constexpr int kDense = 4096;
    std::vector<double> dense(kDense);
    for (int i = 0; i < kDense; ++i) dense[i] = value(kTwoPi * i / kDense);
    const double sampledMax = *std::max_element(dense.begin(), dense.end());
    const double spread = sampledMax - *std::min_element(dense.begin(), dense.end());

    // Refine every sampled local maximum that could be global.
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<std::pair<double, double>> peaks;
    for (int i = 0; i < kDense; ++i) {
        const double prev = dense[(i + kDense - 1) % kDense], next = dense[(i + 1) % kDense];
        if (dense[i] < prev || dense[i] < next) continue;
        if (dense[i] < sampledMax - 1e-3 * std::max(spread, 1e-300)) continue;
        double lo = kTwoPi * (i - 1) / kDense, hi = kTwoPi * (i + 1) / kDense;
        while (hi - lo > 1e-12) {
            const double m1 = hi - invPhi * (hi - lo), m2 = lo + invPhi * (hi - lo);
            if (value(m1) < value(m2)) lo = m1;
            else hi = m2;
        }
        double phi = std::fmod(0.5 * (lo + hi) + kTwoPi, kTwoPi);
        peaks.emplace_back(phi, value(phi));
    }

    BoundaryCurve out;
    out.c0 = sampledMax;
    for (const auto& [phi, v] : peaks) out.c0 = std::max(out.c0, v);
    if (out.c0 <= 1e-12) throw InapplicableBoundary(out.c0);

    const double tol = 1e-10 * std::max(1.0, std::abs(out.c0));
    std::sort(peaks.begin(), peaks.end());
    for (const auto& [phi, v] : peaks) {
        if (v < out.c0 - tol) continue;
        auto near = [&](double other) {
            const double gap = std::abs(phi - other);
            return std::min(gap, kTwoPi - gap) < 1e-6;
        };
        if (std::none_of(out.maximizers.begin(), out.maximizers.end(), near)) out.maximizers.push_back(phi);
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double phi = kTwoPi * i / n;
        const double gap = out.c0 - value(phi);
        out.samples.push_back({phi, gap > 0.0 ? std::pow(gap, -0.25) : inf});
    }
    // a maximizer on a grid angle marks that sample instead of duplicating it
    for (double phi : out.maximizers) {
        const double slot = std::round(phi * n / kTwoPi);
        if (std::abs(phi - kTwoPi * slot / n) < 1e-6) out.samples[static_cast<int>(slot) % n].rho = inf;
        else out.samples.push_back({phi, inf});
    }
    std::stable_sort(out.samples.begin(), out.samples.end(),
                     [](const BoundarySample& a, const BoundarySample& b) { return a.phi < b.phi; });
    return out;
}

std::string typeName(BType t) {
    switch (t) {
    case BType::B2: return "B2";
    case BType::B4: return "B4";
    case BType::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

CenterTypeVerdict egRule(double e, double g) { return {e * g >= 0.0 ? BType::B2 : BType::B4, EgRule{}}; }

CenterTypeVerdict countMaximizers(double d, double e, double g, double h) {
    try {
        const BoundaryCurve curve = boundaryCurve(d, e, g, h);
        const int k = static_cast<int>(curve.maximizers.size());
        if (k == 2) return {BType::B2, MaximizerCount{k}};
        if (k == 4) return {BType::B4, MaximizerCount{k}};
        return {BType::Unknown, Inapplicable{"unexpected maximizer count " + std::to_string(k)}};
    } catch (const InapplicableBoundary& ex) {
        return {BType::Unknown, Inapplicable{ex.what()}};
    }
}

} // namespace

CenterTypeVerdict centerType(const quintic::QuinticParams& params, const quintic::CenterCase& center) {
    using quintic::CaseTag;
    quintic::checkCaseShape(params, center.tag);
    const auto v = params.rationals();
    auto num = [&](char name) { return v[name - 'a'].toDouble(); };
    switch (center.tag) {
    case CaseTag::I: return countMaximizers(num('d'), num('e'), num('g'), num('h'));
    case CaseTag::II:
        // The eg rule is stated after scaling b to 1; at b = 0 the system also
        // lies in the first case and the boundary is counted directly.
        if (v[1].isZero()) return countMaximizers(0.0, num('e'), num('g'), 0.0);
        return egRule(num('e'), num('g'));
    case CaseTag::III: {
        const quintic::RotationData rot = quintic::rotateToCanonical(params);
        if (std::abs(rot.b1) < 1e-12) return countMaximizers(0.0, rot.e1, rot.g1, 0.0);
        return egRule(rot.e1, rot.g1);
    }
    }
    throw std::logic_error("unknown case");
}

double conservationDrift(const quintic::IntegralEvaluator& h, const Trajectory& traj) {
    if (traj.samples.empty()) throw std::invalid_argument("conservationDrift needs a nonempty trajectory");
    auto at = [&](const Sample& s) {
        const double v = h(s.z.x(), s.z.y());
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "first integral undefined at t=" << s.t << " (" << s.z.x() << ", " << s.z.y() << ")";
            throw structure::DomainError(msg.str());
        }
        return v;
    };
    const double h0 = at(traj.samples.front());
    if (h0 == 0.0) throw structure::DomainError("first integral vanishes at the start; relative drift undefined");
    double drift = 0.0;
    for (const Sample& s : traj.samples) drift = std::max(drift, std::abs(at(s) - h0) / std::abs(h0));
    return drift;
}

} // namespace isoc::orbits
