#include "isoc/cli.hpp"

#include "isoc/lyapunov.hpp"
#include "isoc/orbits.hpp"
#include "isoc/parser.hpp"
#include "isoc/quintic.hpp"
#include "isoc/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace isoc::cli {

using Json = nlohmann::ordered_json;

namespace {

const std::string kParamNames = "abcdefgh";

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> splitCommas(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.emplace_back(text.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parseNumber(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("malformed number for " + what + ": '" + text + "'");
    return v;
}

// Thrown for bad user input; maps to exit 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::string verdict;
    std::vector<std::string> lines;
    std::optional<double> elapsedMs;

    void line(std::string s) { lines.push_back(std::move(s)); }

    void emit(std::ostream& out, bool json) const {
        if (json) {
            Json j;
            j["command"] = command;
            j["inputs"] = inputs;
            j["verdict"] = verdict;
            j["outputs"] = outputs;
            if (elapsedMs) j["elapsed_ms"] = *elapsedMs;
            out << j.dump(2) << '\n';
            return;
        }
        for (const std::string& l : lines) out << l << '\n';
        if (elapsedMs) out << "elapsed-ms = " << num(*elapsedMs) << '\n';
    }
};

struct SystemArgs {
    std::string systemPath;
    std::string familyList;
};

struct LoadedSystem {
    PlanarSystem system;
    std::optional<quintic::QuinticParams> params;
    Json echo;
};

void addSystemOptions(CLI::App* sub, SystemArgs& a, bool required = true) {
    auto* g = sub->add_option_group("system");
    g->add_option("--system", a.systemPath, "SystemDocument JSON file");
    g->add_option("--family", a.familyList, "a,b,c,d,e,f,g,h as expressions");
    if (required) g->require_option(1);
    else g->require_option(0, 1);
}

quintic::QuinticParams paramsFrom(const std::vector<Poly>& values) {
    quintic::QuinticParams p;
    for (std::size_t i = 0; i < 8; ++i) p.values[i] = values[i];
    return p;
}

LoadedSystem load(const SystemArgs& a) {
    LoadedSystem out;
    if (!a.familyList.empty()) {
        const auto values = parseFamilyList(a.familyList);
        out.params = paramsFrom(values);
        out.system = quintic::buildSystem(*out.params);
        out.echo["family"] = out.params->toString();
    } else {
        const SystemDocument doc = parseSystemDocument(readFile(a.systemPath));
        std::map<Var, Poly> binds;
        for (const auto& [v, r] : doc.bindings) binds[v] = Poly(r);
        if (doc.family) {
            auto values = *doc.family;
            for (Poly& v : values) v = substitute(v, binds);
            out.params = paramsFrom(values);
            out.system = quintic::buildSystem(*out.params);
            out.echo["family"] = out.params->toString();
        } else {
            out.system = substitute(doc.system, binds);
        }
        out.echo["document"] = a.systemPath;
    }
    out.echo["p"] = out.system.p.toString();
    out.echo["q"] = out.system.q.toString();
    return out;
}

void writeCsv(const std::string& path, const std::string& header, const std::vector<std::vector<double>>& rows) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << num(row[i]);
        f << '\n';
    }
}

// ---- commands ----

int cmdPlconst(const SystemArgs& sa, int m, Report& r) {
    const LoadedSystem ls = load(sa);
    r.inputs = ls.echo;
    r.inputs["m"] = m;
    const lyapunov::LyapunovReport rep = lyapunov::plConstants(ls.system, m);
    Json list = Json::array();
    for (std::size_t i = 0; i < rep.constants.size(); ++i) {
        const std::string text = rep.constants[i].toString();
        r.line("D" + std::to_string(i + 1) + " = " + text);
        list.push_back(text);
    }
    r.outputs["constants"] = list;
    if (rep.firstNonzeroIndex) {
        r.verdict = "FOCUS k=" + std::to_string(*rep.firstNonzeroIndex) + " sign=" + lyapunov::signChar(*rep.sign);
        r.line("first nonzero: D" + std::to_string(*rep.firstNonzeroIndex) + " sign=" + lyapunov::signChar(*rep.sign));
    } else {
        r.verdict = "computed";
    }
    return kOk;
}

std::string evidenceText(const orbits::CenterTypeVerdict& v) {
    if (std::holds_alternative<orbits::EgRule>(v.evidence)) return "eg-rule";
    if (const auto* c = std::get_if<orbits::MaximizerCount>(&v.evidence)) return "maximizers=" + std::to_string(c->k);
    return "inapplicable: " + std::get<orbits::Inapplicable>(v.evidence).reason;
}

int cmdClassify(const SystemArgs& sa, int m, Report& r) {
    const LoadedSystem ls = load(sa);
    if (!ls.params) throw InputError("classify needs family parameters");
    if (!ls.params->isNumeric()) throw InputError("classify needs numeric parameters, got " + ls.params->toString());
    r.inputs = ls.echo;
    r.inputs["m"] = m;
    const quintic::Classification c = quintic::classify(*ls.params, m);
    if (const auto* center = std::get_if<quintic::Center>(&c)) {
        r.verdict = "CENTER case=" + quintic::caseName(center->center.tag);
        r.line(r.verdict);
        const orbits::CenterTypeVerdict t = orbits::centerType(*ls.params, center->center);
        r.line("type=" + orbits::typeName(t.tag) + " (" + evidenceText(t) + ")");
        r.outputs["type"] = orbits::typeName(t.tag);
        r.outputs["type_evidence"] = evidenceText(t);
        return kOk;
    }
    if (const auto* focus = std::get_if<quintic::Focus>(&c)) {
        r.verdict = "FOCUS k=" + std::to_string(focus->order.index) + " sign=" + lyapunov::signChar(focus->order.sign);
        r.line(r.verdict);
        return kNegative;
    }
    r.verdict = "UNDETERMINED";
    r.line(r.verdict + " (D1..D" + std::to_string(std::get<quintic::Undetermined>(c).constantsChecked) +
           " vanish, no listed case matches)");
    return kNegative;
}

struct VerifyArgs {
    std::string kind;
    std::string partnerPath;
    std::string caseName;
    std::string curve, cofactor;
    std::string integral, denominator;
    std::string line, constraint, slope = "s";
};

quintic::CaseTag caseFromText(const std::string& s) {
    if (s == "i") return quintic::CaseTag::I;
    if (s == "ii") return quintic::CaseTag::II;
    if (s == "iii") return quintic::CaseTag::III;
    throw InputError("unknown case '" + s + "' (expected i, ii or iii)");
}

quintic::CaseTag caseFor(const LoadedSystem& ls, const VerifyArgs& va, const std::string& what) {
    if (!va.caseName.empty()) return caseFromText(va.caseName);
    if (!ls.params) throw InputError(what + " needs family parameters or an explicit input");
    const auto c = quintic::theoremCase(*ls.params);
    if (!c) throw InputError("parameters match no listed center case; pass --case");
    return c->tag;
}

int verdictFrom(Report& r, bool pass, const std::vector<std::pair<std::string, Poly>>& residuals) {
    r.verdict = pass ? "PASS" : "FAIL";
    r.line(r.verdict);
    Json res = Json::object();
    for (const auto& [name, p] : residuals) {
        r.line(name + " = " + truncatedText(p));
        res[name] = p.toString();
    }
    r.outputs["residuals"] = res;
    return pass ? kOk : kNegative;
}

int cmdVerify(const SystemArgs& sa, const VerifyArgs& va, Report& r) {
    const LoadedSystem ls = load(sa);
    r.inputs = ls.echo;
    r.inputs["kind"] = va.kind;

    if (va.kind == "form1") {
        const Poly res = structure::angularSpeedResidual(ls.system);
        return verdictFrom(r, res.isZero(), {{"residual", res}});
    }
    if (va.kind == "commute") {
        PlanarSystem partner;
        if (!va.partnerPath.empty()) {
            const SystemDocument doc = parseSystemDocument(readFile(va.partnerPath));
            std::map<Var, Poly> binds;
            for (const auto& [v, q] : doc.bindings) binds[v] = Poly(q);
            partner = substitute(doc.system, binds);
            r.inputs["partner"] = va.partnerPath;
        } else {
            const quintic::CaseTag tag = caseFor(ls, va, "commute");
            partner = quintic::commutingPartner(*ls.params, tag);
            r.inputs["case"] = quintic::caseName(tag);
        }
        r.outputs["partner_p"] = partner.p.toString();
        r.outputs["partner_q"] = partner.q.toString();
        r.line("partner = (" + partner.p.toString() + ", " + partner.q.toString() + ")");
        const structure::Bracket b = structure::lieBracket(ls.system, partner);
        return verdictFrom(r, b.isZero(), {{"residual.p", b.first}, {"residual.q", b.second}});
    }
    if (va.kind == "invariant") {
        if (va.curve.empty()) throw InputError("verify invariant needs --curve");
        const Poly curve = parseExpr(va.curve);
        r.inputs["curve"] = curve.toString();
        Poly cofactor;
        if (!va.cofactor.empty()) {
            cofactor = parseExpr(va.cofactor);
            r.inputs["cofactor"] = cofactor.toString();
        } else {
            const auto k = structure::cofactorOf(ls.system, curve);
            if (!k) {
                r.line("cofactor = none (curve does not divide its derivative)");
                r.outputs["cofactor"] = nullptr;
                return verdictFrom(r, false, {{"residual", lieDerivative(ls.system, curve)}});
            }
            cofactor = *k;
        }
        r.line("cofactor = " + cofactor.toString());
        r.outputs["cofactor"] = cofactor.toString();
        const Poly res = structure::certificateResidual(ls.system, structure::AlgebraicInvariant{curve, cofactor});
        return verdictFrom(r, res.isZero(), {{"residual", res}});
    }
    if (va.kind == "integral") {
        if (!va.integral.empty()) {
            const Poly n = parseExpr(va.integral);
            const Poly d = va.denominator.empty() ? Poly(1) : parseExpr(va.denominator);
            if (d.isZero()) throw InputError("integral denominator is zero");
            const RationalFunction h(n, d);
            r.inputs["integral"] = h.toString();
            const Poly res = structure::rationalIntegralResidual(ls.system, h);
            return verdictFrom(r, res.isZero(), {{"residual", res}});
        }
        const quintic::CaseTag tag = caseFor(ls, va, "integral");
        const quintic::FirstIntegralSpec spec = quintic::firstIntegral(*ls.params, tag);
        r.inputs["case"] = quintic::caseName(tag);
        if (const auto* h = std::get_if<RationalFunction>(&spec.payload)) {
            r.line("H = " + h->toString());
            r.outputs["integral"] = h->toString();
            const Poly res = structure::rationalIntegralResidual(spec.system, *h);
            return verdictFrom(r, res.isZero(), {{"residual", res}});
        }
        if (const auto* cand = std::get_if<structure::DarbouxCandidate>(&spec.payload)) {
            r.line("H = Darboux product");
            r.outputs["integral"] = "darboux";
            const structure::DarbouxVerdict v = structure::verifyDarbouxIntegral(spec.system, *cand);
            return verdictFrom(r, v.certified, {{"residual", v.residual}});
        }
        throw InputError("this parameter point has only a numeric integral; pass --integral");
    }
    if (va.kind == "reversible") {
        if (!va.constraint.empty()) {
            const Poly c = parseExpr(va.constraint);
            r.inputs["constraint"] = c.toString();
            r.inputs["slope"] = va.slope;
            const structure::ReversibilityVerdict v = structure::reversibleModuloConstraint(ls.system, c, va.slope);
            return verdictFrom(r, v.reversible, {{"residual", v.witness}});
        }
        if (va.line.empty()) throw InputError("verify reversible needs --line or --constraint");
        const auto parts = splitCommas(va.line);
        if (parts.size() != 2) throw InputError("--line takes alpha,beta");
        const Poly alpha = parseExpr(parts[0]), beta = parseExpr(parts[1]);
        r.inputs["line"] = alpha.toString() + "," + beta.toString();
        const Poly res = structure::reversibilityResidual(ls.system, alpha, beta);
        return verdictFrom(r, res.isZero(), {{"residual", res}});
    }
    throw InputError("unknown verify kind '" + va.kind + "'");
}

struct OrbitArgs {
    double x0 = 0.0, y0 = 0.0;
    double tEnd = 2.0 * std::numbers::pi;
    double tol = 1e-10;
    double maxStep = 0.0;
    double step = 1e-3;
    std::string method = "dp45";
    std::string out;
};

int cmdOrbit(const SystemArgs& sa, const OrbitArgs& oa, Report& r) {
    const LoadedSystem ls = load(sa);
    orbits::IntegratorConfig cfg;
    if (oa.method == "rk4") cfg.method = orbits::Method::FixedRK4;
    else if (oa.method != "dp45") throw InputError("unknown method '" + oa.method + "' (rk4 or dp45)");
    cfg.relTol = cfg.absTol = oa.tol;
    cfg.fixedStep = oa.step;
    if (oa.maxStep > 0) cfg.maxStep = oa.maxStep;
    if (!(oa.tol > 0 && oa.step > 0 && oa.tEnd > 0)) throw InputError("--tol, --step and --tend must be positive");
    try {
        orbits::VectorField<double>::fromSystem(ls.system);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    r.inputs = ls.echo;
    r.inputs["x0"] = oa.x0;
    r.inputs["y0"] = oa.y0;
    r.inputs["tend"] = oa.tEnd;
    r.inputs["tol"] = oa.tol;
    r.inputs["method"] = oa.method;

    orbits::Trajectory traj;
    try {
        traj = orbits::integrate(ls.system, oa.x0, oa.y0, oa.tEnd, cfg);
    } catch (const std::runtime_error& e) {
        r.verdict = "FAILED";
        r.line(std::string("integration failed: ") + e.what());
        r.outputs["error"] = e.what();
        return kNegative;
    }
    if (!oa.out.empty()) {
        std::vector<std::vector<double>> rows;
        rows.reserve(traj.samples.size());
        for (const orbits::Sample& s : traj.samples) rows.push_back({s.t, s.z.x(), s.z.y()});
        writeCsv(oa.out, "t,x,y", rows);
    }
    const orbits::Sample& last = traj.samples.back();
    r.verdict = traj.truncated ? "TRUNCATED" : "OK";
    r.line("samples = " + std::to_string(traj.samples.size()) + (traj.truncated ? " (truncated at maxSteps)" : ""));
    r.line("final = " + num(last.t) + " " + num(last.z.x()) + " " + num(last.z.y()));
    r.outputs["samples"] = traj.samples.size();
    r.outputs["final"] = {last.t, last.z.x(), last.z.y()};

    if (!structure::angularSpeedResidual(ls.system).isZero()) {
        r.line("ray-return = n/a (angular speed is not constant)");
        r.outputs["ray_return"] = nullptr;
        return kOk;
    }
    try {
        const orbits::RayReturn rr = orbits::rayReturnTime(ls.system, oa.x0, oa.y0, cfg);
        const double defect = (rr.endpoint - orbits::State(oa.x0, oa.y0)).norm();
        const double growth = rr.endpoint.norm() - std::hypot(oa.x0, oa.y0);
        r.line("ray-return time = " + num(rr.period));
        r.line("closure defect = " + num(defect));
        r.line("closure growth = " + num(growth));
        r.outputs["ray_return"] = {{"time", rr.period}, {"closure_defect", defect}, {"closure_growth", growth}};
    } catch (const std::exception& e) {
        // foci may leave every bounded region before returning; still a valid run
        r.line(std::string("ray-return = n/a (") + e.what() + ")");
        r.outputs["ray_return"] = nullptr;
        r.outputs["ray_return_error"] = e.what();
    }
    return kOk;
}

int cmdBoundary(const std::string& paramsText, int n, const std::string& outPath, Report& r) {
    const auto parts = splitCommas(paramsText);
    if (parts.size() != 4) throw InputError("--params takes d,e,g,h");
    std::array<double, 4> v{};
    for (int i = 0; i < 4; ++i) v[i] = parseNumber(parts[i], "--params");
    if (n < 64) throw InputError("-n must be at least 64");
    r.inputs["params"] = {{"d", v[0]}, {"e", v[1]}, {"g", v[2]}, {"h", v[3]}};
    r.inputs["n"] = n;
    orbits::BoundaryCurve curve;
    try {
        curve = orbits::boundaryCurve(v[0], v[1], v[2], v[3], n);
    } catch (const orbits::InapplicableBoundary& e) {
        r.verdict = "INAPPLICABLE";
        r.line(e.what());
        r.outputs["c0"] = e.c0;
        return kNegative;
    }
    if (!outPath.empty()) {
        std::vector<std::vector<double>> rows;
        for (const orbits::BoundarySample& s : curve.samples) rows.push_back({s.phi, s.rho});
        writeCsv(outPath, "phi,rho", rows);
    }
    const int k = static_cast<int>(curve.maximizers.size());
    const orbits::BType t = k == 2 ? orbits::BType::B2 : k == 4 ? orbits::BType::B4 : orbits::BType::Unknown;
    r.verdict = orbits::typeName(t);
    r.line("c0 = " + num(curve.c0));
    r.line("maximizers = " + std::to_string(k));
    r.line("type = " + orbits::typeName(t));
    r.outputs["c0"] = curve.c0;
    r.outputs["maximizers"] = curve.maximizers;
    r.outputs["type"] = orbits::typeName(t);
    return kOk;
}

} // namespace

std::vector<Poly> parseFamilyList(std::string_view list) {
    const auto parts = splitCommas(list);
    if (parts.size() != 8) throw std::invalid_argument("--family takes eight comma-separated entries a..h");
    std::vector<Poly> out;
    for (const std::string& p : parts) out.push_back(parseExpr(p));
    return out;
}

SystemDocument parseSystemDocument(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("system document must be a JSON object");
    auto str = [&](const std::string& key) {
        if (!j[key].is_string()) throw std::invalid_argument("'" + key + "' must be a string");
        return j[key].get<std::string>();
    };
    SystemDocument doc;
    const bool pq = j.contains("p") || j.contains("q");
    const bool fam = j.contains("family");
    for (const auto& [key, value] : j.items()) {
        const bool param = key.size() == 1 && kParamNames.find(key[0]) != std::string::npos;
        if (key == "p" || key == "q" || key == "family" || key == "bindings" || (param && fam)) continue;
        throw std::invalid_argument("unknown key '" + key + "' in system document");
    }
    if (pq == fam) throw std::invalid_argument("system document needs either p and q or family");
    if (pq) {
        if (!j.contains("p") || !j.contains("q")) throw std::invalid_argument("system document needs both p and q");
        doc.system = {parseExpr(str("p")), parseExpr(str("q"))};
    } else {
        if (str("family") != "quintic-uic") throw std::invalid_argument("unknown family '" + str("family") + "'");
        std::vector<Poly> values;
        // a missing parameter stays symbolic
        for (char c : kParamNames) {
            const std::string key(1, c);
            values.push_back(j.contains(key) ? parseExpr(str(key)) : Poly::var(key));
        }
        doc.family = values;
        quintic::QuinticParams p;
        for (std::size_t i = 0; i < 8; ++i) p.values[i] = values[i];
        doc.system = quintic::buildSystem(p);
    }
    if (j.contains("bindings")) {
        if (!j["bindings"].is_object()) throw std::invalid_argument("'bindings' must be an object");
        for (const auto& [key, value] : j["bindings"].items()) {
            if (!value.is_string()) throw std::invalid_argument("binding for '" + key + "' must be a string");
            doc.bindings[key] = Rational::parse(value.get<std::string>());
        }
    }
    return doc;
}

std::string truncatedText(const Poly& p, std::size_t maxTerms) {
    if (p.size() <= maxTerms) return p.toString();
    Poly head;
    std::size_t i = 0;
    for (const auto& [m, c] : p.terms()) {
        if (i++ == maxTerms) break;
        head.addTerm(m, c);
    }
    return head.toString() + " + ... (" + std::to_string(p.size() - maxTerms) + " more terms)";
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Poincare-Lyapunov constants and center checks for planar polynomial systems", "isoc"};
    app.require_subcommand(1);
    app.fallthrough();  // --json and --timings may follow the subcommand
    bool json = false, timings = false;
    app.add_flag("--json", json, "emit the report as JSON");
    app.add_flag("--timings", timings, "append elapsed time (breaks byte-identical output)");

    SystemArgs plSys, clSys, vSys, oSys;
    int plM = 4, clM = 4;
    auto* pl = app.add_subcommand("plconst", "print D1..Dm");
    addSystemOptions(pl, plSys);
    pl->add_option("-m", plM, "number of constants")->required();

    auto* cl = app.add_subcommand("classify", "center or focus verdict for numeric a..h");
    addSystemOptions(cl, clSys);
    cl->add_option("-m", clM, "constants to inspect");

    VerifyArgs va;
    auto* ve = app.add_subcommand("verify", "structural certificates");
    ve->add_option("kind", va.kind, "commute|invariant|integral|reversible|form1")
        ->required()
        ->check(CLI::IsMember({"commute", "invariant", "integral", "reversible", "form1"}));
    addSystemOptions(ve, vSys);
    ve->add_option("--partner", va.partnerPath, "partner SystemDocument (commute)");
    ve->add_option("--case", va.caseName, "i, ii or iii");
    ve->add_option("--curve", va.curve, "invariant curve (invariant)");
    ve->add_option("--cofactor", va.cofactor, "claimed cofactor (invariant)");
    ve->add_option("--integral", va.integral, "integral numerator (integral)");
    ve->add_option("--denominator", va.denominator, "integral denominator (integral)");
    ve->add_option("--line", va.line, "alpha,beta for the line alpha x + beta y = 0 (reversible)");
    ve->add_option("--constraint", va.constraint, "polynomial in the slope (reversible)");
    ve->add_option("--slope", va.slope, "slope symbol for --constraint");

    OrbitArgs oa;
    std::string x0Text, y0Text, tEndText, tolText, maxStepText, stepText;
    auto* orb = app.add_subcommand("orbit", "integrate one orbit");
    addSystemOptions(orb, oSys);
    orb->add_option("--x0", x0Text)->required();
    orb->add_option("--y0", y0Text)->required();
    orb->add_option("--tend", tEndText, "default 2 pi");
    orb->add_option("--tol", tolText, "relative and absolute tolerance");
    orb->add_option("--max-step", maxStepText);
    orb->add_option("--step", stepText, "fixed step for rk4");
    orb->add_option("--method", oa.method, "dp45 or rk4");
    orb->add_option("--out", oa.out, "CSV path");

    std::string bParams, bOut;
    int bN = 360;
    auto* bo = app.add_subcommand("boundary", "period annulus boundary in the partner's coordinates");
    bo->add_option("--params", bParams, "d,e,g,h")->required();
    bo->add_option("-n", bN, "grid size");
    bo->add_option("--out", bOut, "CSV path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    Report r;
    const auto start = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        if (pl->parsed()) {
            r.command = "plconst";
            code = cmdPlconst(plSys, plM, r);
        } else if (cl->parsed()) {
            r.command = "classify";
            code = cmdClassify(clSys, clM, r);
        } else if (ve->parsed()) {
            r.command = "verify";
            code = cmdVerify(vSys, va, r);
        } else if (orb->parsed()) {
            r.command = "orbit";
            oa.x0 = parseNumber(x0Text, "--x0");
            oa.y0 = parseNumber(y0Text, "--y0");
            if (!tEndText.empty()) oa.tEnd = parseNumber(tEndText, "--tend");
            if (!tolText.empty()) oa.tol = parseNumber(tolText, "--tol");
            if (!maxStepText.empty()) oa.maxStep = parseNumber(maxStepText, "--max-step");
            if (!stepText.empty()) oa.step = parseNumber(stepText, "--step");
            code = cmdOrbit(oSys, oa, r);
        } else {
            r.command = "boundary";
            code = cmdBoundary(bParams, bN, bOut, r);
        }
    } catch (const std::exception& e) {
        // parse errors, malformed rationals, unbound symbols, shape violations
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    if (timings)
        r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.emit(out, json);
    return code;
}

} // namespace isoc::cli
