#include "pnindex/serialize.hpp"

#include <stdexcept>

#include <json.hpp>

namespace pnindex {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw std::invalid_argument(field + ": " + what);
}

double get_number(const json& j, const std::string& field) {
    if (!j.contains(field)) fail(field, "missing");
    const json& v = j.at(field);
    if (!v.is_number()) fail(field, "must be a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& field) {
    if (!j.contains(field)) fail(field, "missing");
    const json& v = j.at(field);
    if (!v.is_number_integer()) fail(field, "must be an integer");
    return v.get<int>();
}

VecD get_array(const json& j, const std::string& field) {
    if (!j.contains(field)) fail(field, "missing");
    const json& v = j.at(field);
    if (!v.is_array()) fail(field, "must be an array of numbers");
    VecD out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number()) fail(field, "must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

json pair_json(const DualPair& p) {
    json j;
    j["point"] = {p.point.x, p.point.y};
    j["functional"] = {p.functional.x, p.functional.y};
    j["pairing"] = p.pairing;
    return j;
}

json poly_json(const VectorHomoPoly& P) {
    json j;
    j["degree"] = P.degree();
    j["p1"] = P.p1.coeffs();
    j["p2"] = P.p2.coeffs();
    return j;
}

json index_json(const IndexEstimate& est, const Norm& norm) {
    json j;
    j["schema"] = 1;
    j["k"] = est.k;
    j["norm"] = norm.name();
    j["value"] = est.value;
    j["best"] = poly_json(est.best);
    j["starts"] = est.starts;
    j["evals"] = est.evals;
    j["seed"] = est.seed;
    return j;
}

json witness_json(const MidpointWitness& w) {
    json j;
    j["u"] = {w.u.x, w.u.y};
    j["v"] = {w.v.x, w.v.y};
    j["lambda"] = w.lambda;
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    j["margin"] = w.margin();
    return j;
}

} // namespace

std::string norm_to_json(const Norm& norm) {
    json j;
    json params;
    struct V {
        json& j;
        json& params;
        void operator()(const LpParams& s) const {
            j["variant"] = "lp";
            params["p"] = s.p;
            params["d"] = s.d;
        }
        void operator()(const PolyhedralParams& s) const {
            j["variant"] = "polyhedral";
            params["kind"] = s.kind == PolyhedralKind::L1 ? "l1" : "linf";
        }
        void operator()(const BetaQuarticParams& s) const {
            j["variant"] = "beta-quartic";
            params["beta"] = s.beta;
        }
        void operator()(const AsymAParams& s) const {
            j["variant"] = "asym-a";
            params["a"] = s.a;
        }
        void operator()(const InterpSymParams& s) const {
            j["variant"] = "interp-sym";
            params["m"] = s.m;
            params["theta"] = s.theta;
        }
        void operator()(const GeomMeanParams& s) const {
            j["variant"] = "geom-mean";
            params["p0"] = s.p0;
            params["p1"] = s.p1;
            params["theta"] = s.theta;
        }
        void operator()(const EpsGeomMeanParams& s) const {
            j["variant"] = "eps-geom-mean";
            params["theta"] = s.theta;
            params["eps"] = s.eps;
        }
    };
    std::visit(V{j, params}, norm.spec());
    j["params"] = std::move(params);
    return j.dump();
}

Norm norm_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("norm", "invalid JSON");
    if (!j.is_object()) fail("norm", "must be an object");
    if (!j.contains("variant")) fail("variant", "missing");
    if (!j.at("variant").is_string()) fail("variant", "must be a string");
    const std::string variant = j.at("variant").get<std::string>();
    const json params = j.value("params", json::object());
    if (!params.is_object()) fail("params", "must be an object");

    if (variant == "lp") {
        const double p = get_number(params, "p");
        const int d = params.contains("d") ? get_int(params, "d") : 2;
        return Norm::lp(p, d);
    }
    if (variant == "polyhedral") {
        if (!params.contains("kind")) fail("params.kind", "missing");
        const std::string kind = params.at("kind").is_string() ? params.at("kind").get<std::string>() : "";
        if (kind == "l1") return Norm::l1();
        if (kind == "linf") return Norm::linf();
        fail("params.kind", "must be \"l1\" or \"linf\"");
    }
    if (variant == "beta-quartic") return Norm::beta_quartic(get_number(params, "beta"));
    if (variant == "asym-a") return Norm::asym_a(get_number(params, "a"));
    if (variant == "interp-sym")
        return Norm::interp_sym(get_int(params, "m"), get_number(params, "theta"));
    if (variant == "geom-mean")
        return Norm::geom_mean(get_number(params, "p0"), get_number(params, "p1"),
                               get_number(params, "theta"));
    if (variant == "eps-geom-mean")
        return Norm::eps_geom_mean(get_number(params, "theta"), get_number(params, "eps"));
    fail("variant", "unknown value \"" + variant + "\"");
}

std::string poly_to_json(const VectorHomoPoly& P) { return poly_json(P).dump(); }

VectorHomoPoly poly_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("polynomial", "invalid JSON");
    if (!j.is_object()) fail("polynomial", "must be an object");
    const int degree = get_int(j, "degree");
    if (degree < 1) fail("degree", "must be >= 1");
    VecD c1 = get_array(j, "p1");
    VecD c2 = get_array(j, "p2");
    if (static_cast<int>(c1.size()) != degree + 1) fail("p1", "needs degree+1 coefficients");
    if (static_cast<int>(c2.size()) != degree + 1) fail("p2", "needs degree+1 coefficients");
    return {ScalarHomoPoly(degree, std::move(c1)), ScalarHomoPoly(degree, std::move(c2))};
}

std::string radius_to_json(const RadiusEstimate& est) {
    json j;
    j["schema"] = 1;
    j["value"] = est.value;
    json w = pair_json(est.witness);
    w["angle"] = est.witness_angle;
    w["value"] = est.pairing;
    j["witness"] = std::move(w);
    j["grid"] = est.grid;
    j["tol"] = est.refined_tol;
    return j.dump();
}

std::string zero_check_to_json(const ZeroCheck& chk, double tol) {
    json j;
    j["schema"] = 1;
    j["zero"] = chk.zero;
    j["max_pairing"] = chk.max_pairing;
    j["tol"] = tol;
    return j.dump();
}

std::string index_to_json(const IndexEstimate& est, const Norm& norm) {
    return index_json(est, norm).dump();
}

std::string min_degree_to_json(const MinDegreeResult& res, const Norm& norm) {
    json j;
    j["schema"] = 1;
    j["found"] = res.found;
    if (res.found) j["k0"] = res.k0;
    else j["k0"] = nullptr;
    json per = json::array();
    for (const IndexEstimate& est : res.per_k) per.push_back(index_json(est, norm));
    j["per_k"] = std::move(per);
    return j.dump();
}

std::string monotonicity_to_json(const MonotonicityReport& rep, const Norm& norm) {
    json j;
    j["schema"] = 1;
    json entries = json::array();
    for (const IndexEstimate& est : rep.entries) entries.push_back(index_json(est, norm));
    j["entries"] = std::move(entries);
    j["violations"] = rep.violations;
    j["tol"] = rep.tol;
    return j.dump();
}

std::string convexity_to_json(const ConvexityReport& rep) {
    json j;
    j["schema"] = 1;
    j["verdict"] = rep.certified ? "certified-convex-on-grid" : "violation-found";
    if (rep.witness) j["witness"] = witness_json(*rep.witness);
    else j["witness"] = nullptr;
    j["grid"] = rep.grid;
    j["min_hessian_eig"] = rep.min_hessian_eig;
    return j.dump();
}

std::string beta_to_json(const BetaClassification& cls) {
    json j;
    j["schema"] = 1;
    j["beta"] = cls.beta;
    j["is_norm"] = cls.is_norm;
    j["route"] = cls.route;
    j["identity_error"] = cls.identity_error;
    if (cls.witness) j["witness"] = witness_json(*cls.witness);
    else j["witness"] = nullptr;
    return j.dump();
}

std::string eps_to_json(const EpsCounterexample& ex) {
    json j;
    j["schema"] = 1;
    j["found"] = ex.found;
    if (ex.found) {
        j["eps"] = ex.eps;
        j["n11"] = ex.n11;
        j["n10"] = ex.n10;
        j["n01"] = ex.n01;
    } else {
        j["eps"] = nullptr;
    }
    return j.dump();
}

std::string samples_to_json(const std::vector<double>& samples) {
    json j;
    j["schema"] = 1;
    j["samples"] = samples;
    return j.dump();
}

} // namespace pnindex
