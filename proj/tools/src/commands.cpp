#include "options.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "pnindex/convexity.hpp"
#include "pnindex/index_search.hpp"
#include "pnindex/numrange.hpp"
#include "pnindex/serialize.hpp"

namespace pncli {

using json = nlohmann::ordered_json;
using namespace pnindex;

bool Options::has(const std::string& name) const {
    return std::find(given.begin(), given.end(), name) != given.end();
}

void Options::mark(const std::string& name) {
    if (!has(name)) given.push_back(name);
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double num_field(const json& j, const std::string& name) {
    if (!j.is_number()) fail(name + ": expected a number");
    return j.get<double>();
}

int int_field(const json& j, const std::string& name) {
    const double v = num_field(j, name);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) fail(name + ": expected an integer");
    return static_cast<int>(r);
}

} // namespace

std::string emit_table(const std::vector<TableRow>& rows) {
    std::string out = "k,norm,estimate,certified,seed,witness_angle\n";
    for (const TableRow& r : rows) {
        out += std::to_string(r.k);
        out += ",\"";
        out += r.norm; // names carry commas (parameter lists), hence the quotes
        out += "\",";
        out += fmt_real(r.estimate);
        out += ',';
        out += r.certified ? "true" : "false";
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        if (r.has_angle) out += fmt_real(r.witness_angle);
        out += '\n';
    }
    return out;
}

void merge_config(Options& opt) {
    std::ifstream in(opt.config_path);
    if (!in) fail("config: cannot open '" + opt.config_path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        fail(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) fail("config: expected a JSON object");

    auto adopt_string = [&](const char* key, std::string& dst) {
        if (!doc.contains(key) || opt.has(key)) return;
        if (!doc[key].is_string()) fail(std::string(key) + ": expected a string");
        dst = doc[key].get<std::string>();
        opt.mark(key);
    };
    auto adopt_num = [&](const char* key, double& dst) {
        if (!doc.contains(key) || opt.has(key)) return;
        dst = num_field(doc[key], key);
        opt.mark(key);
    };
    auto adopt_int = [&](const char* key, int& dst) {
        if (!doc.contains(key) || opt.has(key)) return;
        dst = int_field(doc[key], key);
        opt.mark(key);
    };

    adopt_string("command", opt.command);
    adopt_string("recipe", opt.recipe);
    adopt_string("method", opt.method);
    adopt_string("out", opt.out);
    adopt_string("format", opt.format);

    // norm and polynomial may be inline objects or plain names
    if (doc.contains("norm") && !opt.has("norm")) {
        opt.norm_arg = doc["norm"].is_string() ? doc["norm"].get<std::string>() : doc["norm"].dump();
        opt.mark("norm");
    }
    if (doc.contains("polynomial") && !opt.has("polynomial")) {
        opt.poly_arg = doc["polynomial"].is_string() ? doc["polynomial"].get<std::string>()
                                                     : doc["polynomial"].dump();
        opt.mark("polynomial");
    }

    adopt_num("p", opt.p);
    adopt_int("d", opt.d);
    adopt_num("beta", opt.beta);
    adopt_num("a", opt.a);
    adopt_int("m", opt.m);
    adopt_num("theta", opt.theta);
    adopt_num("p0", opt.p0);
    adopt_num("p1", opt.p1);
    adopt_num("eps", opt.eps);
    adopt_num("tol", opt.tol);
    adopt_int("k", opt.k);
    adopt_int("kmax", opt.kmax);
    adopt_int("grid", opt.grid);
    adopt_int("pairs", opt.pairs);
    adopt_int("starts", opt.starts);
    adopt_int("iterations", opt.iterations);
    if (doc.contains("budget") && doc["budget"].is_object()) {
        const json& b = doc["budget"];
        if (b.contains("starts") && !opt.has("starts")) {
            opt.starts = int_field(b["starts"], "budget.starts");
            opt.mark("starts");
        }
        if (b.contains("iterations") && !opt.has("iterations")) {
            opt.iterations = int_field(b["iterations"], "budget.iterations");
            opt.mark("iterations");
        }
    }
    if (doc.contains("seed") && !opt.has("seed")) {
        if (!doc["seed"].is_number()) fail("seed: expected a number");
        opt.seed = doc["seed"].get<std::uint64_t>();
        opt.mark("seed");
    }
}

Norm build_norm(const Options& opt) {
    if (!opt.has("norm")) fail("norm: required");
    const std::string& s = opt.norm_arg;
    if (!s.empty() && s.front() == '{') return norm_from_json(s);
    auto need = [&](const char* key) {
        if (!opt.has(key)) fail(std::string(key) + ": required for norm '" + s + "'");
    };
    if (s == "lp") {
        need("p");
        return Norm::lp(opt.p, opt.has("d") ? opt.d : 2);
    }
    if (s == "l1") return Norm::l1();
    if (s == "linf") return Norm::linf();
    if (s == "beta-quartic") {
        need("beta");
        return Norm::beta_quartic(opt.beta);
    }
    if (s == "asym-a") {
        need("a");
        return Norm::asym_a(opt.a);
    }
    if (s == "interp-sym") {
        need("m");
        need("theta");
        return Norm::interp_sym(opt.m, opt.theta);
    }
    if (s == "geom-mean") {
        need("p0");
        need("p1");
        need("theta");
        return Norm::geom_mean(opt.p0, opt.p1, opt.theta);
    }
    if (s == "eps-geom-mean") {
        need("theta");
        need("eps");
        return Norm::eps_geom_mean(opt.theta, opt.eps);
    }
    fail("norm: unknown variant '" + s + "'");
}

VectorHomoPoly build_poly(const Options& opt, const Norm& norm) {
    if (!opt.has("polynomial")) fail("polynomial: required");
    const std::string& s = opt.poly_arg;
    if (!s.empty() && s.front() == '{') return poly_from_json(s);
    if (s == "lp-zero") {
        if (!opt.has("p")) fail("p: required for polynomial 'lp-zero'");
        const int p = static_cast<int>(std::round(opt.p));
        if (std::abs(opt.p - p) > 1e-9) fail("p: lp-zero needs an even integer exponent");
        return lp_zero_poly(p);
    }
    if (s == "example8") {
        if (!opt.has("a")) fail("a: required for polynomial 'example8'");
        return asym_zero_poly(opt.a);
    }
    if (s == "example9") {
        if (!opt.has("m") || !opt.has("theta"))
            fail("m, theta: required for polynomial 'example9'");
        return interp_zero_poly(opt.m, opt.theta);
    }
    if (s == "tangent") return tangent_poly(generator_poly(norm), {1.0, 0.0}, {0.0, 1.0});
    fail("polynomial: unknown constructor '" + s + "'");
}

void deliver(const Options& opt, std::string text) {
    if (text.empty() || text.back() != '\n') text += '\n';
    if (opt.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    const std::filesystem::path target(opt.out);
    const std::filesystem::path tmp(opt.out + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) fail("out: cannot open '" + tmp.string() + "' for writing");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) fail("out: write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) fail("out: cannot move temp file onto '" + opt.out + "': " + ec.message());
}

namespace {

void check_common(const Options& opt) {
    if (opt.format != "json" && opt.format != "csv") fail("format: expected 'json' or 'csv'");
    if (opt.tol <= 0) fail("tol: must be positive");
    if (opt.grid < 16) fail("grid: must be >= 16");
    if (opt.starts < 1) fail("starts: must be >= 1");
    if (opt.iterations < 1) fail("iterations: must be >= 1");
}

void need_json_format(const Options& opt, const char* what) {
    if (opt.format == "csv") fail(std::string("format: csv is not available for ") + what);
}

TableRow index_row(const IndexEstimate& est, const Norm& norm, bool certified) {
    return TableRow{est.k, norm.name(), est.value, certified, est.seed, false, 0.0};
}

int cmd_radius(const Options& opt) {
    const Norm norm = build_norm(opt);
    const VectorHomoPoly P = build_poly(opt, norm);
    const RadiusEstimate est = radius(P, norm, opt.tol, opt.grid);
    if (opt.format == "csv") {
        deliver(opt, emit_table({TableRow{P.degree(), norm.name(), est.value,
                                          est.value <= opt.tol, opt.seed, true,
                                          est.witness_angle}}));
    } else {
        deliver(opt, radius_to_json(est));
    }
    return 0;
}

int cmd_index(const Options& opt) {
    const Norm norm = build_norm(opt);
    const Budget budget{opt.starts, opt.iterations};
    if (opt.has("kmax")) {
        const MonotonicityReport rep = monotonicity_report(norm, opt.kmax, budget, opt.seed,
                                                           opt.has("tol") ? opt.tol : 1e-3);
        if (opt.format == "csv") {
            std::vector<TableRow> rows;
            for (const IndexEstimate& e : rep.entries)
                rows.push_back(index_row(e, norm, e.value <= 1e-6));
            deliver(opt, emit_table(rows));
        } else {
            deliver(opt, monotonicity_to_json(rep, norm));
        }
        return 0;
    }
    if (!opt.has("k")) fail("k: required for index (or pass kmax for a sweep)");
    const IndexEstimate est = estimate_index(norm, opt.k, budget, opt.seed);
    if (opt.format == "csv") {
        deliver(opt, emit_table({index_row(est, norm, est.value <= 1e-6)}));
    } else {
        deliver(opt, index_to_json(est, norm));
    }
    return 0;
}

int cmd_min_degree(const Options& opt) {
    const Norm norm = build_norm(opt);
    const Budget budget{opt.starts, opt.iterations};
    const int kmax = opt.has("kmax") ? opt.kmax : 5;
    const MinDegreeResult res = min_zero_degree(norm, kmax, budget, opt.seed);
    if (opt.format == "csv") {
        std::vector<TableRow> rows;
        for (const IndexEstimate& e : res.per_k)
            rows.push_back(index_row(e, norm, res.found && e.k == res.k0));
        deliver(opt, emit_table(rows));
    } else {
        deliver(opt, min_degree_to_json(res, norm));
    }
    return 0;
}

int cmd_convexity(const Options& opt) {
    const Norm norm = build_norm(opt);
    need_json_format(opt, "convexity reports");
    const std::string& mode = opt.method;
    if (mode != "midpoint" && mode != "hessian" && mode != "both" && mode != "log-convexity")
        fail("method: expected midpoint, hessian, both, or log-convexity");

    json doc;
    doc["schema"] = 1;
    doc["norm"] = json::parse(norm_to_json(norm));
    if (mode == "log-convexity") {
        const bool geom = std::holds_alternative<GeomMeanParams>(norm.spec());
        if (!geom && !std::holds_alternative<AsymAParams>(norm.spec()))
            fail("method: log-convexity needs a geom-mean or asym-a norm");
        std::vector<double> ts;
        const int n = std::max(opt.grid, 16);
        const double hi = geom ? 1.0 : 4.0; // asym-a profile is informative past t=1
        for (int i = 0; i <= n; ++i) ts.push_back(hi * i / n);
        json rows = json::array();
        for (const LogConvexitySample& s : log_convexity_profile(norm, ts)) {
            rows.push_back({{"t", s.t},
                            {"phi1", s.phi1},
                            {"phi2", s.phi2},
                            {"log_convex_term", s.log_convex_term},
                            {"fd_phi2", s.fd_phi2}});
        }
        doc["profile"] = rows;
        deliver(opt, doc.dump(2));
        return 0;
    }
    if (mode == "midpoint" || mode == "both") {
        if (opt.pairs < 1000) fail("pairs: must be >= 1000");
        doc["midpoint"] = json::parse(convexity_to_json(midpoint_test(norm, opt.pairs, opt.seed)));
    }
    if (mode == "hessian" || mode == "both") {
        if (norm.smooth())
            doc["hessian"] = json::parse(convexity_to_json(hessian_grid(norm, opt.grid)));
        else if (mode == "hessian")
            fail("method: hessian needs a smooth norm");
        else
            doc["hessian"] = nullptr;
    }
    deliver(opt, doc.dump(2));
    return 0;
}

int cmd_beta_classify(const Options& opt) {
    if (!opt.has("beta")) fail("beta: required for beta-classify");
    need_json_format(opt, "classification verdicts");
    deliver(opt, beta_to_json(beta_classify(opt.beta)));
    return 0;
}

} // namespace

int dispatch(Options& opt) {
    if (opt.has("config")) merge_config(opt);
    check_common(opt);
    if (opt.command.empty()) fail("command: required (radius, index, min-degree, convexity, beta-classify, recipe)");
    if (opt.command == "radius") return cmd_radius(opt);
    if (opt.command == "index") return cmd_index(opt);
    if (opt.command == "min-degree") return cmd_min_degree(opt);
    if (opt.command == "convexity") return cmd_convexity(opt);
    if (opt.command == "beta-classify") return cmd_beta_classify(opt);
    if (opt.command == "recipe") return run_recipe(opt);
    fail("command: unknown '" + opt.command + "'");
}

} // namespace pncli
