// Acceptance gate: one line per criterion, [PASS]/[FAIL] with wall time.
// Exit code is the number of failed criteria. All tolerances are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pnindex/convexity.hpp"
#include "pnindex/homopoly.hpp"
#include "pnindex/index_search.hpp"
#include "pnindex/norms.hpp"
#include "pnindex/numrange.hpp"
#include "pnindex/rng.hpp"

using namespace pnindex;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1: grid zero certificates on the even-p planes ------------------------

Outcome check_even_p_zero_certificates() {
    Outcome out;
    for (int p : {4, 6}) {
        const auto t0 = std::chrono::steady_clock::now();
        const ZeroCheck chk = verify_zero(lp_zero_poly(p), Norm::lp(p), 1e-10, 65536);
        const double dt = seconds_since(t0);
        out.expect(chk.zero, "p=" + std::to_string(p) + " max pairing " + std::to_string(chk.max_pairing));
        out.expect(dt < 1.0, "p=" + std::to_string(p) + " took " + std::to_string(dt) + "s");
    }
    return out;
}

// ---- 2: zero certificates on the asymmetric and interpolated planes --------

Outcome check_exotic_zero_certificates() {
    Outcome out;
    const double avals[] = {0.3, 0.9 / std::sqrt(2.0), 0.7};
    for (double a : avals) {
        const auto t0 = std::chrono::steady_clock::now();
        const ZeroCheck chk = verify_zero(asym_zero_poly(a), Norm::asym_a(a), 1e-9);
        const double dt = seconds_since(t0);
        out.expect(chk.zero, "a=" + std::to_string(a) + " max pairing " + std::to_string(chk.max_pairing));
        out.expect(dt < 2.0, "a=" + std::to_string(a) + " took " + std::to_string(dt) + "s");
    }
    const std::pair<int, double> mth[] = {{3, 0.0}, {3, 0.4}, {4, 1.0}};
    for (auto [m, th] : mth) {
        const auto t0 = std::chrono::steady_clock::now();
        const ZeroCheck chk = verify_zero(interp_zero_poly(m, th), Norm::interp_sym(m, th), 1e-9);
        const double dt = seconds_since(t0);
        out.expect(chk.zero, "(m,theta)=(" + std::to_string(m) + "," + std::to_string(th) +
                                 ") max pairing " + std::to_string(chk.max_pairing));
        out.expect(dt < 2.0, "(m,theta) case took " + std::to_string(dt) + "s");
    }
    return out;
}

// ---- 3: tangent construction on the quartic family -------------------------

Outcome check_tangent_construction() {
    Outcome out;
    for (double beta : {0.0, 1.0, 2.0, 3.0}) {
        const Norm n = Norm::beta_quartic(beta);
        const VectorHomoPoly P = tangent_poly(generator_poly(n), {1.0, 0.0}, {0.0, 1.0});
        const ZeroCheck chk = verify_zero(P, n, 1e-10);
        out.expect(chk.zero, "beta=" + std::to_string(beta) + " max pairing " +
                                 std::to_string(chk.max_pairing));
        if (beta == 0.0) {
            const VectorHomoPoly ref = lp_zero_poly(4);
            const double cosine = std::abs(coeff_dot(P, ref)) / (coeff_norm(P) * coeff_norm(ref));
            out.expect(cosine >= 1.0 - 1e-9, "alignment cosine " + std::to_string(cosine));
        }
    }
    return out;
}

// ---- 4: closed-form norming functionals vs analytic gradients --------------

Outcome check_norming_closed_form() {
    Outcome out;
    struct Case {
        Norm norm;
        VectorHomoPoly zero;
        const char* label;
    };
    const Case cases[] = {
        {Norm::lp(4.0), lp_zero_poly(4), "p4"},
        {Norm::beta_quartic(2.0),
         tangent_poly(generator_poly(Norm::beta_quartic(2.0)), {1.0, 0.0}, {0.0, 1.0}), "quartic"},
        {Norm::asym_a(0.3), asym_zero_poly(0.3), "asym"},
        {Norm::interp_sym(3, 0.4), interp_zero_poly(3, 0.4), "interp"},
    };
    for (const Case& c : cases) {
        double worst = 0.0;
        for (int i = 0; i < 1024; ++i) {
            const double t = 2.0 * kPi * i / 1024;
            const Vec2 v = c.norm.sphere_point(t);
            const Vec2 got = zero_poly_norming(c.zero, v, c.norm);
            const Vec2 grad = c.norm.gradient(v);
            worst = std::max(worst, std::max(std::abs(got.x - grad.x), std::abs(got.y - grad.y)));
        }
        out.expect(worst <= 1e-8, std::string(c.label) + " worst diff " + std::to_string(worst));
    }
    return out;
}

// ---- 5: index estimation and minimal vanishing degree ----------------------

Outcome check_index_estimation() {
    Outcome out;
    const std::pair<double, int> targets[] = {{2.0, 1}, {4.0, 3}, {6.0, 5}};
    for (auto [p, k] : targets) {
        const auto t0 = std::chrono::steady_clock::now();
        const IndexEstimate est = estimate_index(Norm::lp(p), k, {64, 300}, 0);
        const double dt = seconds_since(t0);
        char lbl[64];
        std::snprintf(lbl, sizeof lbl, "p=%g k=%d", p, k);
        out.expect(est.value <= 1e-6, std::string(lbl) + " value " + std::to_string(est.value));
        out.expect(dt < 30.0, std::string(lbl) + " took " + std::to_string(dt) + "s");
    }
    const std::pair<double, int> k0s[] = {{2.0, 1}, {4.0, 3}, {6.0, 5}};
    for (auto [p, want] : k0s) {
        const MinDegreeResult res = min_zero_degree(Norm::lp(p), want + 1, {64, 300}, 0);
        out.expect(res.found && res.k0 == want,
                   "p=" + std::to_string(p) + " k0 " + std::to_string(res.found ? res.k0 : -1));
    }
    return out;
}

// ---- 6: order-2 behavior of the square plane -------------------------------

// max |a s^2 + b s + c| on [-1, 1], exactly (endpoints plus interior vertex)
double quad_max_abs(double a, double b, double c) {
    double best = std::max(std::abs(a - b + c), std::abs(a + b + c));
    if (a != 0.0) {
        const double s = -b / (2.0 * a);
        if (s > -1.0 && s < 1.0) best = std::max(best, std::abs(c - b * b / (4.0 * a)));
    }
    return best;
}

Outcome check_square_order_two() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    const IndexEstimate est = estimate_index(Norm::linf(), 2, {64, 300}, 0);
    out.expect(est.value >= 0.45 && est.value <= 0.55,
               "estimate " + std::to_string(est.value));
    out.expect(seconds_since(t0) < 30.0, "estimate too slow");

    // every degree-2 map: the radius and the sup-norm restrict to quadratics
    // on each face of the square, so both sides are evaluated exactly
    Rng rng(20240817);
    int bad = 0;
    double worst_ratio = 1.0;
    for (int trial = 0; trial < 10000; ++trial) {
        double c[6];
        for (double& x : c) x = rng.normal();
        // component values on the four faces as quadratics in the edge coord
        const double p1_x1[3] = {c[2], c[1], c[0]};   // P1(1,s)
        const double p1_xm[3] = {c[2], -c[1], c[0]};  // P1(-1,s)
        const double p1_y1[3] = {c[0], c[1], c[2]};   // P1(s,1)
        const double p1_ym[3] = {c[0], -c[1], c[2]};  // P1(s,-1)
        const double p2_x1[3] = {c[5], c[4], c[3]};
        const double p2_xm[3] = {c[5], -c[4], c[3]};
        const double p2_y1[3] = {c[3], c[4], c[5]};
        const double p2_ym[3] = {c[3], -c[4], c[5]};

        const double v = std::max(
            std::max(quad_max_abs(p1_x1[0], p1_x1[1], p1_x1[2]),
                     quad_max_abs(p1_xm[0], p1_xm[1], p1_xm[2])),
            std::max(quad_max_abs(p2_y1[0], p2_y1[1], p2_y1[2]),
                     quad_max_abs(p2_ym[0], p2_ym[1], p2_ym[2])));
        const double sup = std::max(
            std::max(std::max(quad_max_abs(p1_x1[0], p1_x1[1], p1_x1[2]),
                              quad_max_abs(p1_xm[0], p1_xm[1], p1_xm[2])),
                     std::max(quad_max_abs(p1_y1[0], p1_y1[1], p1_y1[2]),
                              quad_max_abs(p1_ym[0], p1_ym[1], p1_ym[2]))),
            std::max(std::max(quad_max_abs(p2_x1[0], p2_x1[1], p2_x1[2]),
                              quad_max_abs(p2_xm[0], p2_xm[1], p2_xm[2])),
                     std::max(quad_max_abs(p2_y1[0], p2_y1[1], p2_y1[2]),
                              quad_max_abs(p2_ym[0], p2_ym[1], p2_ym[2]))));
        if (sup == 0.0) continue;
        const double ratio = v / sup;
        worst_ratio = std::min(worst_ratio, ratio);
        if (v < (0.5 - 5e-3) * sup) ++bad;
    }
    out.expect(bad == 0, std::to_string(bad) + " maps below the bound, worst ratio " +
                             std::to_string(worst_ratio));
    return out;
}

// ---- 7: estimates nonincreasing in the degree ------------------------------

Outcome check_monotonicity() {
    Outcome out;
    const MonotonicityReport rep = monotonicity_report(Norm::lp(4.0), 4, {64, 300}, 0, 1e-3);
    std::string profile;
    for (const IndexEstimate& e : rep.entries) profile += " " + std::to_string(e.value);
    out.expect(rep.violations.empty(), std::to_string(rep.violations.size()) +
                                           " increases beyond tolerance; values" + profile);
    return out;
}

// ---- 8: quartic-family classification against both convexity routes --------

Outcome check_beta_classification() {
    Outcome out;
    const std::pair<double, bool> table[] = {{-1.0, false}, {-0.5, false}, {0.0, true},
                                             {1.0, true},   {2.0, true},  {3.0, true},
                                             {3.5, false},  {5.0, false}};
    for (auto [beta, want] : table) {
        const BetaClassification cls = beta_classify(beta);
        out.expect(cls.is_norm == want, "beta=" + std::to_string(beta) + " verdict");
        if (!want) {
            out.expect(cls.witness.has_value() && cls.witness->margin() >= 1e-10,
                       "beta=" + std::to_string(beta) + " witness margin");
        }
        if (beta != 3.0) { // boundary curvature touches zero; certified analytically
            const bool mid = midpoint_test(Norm::beta_quartic(beta), 2000).certified;
            const bool hess = hessian_grid(Norm::beta_quartic(beta), 256).certified;
            out.expect(mid == want, "beta=" + std::to_string(beta) + " midpoint disagrees");
            out.expect(hess == want, "beta=" + std::to_string(beta) + " hessian disagrees");
        }
    }
    return out;
}

// ---- 9: log-derivative profiles --------------------------------------------

Outcome check_log_convexity_profiles() {
    Outcome out;
    std::vector<double> tg(512), ta(512);
    for (int i = 0; i < 512; ++i) {
        tg[i] = static_cast<double>(i) / 511;        // [0, 1]
        ta[i] = 4.0 * static_cast<double>(i) / 511;  // [0, 4]
    }
    double worst_fd = 0.0;
    for (const LogConvexitySample& s : log_convexity_profile(Norm::geom_mean(2.0, 4.0, 0.5), tg))
        worst_fd = std::max(worst_fd, std::abs(s.phi2 - s.fd_phi2));
    out.expect(worst_fd <= 1e-6, "geom-mean fd gap " + std::to_string(worst_fd));

    double worst_fd_a = 0.0, min_term = 0.0;
    for (const LogConvexitySample& s : log_convexity_profile(Norm::asym_a(0.3), ta)) {
        worst_fd_a = std::max(worst_fd_a, std::abs(s.phi2 - s.fd_phi2));
        min_term = std::min(min_term, s.log_convex_term);
    }
    out.expect(worst_fd_a <= 1e-6, "asym fd gap " + std::to_string(worst_fd_a));
    out.expect(min_term >= -1e-9, "asym log-convex term dips to " + std::to_string(min_term));
    return out;
}

// ---- 10: shrinking-weight counterexample -----------------------------------

Outcome check_eps_counterexample() {
    Outcome out;
    const double grid[] = {1.0, 0.1, 0.01};
    const EpsCounterexample ce = eps_counterexample(0.5, grid);
    out.expect(ce.found, "no counterexample found");
    out.expect(ce.found && ce.eps == 0.01, "stopped at eps " + std::to_string(ce.eps));
    out.expect(ce.found && ce.n11 > ce.n10 + ce.n01, "two-point inequality not violated");
    return out;
}

// ---- 11: invariance under the plane's isometries ---------------------------

Outcome check_isometry_invariance() {
    Outcome out;
    const Norm n = Norm::beta_quartic(2.0);
    Rng rng(99);
    for (const Mat2& S : {Mat2::flip_x(), Mat2::swap_xy()}) {
        for (int deg : {2, 3, 4}) {
            VecD c(2 * (deg + 1));
            for (double& x : c) x = rng.normal();
            const VectorHomoPoly P = unpack(deg, c);
            const VectorHomoPoly C = conjugate(P, S);

            const double dr = std::abs(radius(P, n, 1e-9).value - radius(C, n, 1e-9).value);
            out.expect(dr <= 1e-8, "radius drift " + std::to_string(dr));
            const double ds = std::abs(sup_norm(P, n) - sup_norm(C, n));
            out.expect(ds <= 1e-8, "sup-norm drift " + std::to_string(ds));

            std::vector<double> rp = range_samples(P, n, 8192);
            std::vector<double> rc = range_samples(C, n, 8192);
            const auto [pmin, pmax] = std::minmax_element(rp.begin(), rp.end());
            const auto [cmin, cmax] = std::minmax_element(rc.begin(), rc.end());
            out.expect(std::abs(*pmin - *cmin) <= 1e-8 && std::abs(*pmax - *cmax) <= 1e-8,
                       "range endpoints drift");
        }
    }
    return out;
}

// ---- 12: the plane map embedded into three coordinates ---------------------

Outcome check_embedding() {
    Outcome out;
    const EmbeddedPoly E = embed_lp(lp_zero_poly(4), 3);
    const double worst = embedded_max_pairing(E, Norm::lp(4.0, 3), 10000, 0);
    out.expect(worst <= 1e-12, "max pairing " + std::to_string(worst));
    return out;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> fn;
    };
    const Criterion criteria[] = {
        {"zero-radius certificates on the even-p planes", check_even_p_zero_certificates},
        {"zero-radius certificates on the asymmetric and interpolated planes",
         check_exotic_zero_certificates},
        {"tangent construction vanishes on the quartic family", check_tangent_construction},
        {"reconstructed norming functionals match gradients", check_norming_closed_form},
        {"index estimation reaches zero at the known degrees", check_index_estimation},
        {"order-2 index of the square plane is one half", check_square_order_two},
        {"index estimates do not increase with the degree", check_monotonicity},
        {"quartic-family classification with agreeing convexity routes",
         check_beta_classification},
        {"log-derivative profiles match finite differences", check_log_convexity_profiles},
        {"shrinking-weight formula loses the triangle inequality", check_eps_counterexample},
        {"numerical range is invariant under isometries", check_isometry_invariance},
        {"embedded plane map keeps zero pairing in dimension three", check_embedding},
    };

    int failures = 0;
    int idx = 0;
    for (const Criterion& c : criteria) {
        ++idx;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double dt = seconds_since(t0);
        std::printf("[%s] %2d %-66s (%.2fs)%s%s\n", out.ok ? "PASS" : "FAIL", idx, c.name, dt,
                    out.detail.empty() ? "" : " -- ", out.detail.c_str());
        std::fflush(stdout);
        if (!out.ok) ++failures;
    }
    if (failures == 0) std::printf("all %d criteria passed\n", idx);
    else std::printf("%d of %d criteria failed\n", failures, idx);
    return failures;
}
