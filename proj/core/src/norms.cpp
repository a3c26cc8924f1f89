#include "pnindex/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pnindex/rng.hpp"

namespace pnindex {

namespace {

double ipow(double base, int n) {
    double r = 1.0;
    for (double b = base; n > 0; n >>= 1, b *= b)
        if (n & 1) r *= b;
    return r;
}

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

double lp_value(std::span<const double> v, double p) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double c : v) s += std::pow(std::abs(c) / m, p);
    return m * std::pow(s, 1.0 / p);
}

double lp_value2(Vec2 v, double p) {
    const double c[2] = {v.x, v.y};
    return lp_value(c, p);
}

/// Gradient of the ell_p norm (0-homogeneous), valid for p > 1.
Vec2 lp_gradient2(Vec2 v, double p) {
    const double n = lp_value2(v, p);
    return {sgn(v.x) * std::pow(std::abs(v.x) / n, p - 1.0),
            sgn(v.y) * std::pow(std::abs(v.y) / n, p - 1.0)};
}

struct EvalVisitor {
    Vec2 v;

    double operator()(const LpParams& s) const { return lp_value2(v, s.p); }

    double operator()(const PolyhedralParams& s) const {
        return s.kind == PolyhedralKind::L1 ? std::abs(v.x) + std::abs(v.y)
                                            : std::max(std::abs(v.x), std::abs(v.y));
    }

    double operator()(const BetaQuarticParams& s) const {
        const double m = v.norm_inf();
        if (m == 0.0) return 0.0;
        const double x = v.x / m, y = v.y / m;
        const double q = x * x * x * x + 2.0 * s.beta * x * x * y * y + y * y * y * y;
        // q < 0 happens only for beta < -1, where the formula is not a norm
        return m * std::pow(q, 0.25);
    }

    double operator()(const AsymAParams& s) const {
        const double m = v.norm_inf();
        if (m == 0.0) return 0.0;
        const double x = v.x / m, y = v.y / m;
        const double inner = x * x + s.w_inner * y * y;
        const double outer = x * x + s.w_outer * y * y;
        return m * std::pow(inner, -0.5 * s.a) * std::pow(outer, 0.5 * (1.0 + s.a));
    }

    double operator()(const InterpSymParams& s) const {
        const double m = v.norm_inf();
        if (m == 0.0) return 0.0;
        const double x = v.x / m, y = v.y / m;
        const int q = 2 * s.m - 2;
        const double r2 = x * x + y * y;
        const double rq = ipow(std::abs(x), q) + ipow(std::abs(y), q);
        return m * std::pow(r2, 0.5 * s.theta) * std::pow(rq, (1.0 - s.theta) / q);
    }

    double operator()(const GeomMeanParams& s) const {
        return std::pow(lp_value2(v, s.p1), s.theta) * std::pow(lp_value2(v, s.p0), 1.0 - s.theta);
    }

    double operator()(const EpsGeomMeanParams& s) const {
        const double m = v.norm_inf();
        if (m == 0.0) return 0.0;
        const double x = v.x / m, y = v.y / m;
        return m * std::pow(x * x + s.eps * y * y, 0.5 * s.theta) *
               std::pow(s.eps * x * x + y * y, 0.5 * (1.0 - s.theta));
    }
};

struct GradientVisitor {
    Vec2 v; // pre-scaled by the caller, nonzero

    Vec2 operator()(const LpParams& s) const { return lp_gradient2(v, s.p); }

    Vec2 operator()(const PolyhedralParams& s) const {
        const double ax = std::abs(v.x), ay = std::abs(v.y);
        if (s.kind == PolyhedralKind::L1) {
            if (v.x == 0.0 || v.y == 0.0)
                throw NonSmoothPoint("l1 norm is not differentiable on the axes; use norming_set");
            return {sgn(v.x), sgn(v.y)};
        }
        if (ax == ay)
            throw NonSmoothPoint("linf norm is not differentiable on the diagonals; use norming_set");
        return ax > ay ? Vec2{sgn(v.x), 0.0} : Vec2{0.0, sgn(v.y)};
    }

    Vec2 operator()(const BetaQuarticParams& s) const {
        const double n = EvalVisitor{v}(s);
        const double n3 = n * n * n;
        return {(v.x * v.x * v.x + s.beta * v.x * v.y * v.y) / n3,
                (s.beta * v.x * v.x * v.y + v.y * v.y * v.y) / n3};
    }

    Vec2 operator()(const AsymAParams& s) const {
        const double inner = v.x * v.x + s.w_inner * v.y * v.y;
        const double outer = v.x * v.x + s.w_outer * v.y * v.y;
        const double shared = std::pow(inner, -0.5 * s.a - 1.0) * std::pow(outer, 0.5 * (1.0 + s.a) - 1.0);
        const double gx = v.x * v.x * v.x * shared;
        const double gy = (s.w_outer * (1.0 + 2.0 * s.a) / (1.0 + s.a) * v.x * v.x * v.y +
                           s.w_outer * s.w_inner * v.y * v.y * v.y) *
                          shared;
        return {gx, gy};
    }

    Vec2 operator()(const InterpSymParams& s) const {
        const int q = 2 * s.m - 2;
        const double r2 = v.x * v.x + v.y * v.y;
        const double rq = ipow(std::abs(v.x), q) + ipow(std::abs(v.y), q);
        const double e = (1.0 - s.theta) / q;
        const double shared = std::pow(r2, 0.5 * s.theta - 1.0) * std::pow(rq, e - 1.0);
        const double xq1 = v.x * ipow(v.x * v.x, s.m - 2); // x^{2m-3}, sign preserved
        const double yq1 = v.y * ipow(v.y * v.y, s.m - 2);
        return {shared * (s.theta * v.x * rq + (1.0 - s.theta) * xq1 * r2),
                shared * (s.theta * v.y * rq + (1.0 - s.theta) * yq1 * r2)};
    }

    Vec2 operator()(const GeomMeanParams& s) const {
        const double n0 = lp_value2(v, s.p0), n1 = lp_value2(v, s.p1);
        const Vec2 g0 = lp_gradient2(v, s.p0), g1 = lp_gradient2(v, s.p1);
        const double f = std::pow(n1, s.theta) * std::pow(n0, 1.0 - s.theta);
        return {f * (s.theta * g1.x / n1 + (1.0 - s.theta) * g0.x / n0),
                f * (s.theta * g1.y / n1 + (1.0 - s.theta) * g0.y / n0)};
    }

    Vec2 operator()(const EpsGeomMeanParams& s) const {
        const double a = v.x * v.x + s.eps * v.y * v.y;
        const double b = s.eps * v.x * v.x + v.y * v.y;
        const double f = std::pow(a, 0.5 * s.theta) * std::pow(b, 0.5 * (1.0 - s.theta));
        return {f * (s.theta * v.x / a + (1.0 - s.theta) * s.eps * v.x / b),
                f * (s.theta * s.eps * v.y / a + (1.0 - s.theta) * v.y / b)};
    }
};

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

Norm Norm::lp(double p, int d) {
    require(p > 1.0 && std::isfinite(p), "lp: p must be a finite real > 1");
    require(d >= 2, "lp: d must be >= 2");
    return Norm{LpParams{p, d}};
}

Norm Norm::l1() { return Norm{PolyhedralParams{PolyhedralKind::L1}}; }
Norm Norm::linf() { return Norm{PolyhedralParams{PolyhedralKind::Linf}}; }

Norm Norm::beta_quartic(double beta) {
    require(std::isfinite(beta), "beta_quartic: beta must be finite");
    return Norm{BetaQuarticParams{beta}};
}

Norm Norm::asym_a(double a) {
    require(a > 0.0 && a < 1.0, "asym_a: a must lie in (0,1)");
    const double r = a / (1.0 + a);
    return Norm{AsymAParams{a, std::pow(r, 1.0 + a), std::pow(r, a)}};
}

Norm Norm::interp_sym(int m, double theta) {
    require(m >= 3, "interp_sym: m must be >= 3");
    require(theta >= 0.0 && theta <= 1.0, "interp_sym: theta must lie in [0,1]");
    return Norm{InterpSymParams{m, theta}};
}

Norm Norm::geom_mean(double p0, double p1, double theta) {
    require(p0 >= 2.0 && p1 >= 2.0, "geom_mean: p0 and p1 must be >= 2");
    require(theta >= 0.0 && theta <= 1.0, "geom_mean: theta must lie in [0,1]");
    return Norm{GeomMeanParams{p0, p1, theta}};
}

Norm Norm::eps_geom_mean(double theta, double eps) {
    require(theta > 0.0 && theta < 1.0, "eps_geom_mean: theta must lie in (0,1)");
    require(eps > 0.0, "eps_geom_mean: eps must be positive");
    return Norm{EpsGeomMeanParams{theta, eps}};
}

double Norm::eval(Vec2 v) const {
    if (v.is_zero()) return 0.0;
    return std::visit(EvalVisitor{v}, spec_);
}

double Norm::eval(std::span<const double> v) const {
    const auto* lp = std::get_if<LpParams>(&spec_);
    if (!lp) {
        require(v.size() == 2, "eval: only the lp variant supports d > 2");
        return eval(Vec2{v[0], v[1]});
    }
    require(static_cast<int>(v.size()) == lp->d, "eval: dimension mismatch");
    return lp_value(v, lp->p);
}

Vec2 Norm::gradient(Vec2 v) const {
    require(!v.is_zero(), "gradient: v must be nonzero");
    const double m = v.norm_inf();
    return std::visit(GradientVisitor{v / m}, spec_);
}

VecD Norm::gradient(std::span<const double> v) const {
    const auto* lp = std::get_if<LpParams>(&spec_);
    if (!lp) {
        require(v.size() == 2, "gradient: only the lp variant supports d > 2");
        const Vec2 g = gradient(Vec2{v[0], v[1]});
        return {g.x, g.y};
    }
    require(static_cast<int>(v.size()) == lp->d, "gradient: dimension mismatch");
    const double n = lp_value(v, lp->p);
    require(n > 0.0, "gradient: v must be nonzero");
    VecD g(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        g[i] = sgn(v[i]) * std::pow(std::abs(v[i]) / n, lp->p - 1.0);
    return g;
}

std::vector<Vec2> Norm::norming_set(Vec2 v) const {
    require(!v.is_zero(), "norming_set: v must be nonzero");
    const auto* ph = std::get_if<PolyhedralParams>(&spec_);
    if (!ph) return {gradient(v)};
    if (ph->kind == PolyhedralKind::L1) {
        if (v.x != 0.0 && v.y != 0.0) return {{sgn(v.x), sgn(v.y)}};
        // vertex of the l1 ball: the norming face of the dual (linf) ball is an edge
        if (v.y == 0.0) return {{sgn(v.x), 1.0}, {sgn(v.x), -1.0}};
        return {{1.0, sgn(v.y)}, {-1.0, sgn(v.y)}};
    }
    const double ax = std::abs(v.x), ay = std::abs(v.y);
    if (ax > ay) return {{sgn(v.x), 0.0}};
    if (ay > ax) return {{0.0, sgn(v.y)}};
    return {{sgn(v.x), 0.0}, {0.0, sgn(v.y)}};
}

Vec2 Norm::sphere_point(double angle) const {
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    return dir / eval(dir);
}

double Norm::dual_eval(Vec2 functional, int grid) const {
    if (functional.x == 0.0 && functional.y == 0.0) return 0.0;
    auto pairing = [&](double t) { return functional.dot(sphere_point(t)); };

    const double two_pi = 6.283185307179586476925286766559;
    std::vector<double> val(grid);
    for (int i = 0; i < grid; ++i) val[i] = pairing(two_pi * i / grid);

    double best = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double prev = val[(i + grid - 1) % grid], next = val[(i + 1) % grid];
        if (val[i] < prev || val[i] < next) continue;
        // golden-section refinement inside the bracketing cell
        double a = two_pi * (i - 1) / grid, b = two_pi * (i + 1) / grid;
        const double phi = 0.61803398874989484820;
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = pairing(x1), f2 = pairing(x2);
        for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + phi * (b - a); f2 = pairing(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - phi * (b - a); f1 = pairing(x1);
            }
        }
        best = std::max({best, val[i], f1, f2});
    }
    if (const auto* ph = std::get_if<PolyhedralParams>(&spec_)) {
        // sup is attained at a vertex of the ball; check them exactly
        const std::vector<Vec2> verts = ph->kind == PolyhedralKind::L1
            ? std::vector<Vec2>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}
            : std::vector<Vec2>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        for (Vec2 w : verts) best = std::max(best, functional.dot(w));
    }
    return best;
}

NormTraits Norm::classify(int samples, std::uint64_t seed) const {
    require(samples >= 100, "classify: samples must be >= 100");
    Rng rng(Rng::derive(seed, 0x5eedc1a5u));
    const double tol = 1e-12;
    NormTraits t{true, true, true};
    t.normalized = std::abs(eval(Vec2{1, 0}) - 1.0) <= tol && std::abs(eval(Vec2{0, 1}) - 1.0) <= tol;
    for (int i = 0; i < samples; ++i) {
        const double ang = rng.uniform(0.0, 6.283185307179586);
        const double r = rng.uniform(0.25, 4.0);
        const Vec2 v{r * std::cos(ang), r * std::sin(ang)};
        const double f = eval(v);
        const double scale = std::max(1.0, std::abs(f));
        if (std::abs(f - eval(Vec2{std::abs(v.x), std::abs(v.y)})) > tol * scale) t.absolute = false;
        if (std::abs(f - eval(Vec2{v.y, v.x})) > tol * scale) t.symmetric = false;
    }
    return t;
}

bool Norm::smooth() const { return !std::holds_alternative<PolyhedralParams>(spec_); }

bool Norm::guaranteed_norm() const {
    if (std::holds_alternative<EpsGeomMeanParams>(spec_)) return false;
    if (const auto* b = std::get_if<BetaQuarticParams>(&spec_))
        return b->beta >= 0.0 && b->beta <= 3.0;
    return true;
}

int Norm::dim() const {
    const auto* lp = std::get_if<LpParams>(&spec_);
    return lp ? lp->d : 2;
}

std::string Norm::name() const {
    char buf[96];
    struct V {
        char* b;
        size_t n;
        void operator()(const LpParams& s) const {
            if (s.d == 2) std::snprintf(b, n, "lp(%g)", s.p);
            else std::snprintf(b, n, "lp(%g,d=%d)", s.p, s.d);
        }
        void operator()(const PolyhedralParams& s) const {
            std::snprintf(b, n, "%s", s.kind == PolyhedralKind::L1 ? "l1" : "linf");
        }
        void operator()(const BetaQuarticParams& s) const { std::snprintf(b, n, "beta-quartic(%g)", s.beta); }
        void operator()(const AsymAParams& s) const { std::snprintf(b, n, "asym-a(%g)", s.a); }
        void operator()(const InterpSymParams& s) const { std::snprintf(b, n, "interp-sym(%d,%g)", s.m, s.theta); }
        void operator()(const GeomMeanParams& s) const {
            std::snprintf(b, n, "geom-mean(%g,%g,%g)", s.p0, s.p1, s.theta);
        }
        void operator()(const EpsGeomMeanParams& s) const {
            std::snprintf(b, n, "eps-geom-mean(%g,%g)", s.theta, s.eps);
        }
    };
    std::visit(V{buf, sizeof buf}, spec_);
    return buf;
}

std::vector<Vec2> sphere_kinks(const Norm& norm) {
    const auto* ph = std::get_if<PolyhedralParams>(&norm.spec());
    if (!ph) return {};
    if (ph->kind == PolyhedralKind::L1)
        return {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    return {{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}};
}

DualPair dual_pair_at(const Norm& norm, double angle) {
    const Vec2 p = norm.sphere_point(angle);
    Vec2 f = norm.gradient(p);
    const double raw = f.dot(p);
    f = f / raw; // pin the pairing to 1 exactly (up to one rounding)
    return DualPair{p, f, f.dot(p)};
}

} // namespace pnindex
