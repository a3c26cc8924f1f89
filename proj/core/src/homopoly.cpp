#include "pnindex/homopoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "internal_util.hpp"

namespace pnindex {

namespace {

double ipow(double base, int n) {
    double r = 1.0;
    for (double b = base; n > 0; n >>= 1, b *= b)
        if (n & 1) r *= b;
    return r;
}

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

VecD conv(const VecD& a, const VecD& b) {
    VecD r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

} // namespace

ScalarHomoPoly::ScalarHomoPoly(int degree, VecD coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
    require(degree >= 0, "ScalarHomoPoly: degree must be >= 0");
    require(static_cast<int>(coeffs_.size()) == degree + 1, "ScalarHomoPoly: need degree+1 coefficients");
    for (double c : coeffs_) require(std::isfinite(c), "ScalarHomoPoly: coefficients must be finite");
}

ScalarHomoPoly ScalarHomoPoly::zero(int degree) {
    require(degree >= 0, "ScalarHomoPoly: degree must be >= 0");
    return {degree, VecD(degree + 1, 0.0)};
}

ScalarHomoPoly ScalarHomoPoly::monomial(int degree, int ypow, double c) {
    require(ypow >= 0 && ypow <= degree, "monomial: ypow out of range");
    ScalarHomoPoly q = zero(degree);
    q[ypow] = c;
    return q;
}

double ScalarHomoPoly::eval(Vec2 v) const {
    const int k = degree_;
    if (k == 0) return coeffs_[0];
    if (v.is_zero()) return 0.0;
    if (std::abs(v.x) >= std::abs(v.y)) {
        const double t = v.y / v.x;
        double s = coeffs_[k];
        for (int i = k - 1; i >= 0; --i) s = coeffs_[i] + t * s;
        return ipow(v.x, k) * s;
    }
    const double t = v.x / v.y;
    double s = coeffs_[0];
    for (int i = 1; i <= k; ++i) s = coeffs_[i] + t * s;
    return ipow(v.y, k) * s;
}

ScalarHomoPoly ScalarHomoPoly::dx() const {
    require(degree_ >= 1, "dx: constant polynomial");
    VecD c(degree_);
    for (int i = 0; i < degree_; ++i) c[i] = coeffs_[i] * (degree_ - i);
    return {degree_ - 1, std::move(c)};
}

ScalarHomoPoly ScalarHomoPoly::dy() const {
    require(degree_ >= 1, "dy: constant polynomial");
    VecD c(degree_);
    for (int i = 0; i < degree_; ++i) c[i] = coeffs_[i + 1] * (i + 1);
    return {degree_ - 1, std::move(c)};
}

ScalarHomoPoly ScalarHomoPoly::mul_x() const {
    VecD c = coeffs_;
    c.push_back(0.0);
    return {degree_ + 1, std::move(c)};
}

ScalarHomoPoly ScalarHomoPoly::mul_y() const {
    VecD c(degree_ + 2, 0.0);
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
    return {degree_ + 1, std::move(c)};
}

double ScalarHomoPoly::coeff_norm2() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

ScalarHomoPoly operator+(const ScalarHomoPoly& a, const ScalarHomoPoly& b) {
    require(a.degree() == b.degree(), "poly +: degree mismatch");
    VecD c(a.coeffs());
    for (int i = 0; i <= b.degree(); ++i) c[i] += b[i];
    return {a.degree(), std::move(c)};
}

ScalarHomoPoly operator-(const ScalarHomoPoly& a, const ScalarHomoPoly& b) {
    require(a.degree() == b.degree(), "poly -: degree mismatch");
    VecD c(a.coeffs());
    for (int i = 0; i <= b.degree(); ++i) c[i] -= b[i];
    return {a.degree(), std::move(c)};
}

ScalarHomoPoly operator*(double s, const ScalarHomoPoly& q) {
    VecD c(q.coeffs());
    for (double& v : c) v *= s;
    return {q.degree(), std::move(c)};
}

ScalarHomoPoly homo_mul(const ScalarHomoPoly& a, const ScalarHomoPoly& b) {
    return {a.degree() + b.degree(), conv(a.coeffs(), b.coeffs())};
}

Mat2 Mat2::inverse() const {
    const double dt = det();
    require(std::abs(dt) > 1e-14, "Mat2: singular");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

Mat2 Mat2::rotation(double t) {
    const double cs = std::cos(t), sn = std::sin(t);
    return {cs, -sn, sn, cs};
}

ScalarHomoPoly compose_linear(const ScalarHomoPoly& q, const Mat2& S) {
    const int k = q.degree();
    const VecD row1{S.a, S.b}, row2{S.c, S.d};
    // powers of the two linear factors, degree 0..k
    std::vector<VecD> pow1{{1.0}}, pow2{{1.0}};
    for (int i = 1; i <= k; ++i) {
        pow1.push_back(conv(pow1.back(), row1));
        pow2.push_back(conv(pow2.back(), row2));
    }
    VecD out(k + 1, 0.0);
    for (int i = 0; i <= k; ++i) {
        if (q[i] == 0.0) continue;
        const VecD term = conv(pow1[k - i], pow2[i]);
        for (int j = 0; j <= k; ++j) out[j] += q[i] * term[j];
    }
    return {k, std::move(out)};
}

VectorHomoPoly::VectorHomoPoly(ScalarHomoPoly q1, ScalarHomoPoly q2)
    : p1(std::move(q1)), p2(std::move(q2)) {
    require(p1.degree() == p2.degree(), "VectorHomoPoly: component degrees differ");
}

bool VectorHomoPoly::is_zero() const {
    for (double c : p1.coeffs())
        if (c != 0.0) return false;
    for (double c : p2.coeffs())
        if (c != 0.0) return false;
    return true;
}

VectorHomoPoly operator+(const VectorHomoPoly& a, const VectorHomoPoly& b) {
    return {a.p1 + b.p1, a.p2 + b.p2};
}

VectorHomoPoly operator*(double s, const VectorHomoPoly& P) {
    return {s * P.p1, s * P.p2};
}

VectorHomoPoly conjugate(const VectorHomoPoly& P, const Mat2& S) {
    const Mat2 inv = S.inverse();
    const ScalarHomoPoly c1 = compose_linear(P.p1, S);
    const ScalarHomoPoly c2 = compose_linear(P.p2, S);
    return {inv.a * c1 + inv.b * c2, inv.c * c1 + inv.d * c2};
}

VecD pack(const VectorHomoPoly& P) {
    VecD c(P.p1.coeffs());
    c.insert(c.end(), P.p2.coeffs().begin(), P.p2.coeffs().end());
    return c;
}

VectorHomoPoly unpack(int degree, std::span<const double> c) {
    require(static_cast<int>(c.size()) == 2 * (degree + 1), "unpack: need 2(degree+1) coefficients");
    VecD c1(c.begin(), c.begin() + degree + 1);
    VecD c2(c.begin() + degree + 1, c.end());
    return {ScalarHomoPoly(degree, std::move(c1)), ScalarHomoPoly(degree, std::move(c2))};
}

double coeff_dot(const VectorHomoPoly& a, const VectorHomoPoly& b) {
    require(a.degree() == b.degree(), "coeff_dot: degree mismatch");
    double s = 0.0;
    for (int i = 0; i <= a.degree(); ++i) s += a.p1[i] * b.p1[i] + a.p2[i] * b.p2[i];
    return s;
}

double coeff_norm(const VectorHomoPoly& P) { return std::sqrt(coeff_dot(P, P)); }

SymMultiForm::SymMultiForm(ScalarHomoPoly generator) : generator_(std::move(generator)) {
    require(generator_.degree() >= 2 && generator_.degree() % 2 == 0,
            "SymMultiForm: generator degree must be even and >= 2");
}

double SymMultiForm::apply(std::span<const Vec2> args) const {
    const int n = order();
    require(static_cast<int>(args.size()) == n, "SymMultiForm: argument count must equal the order");
    const std::uint32_t count = 1u << n;
    std::vector<double> terms(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        Vec2 v{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            if (mask & (1u << j)) v = v + args[j];
            else v = v - args[j];
        }
        const int negs = n - std::popcount(mask);
        terms[mask] = (negs % 2 ? -1.0 : 1.0) * generator_.eval(v);
    }
    // fixed pairwise tree keeps the sum identical regardless of threading
    for (std::uint32_t len = count; len > 1; len /= 2)
        for (std::uint32_t i = 0; i < len / 2; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return terms[0] / (static_cast<double>(count) * fact);
}

double SymMultiForm::diag_with(Vec2 x, Vec2 w) const {
    return (generator_.dx().eval(x) * w.x + generator_.dy().eval(x) * w.y) / order();
}

SymMultiForm polarize(const ScalarHomoPoly& r) { return SymMultiForm(r); }

ScalarHomoPoly q_poly(const VectorHomoPoly& P) { return P.p1.mul_y() - P.p2.mul_x(); }

DefiniteReport q_definite(const ScalarHomoPoly& q, int grid) {
    require(grid >= 64, "q_definite: grid must be >= 64");
    const int k = q.degree();
    auto at = [&](double t) { return q.eval({std::cos(t), std::sin(t)}); };

    auto bisect = [&](double lo, double hi) {
        double flo = at(lo);
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi), fmid = at(mid);
            if ((flo <= 0.0) == (fmid <= 0.0)) {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    if (k % 2 == 1) {
        // odd degree: q(-v) = -q(v), so any nonzero value forces a sign change
        int imax = 0;
        double vmax = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double f = std::abs(at(detail::two_pi * i / grid));
            if (f > vmax) {
                vmax = f;
                imax = i;
            }
        }
        if (vmax == 0.0) return {false, 0.0, {1.0, 0.0}};
        const double t0 = detail::two_pi * imax / grid;
        const double root = bisect(t0, t0 + detail::two_pi / 2.0);
        return {false, std::abs(at(root)), {std::cos(root), std::sin(root)}};
    }

    std::vector<double> val(grid);
    for (int i = 0; i < grid; ++i) val[i] = at(detail::two_pi * i / grid);
    int imin = 0;
    for (int i = 0; i < grid; ++i) {
        if (std::abs(val[i]) < std::abs(val[imin])) imin = i;
        const double next = val[(i + 1) % grid];
        if (val[i] == 0.0 || val[i] * next < 0.0) {
            const double root = bisect(detail::two_pi * i / grid, detail::two_pi * (i + 1) / grid);
            return {false, std::abs(at(root)), {std::cos(root), std::sin(root)}};
        }
    }

    // one-signed on the grid: polish the extremum nearest zero with Newton
    // steps on the angular derivative, clamped to the starting cell
    const double sign = val[imin] > 0.0 ? 1.0 : -1.0;
    const ScalarHomoPoly qx = q.dx(), qy = q.dy();
    const ScalarHomoPoly qxx = qx.dx(), qxy = qx.dy(), qyy = qy.dy();
    double t = detail::two_pi * imin / grid;
    const double cell = detail::two_pi / grid;
    const double tlo = t - cell, thi = t + cell;
    for (int it = 0; it < 3; ++it) {
        const Vec2 c{std::cos(t), std::sin(t)};
        const Vec2 tc{-c.y, c.x};
        const double d1 = qx.eval(c) * tc.x + qy.eval(c) * tc.y;
        const double d2 = qxx.eval(c) * tc.x * tc.x + 2.0 * qxy.eval(c) * tc.x * tc.y +
                          qyy.eval(c) * tc.y * tc.y - (qx.eval(c) * c.x + qy.eval(c) * c.y);
        if (d2 == 0.0) break;
        t = std::clamp(t - d1 / d2, tlo, thi);
    }
    double best = std::abs(val[imin]);
    double tbest = detail::two_pi * imin / grid;
    if (sign * at(t) < best) {
        best = std::max(sign * at(t), 0.0); // negative means the dip crosses zero
        tbest = t;
    }
    return {best > 1e-10, best, {std::cos(tbest), std::sin(tbest)}};
}

double sup_norm(const VectorHomoPoly& P, const Norm& norm, double tol) {
    require(tol > 0.0, "sup_norm: tol must be positive");
    auto f = [&](double t) { return norm.eval(P.eval(norm.sphere_point(t))); };
    return detail::max_on_circle(f, 4096);
}

VectorHomoPoly tangent_poly(const ScalarHomoPoly& r, Vec2 x0, Vec2 y0) {
    require(r.degree() >= 2 && r.degree() % 2 == 0, "tangent_poly: generator degree must be even");
    const double scale = x0.norm2() * y0.norm2();
    require(scale > 0.0 && std::abs(x0.cross(y0)) > 1e-12 * scale,
            "tangent_poly: x0 and y0 must be linearly independent");
    require(q_definite(r, 8192).definite, "tangent_poly: generator must keep one sign off the origin");

    const SymMultiForm form = polarize(r);
    const int n = r.degree();
    // interpolation nodes spread over (-pi/2, pi/2): distinct directions,
    // no poles at the coordinate axes
    std::vector<VecD> rows(n, VecD(n));
    std::vector<VecD> rhs(2, VecD(n));
    for (int j = 0; j < n; ++j) {
        const double phi = (j + 0.5) * (detail::two_pi / 2.0) / n - detail::two_pi / 4.0;
        const Vec2 v{std::cos(phi), std::sin(phi)};
        for (int i = 0; i < n; ++i) rows[j][i] = ipow(v.x, n - 1 - i) * ipow(v.y, i);
        rhs[0][j] = form.diag_with(v, x0);
        rhs[1][j] = form.diag_with(v, y0);
    }
    std::vector<VecD> sol = detail::solve_full_pivot(std::move(rows), std::move(rhs));
    const ScalarHomoPoly alpha(n - 1, std::move(sol[0])); // A(x,..,x,x0)
    const ScalarHomoPoly beta(n - 1, std::move(sol[1]));  // A(x,..,x,y0)
    return {-x0.x * beta + y0.x * alpha, -x0.y * beta + y0.y * alpha};
}

VectorHomoPoly lp_zero_poly(int p) {
    require(p >= 2 && p % 2 == 0, "lp_zero_poly: p must be an even integer >= 2");
    return {ScalarHomoPoly::monomial(p - 1, p - 1, -1.0), ScalarHomoPoly::monomial(p - 1, 0, 1.0)};
}

VectorHomoPoly asym_zero_poly(double a) {
    require(a > 0.0 && a < 1.0, "asym_zero_poly: a must lie in (0,1)");
    const double r = a / (1.0 + a);
    ScalarHomoPoly p1 = ScalarHomoPoly::zero(3);
    p1[1] = std::pow(r, a) * (1.0 + 2.0 * a) / (1.0 + a);
    p1[3] = std::pow(r, 1.0 + 2.0 * a);
    return {std::move(p1), ScalarHomoPoly::monomial(3, 0, -1.0)};
}

VectorHomoPoly interp_zero_poly(int m, double theta) {
    require(m >= 2, "interp_zero_poly: m must be >= 2");
    require(theta >= 0.0 && theta <= 1.0, "interp_zero_poly: theta must lie in [0,1]");
    const int k = 2 * m - 1;
    ScalarHomoPoly p1 = ScalarHomoPoly::zero(k);
    p1[1] += theta;            // theta y x^{2m-2}
    p1[2 * m - 3] += 1.0 - theta; // (1-theta) x^2 y^{2m-3}
    p1[k] += 1.0;              // theta y^{2m-1} + (1-theta) y^{2m-1}
    ScalarHomoPoly p2 = ScalarHomoPoly::zero(k);
    for (int i = 0; i <= k; ++i) p2[i] = -p1[k - i]; // P2(x,y) = -P1(y,x)
    return {std::move(p1), std::move(p2)};
}

ScalarHomoPoly generator_poly(const Norm& norm) {
    if (const auto* lp = std::get_if<LpParams>(&norm.spec())) {
        require(lp->d == 2, "generator_poly: lp generator only defined on the plane");
        const long pe = std::lround(lp->p);
        require(std::abs(lp->p - static_cast<double>(pe)) < 1e-12 && pe % 2 == 0,
                "generator_poly: lp norm needs an even integer p");
        const int p = static_cast<int>(pe);
        return ScalarHomoPoly::monomial(p, 0, 1.0) + ScalarHomoPoly::monomial(p, p, 1.0);
    }
    if (const auto* bq = std::get_if<BetaQuarticParams>(&norm.spec()))
        return {4, {1.0, 0.0, 2.0 * bq->beta, 0.0, 1.0}};
    if (const auto* is = std::get_if<InterpSymParams>(&norm.spec())) {
        if (is->theta == 1.0) return {2, {1.0, 0.0, 1.0}};
        if (is->theta == 0.0) {
            const int q = 2 * is->m - 2;
            return ScalarHomoPoly::monomial(q, 0, 1.0) + ScalarHomoPoly::monomial(q, q, 1.0);
        }
    }
    throw std::invalid_argument("generator_poly: no power of this norm is a polynomial");
}

VecD EmbeddedPoly::eval(std::span<const double> v) const {
    require(static_cast<int>(v.size()) == d, "EmbeddedPoly: dimension mismatch");
    VecD out(d, 0.0);
    const Vec2 w = base.eval({v[0], v[1]});
    out[0] = w.x;
    out[1] = w.y;
    return out;
}

EmbeddedPoly embed_lp(VectorHomoPoly P, int d) {
    require(d >= 2, "embed_lp: d must be >= 2");
    return {std::move(P), d};
}

} // namespace pnindex
