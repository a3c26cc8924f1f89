#include "pnindex/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "internal_util.hpp"
#include "pnindex/rng.hpp"

namespace pnindex {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

struct BestPairing {
    double abs = -1.0;
    double signed_val = 0.0;
    Vec2 functional;
};

BestPairing best_at(const VectorHomoPoly& P, const Norm& norm, Vec2 x) {
    BestPairing best;
    const Vec2 px = P.eval(x);
    for (Vec2 f : norm.norming_set(x)) {
        const double val = f.dot(px);
        if (std::abs(val) > best.abs) best = {std::abs(val), val, f};
    }
    return best;
}

} // namespace

std::vector<double> range_samples(const VectorHomoPoly& P, const Norm& norm, int n) {
    require(n >= 16, "range_samples: n must be >= 16");
    std::vector<double> out;
    out.reserve(n + 8);
    for (int i = 0; i < n; ++i) {
        const Vec2 x = norm.sphere_point(detail::two_pi * i / n);
        const Vec2 px = P.eval(x);
        for (Vec2 f : norm.norming_set(x)) out.push_back(f.dot(px));
    }
    for (Vec2 x : sphere_kinks(norm)) {
        const Vec2 px = P.eval(x);
        for (Vec2 f : norm.norming_set(x)) out.push_back(f.dot(px));
    }
    return out;
}

RadiusEstimate radius(const VectorHomoPoly& P, const Norm& norm, double tol, int grid) {
    require(tol > 0.0, "radius: tol must be positive");
    grid = std::max(grid, 4096);
    const bool smooth = norm.smooth();

    auto g = [&](double t) {
        const Vec2 x = norm.sphere_point(t);
        if (smooth) return std::abs(norm.gradient(x).dot(P.eval(x)));
        return best_at(P, norm, x).abs;
    };

    double arg = 0.0;
    const double grid_best = detail::max_on_circle(g, grid, &arg);

    RadiusEstimate est;
    est.grid = grid;
    est.refined_tol = tol;

    BestPairing kink_best;
    Vec2 kink_x{};
    for (Vec2 x : sphere_kinks(norm)) {
        const BestPairing b = best_at(P, norm, x);
        if (b.abs > kink_best.abs) {
            kink_best = b;
            kink_x = x;
        }
    }
    if (kink_best.abs > grid_best) {
        est.value = kink_best.abs;
        est.witness = {kink_x, kink_best.functional, kink_best.functional.dot(kink_x)};
        est.witness_angle = std::atan2(kink_x.y, kink_x.x);
        est.pairing = kink_best.signed_val;
        return est;
    }

    const Vec2 x = norm.sphere_point(arg);
    const BestPairing b = best_at(P, norm, x);
    est.value = std::max(grid_best, 0.0);
    est.witness = {x, b.functional, b.functional.dot(x)};
    est.witness_angle = arg;
    est.pairing = b.signed_val;
    return est;
}

ZeroCheck verify_zero(const VectorHomoPoly& P, const Norm& norm, double tol, int grid) {
    require(tol > 0.0, "verify_zero: tol must be positive");
    const RadiusEstimate coarse = radius(P, norm, tol, grid);
    // every grid value is a genuine pairing, so exceeding tol already refutes
    if (!(coarse.value <= tol)) return {false, coarse.value};
    const RadiusEstimate fine = radius(P, norm, tol, 65536);
    return {fine.value <= tol, fine.value};
}

Vec2 zero_poly_norming(const VectorHomoPoly& P, Vec2 v, const Norm& norm) {
    require(!v.is_zero(), "zero_poly_norming: v must be nonzero");
    const ScalarHomoPoly q = q_poly(P);
    const double qv = q.eval(v);
    if (qv == 0.0) throw std::domain_error("zero_poly_norming: Q vanishes at v");
    const double nv = norm.eval(v);
    return {-P.p2.eval(v) * nv / qv, P.p1.eval(v) * nv / qv};
}

double embedded_max_pairing(const EmbeddedPoly& P, const Norm& norm, int samples,
                            std::uint64_t seed) {
    require(norm.dim() == P.d, "embedded_max_pairing: norm dimension must match P");
    require(samples >= 1, "embedded_max_pairing: samples must be >= 1");
    Rng rng(Rng::derive(seed, 0xe3bedull));
    VecD x(P.d);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        double len2 = 0.0;
        do {
            len2 = 0.0;
            for (double& xi : x) {
                xi = rng.normal();
                len2 += xi * xi;
            }
        } while (len2 < 1e-12);
        const double nx = norm.eval(x);
        for (double& xi : x) xi /= nx;
        const VecD grad = norm.gradient(x);
        const VecD px = P.eval(x);
        double pairing = 0.0;
        for (int i = 0; i < P.d; ++i) pairing += grad[i] * px[i];
        worst = std::max(worst, std::abs(pairing));
    }
    return worst;
}

IntervalCheck interval_check(const VectorHomoPoly& P, const Norm& norm, int n) {
    require(n >= 16, "interval_check: n must be >= 16");
    std::vector<double> traversal;
    traversal.reserve(n);
    std::vector<double> all;
    all.reserve(n + 64);
    for (int i = 0; i < n; ++i) {
        const Vec2 x = norm.sphere_point(detail::two_pi * i / n);
        const Vec2 px = P.eval(x);
        const auto fs = norm.norming_set(x);
        traversal.push_back(fs.front().dot(px));
        for (Vec2 f : fs) all.push_back(f.dot(px));
    }
    // at polyhedral kinks the pairing sweeps an affine segment of values;
    // sample the segment so it can bridge the jump between adjacent edges
    for (Vec2 x : sphere_kinks(norm)) {
        const Vec2 px = P.eval(x);
        const auto fs = norm.norming_set(x);
        for (int j = 0; j <= 8; ++j) {
            const double lam = j / 8.0;
            const Vec2 f = (1.0 - lam) * fs.front() + lam * fs.back();
            all.push_back(f.dot(px));
        }
    }

    IntervalCheck chk;
    for (size_t i = 0; i < traversal.size(); ++i) {
        const double step = std::abs(traversal[(i + 1) % traversal.size()] - traversal[i]);
        chk.modulus = std::max(chk.modulus, step);
    }
    std::sort(all.begin(), all.end());
    for (size_t i = 0; i + 1 < all.size(); ++i)
        chk.max_gap = std::max(chk.max_gap, all[i + 1] - all[i]);
    chk.interval_like = chk.max_gap <= std::max(2.0 * chk.modulus, 1e-9);
    return chk;
}

} // namespace pnindex
