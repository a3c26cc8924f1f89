#include "pnindex/index_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "internal_util.hpp"
#include "pnindex/numrange.hpp"
#include "pnindex/rng.hpp"

namespace pnindex {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

constexpr double kZeroThreshold = 1e-6;
constexpr double kBigObjective = 1e100;

double vec_norm(const VecD& c) {
    double s = 0.0;
    for (double v : c) s += v * v;
    return std::sqrt(s);
}

/// Scale-invariant objective v(P)/||P|| sampled on a SphereCache; reuses one
/// polynomial buffer so simplex evaluation does not allocate.
class Objective {
public:
    Objective(const SphereCache& cache, int k) : cache_(cache), k_(k), scratch_(unpack(k, VecD(2 * (k + 1), 0.0))) {}

    double operator()(const VecD& c) {
        ++evals_;
        const double n = vec_norm(c);
        if (!(n > 1e-12)) return kBigObjective;
        const int stride = k_ + 1;
        for (int i = 0; i < stride; ++i) {
            scratch_.p1[i] = c[i] / n;
            scratch_.p2[i] = c[stride + i] / n;
        }
        return cache_.objective(scratch_);
    }

    long long evals() const { return evals_; }

private:
    const SphereCache& cache_;
    int k_;
    VectorHomoPoly scratch_;
    long long evals_ = 0;
};

struct NmResult {
    VecD best;
    double value = kBigObjective;
};

/// Simplex descent (reflect 1, expand 2, contract 0.5, shrink 0.5) on the
/// raw coefficient vector; the objective normalizes internally. The
/// population holds 2 dim = 4(k+1) points: the start plus +/- axis offsets,
/// which keeps every coordinate direction represented after restarts.
NmResult nelder_mead(Objective& f, const VecD& init, double scale, int iters) {
    const int dim = static_cast<int>(init.size());
    const int pop = 2 * dim;
    std::vector<VecD> xs(pop, init);
    std::vector<double> fs(pop);
    for (int i = 1; i <= dim; ++i) xs[i][i - 1] += scale;
    for (int i = dim + 1; i < pop; ++i) xs[i][i - dim - 1] -= scale;
    for (int i = 0; i < pop; ++i) fs[i] = f(xs[i]);

    std::vector<int> ord(pop);
    std::iota(ord.begin(), ord.end(), 0);
    VecD centroid(dim), cand(dim), refl(dim);

    for (int it = 0; it < iters; ++it) {
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int ib = ord[0], isecond = ord[pop - 2], iw = ord[pop - 1];
        if (fs[ib] < 1e-12) break;
        if (fs[iw] - fs[ib] <= 1e-16 * std::max(1.0, fs[ib])) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (int i = 0; i < pop; ++i) {
            if (i == iw) continue;
            for (int d = 0; d < dim; ++d) centroid[d] += xs[i][d];
        }
        for (double& v : centroid) v /= pop - 1;

        for (int d = 0; d < dim; ++d) refl[d] = centroid[d] + (centroid[d] - xs[iw][d]);
        const double fr = f(refl);

        if (fr < fs[ib]) {
            for (int d = 0; d < dim; ++d) cand[d] = centroid[d] + 2.0 * (centroid[d] - xs[iw][d]);
            const double fe = f(cand);
            if (fe < fr) {
                xs[iw] = cand;
                fs[iw] = fe;
            } else {
                xs[iw] = refl;
                fs[iw] = fr;
            }
            continue;
        }
        if (fr < fs[isecond]) {
            xs[iw] = refl;
            fs[iw] = fr;
            continue;
        }
        bool accepted = false;
        if (fr < fs[iw]) {
            for (int d = 0; d < dim; ++d) cand[d] = centroid[d] + 0.5 * (refl[d] - centroid[d]);
            const double fc = f(cand);
            if (fc <= fr) {
                xs[iw] = cand;
                fs[iw] = fc;
                accepted = true;
            }
        } else {
            for (int d = 0; d < dim; ++d) cand[d] = centroid[d] - 0.5 * (centroid[d] - xs[iw][d]);
            const double fc = f(cand);
            if (fc < fs[iw]) {
                xs[iw] = cand;
                fs[iw] = fc;
                accepted = true;
            }
        }
        if (!accepted) {
            for (int i = 0; i < pop; ++i) {
                if (i == ib) continue;
                for (int d = 0; d < dim; ++d) xs[i][d] = xs[ib][d] + 0.5 * (xs[i][d] - xs[ib][d]);
                fs[i] = f(xs[i]);
            }
        }
    }
    int ib = 0;
    for (int i = 1; i < pop; ++i)
        if (fs[i] < fs[ib]) ib = i;
    return {xs[ib], fs[ib]};
}

struct StartResult {
    VecD best;
    double value = kBigObjective;
    long long evals = 0;
};

StartResult run_start(int k, const SphereCache& coarse, const SphereCache& fine, int iters,
                      std::uint64_t stream_seed, const VecD* guided_init) {
    Rng rng(stream_seed);
    const int dim = 2 * (k + 1);
    VecD init(dim);
    for (double& v : init) v = rng.normal();
    const double n = vec_norm(init);
    for (double& v : init) v /= n;
    if (guided_init) init = *guided_init;

    Objective fc(coarse, k);
    NmResult explore = nelder_mead(fc, init, guided_init ? 0.02 : 0.4, iters);

    Objective ff(fine, k);
    StartResult out;
    out.best = explore.best;
    out.value = ff(out.best);
    for (double scale : {0.05, 0.01, 0.002, 4e-4, 8e-5}) {
        const NmResult polished = nelder_mead(ff, out.best, scale, iters);
        if (polished.value < out.value) {
            out.best = polished.best;
            out.value = polished.value;
        }
        if (out.value < 1e-12) break;
    }
    out.evals = fc.evals() + ff.evals();
    return out;
}

} // namespace

SphereCache::SphereCache(Norm norm, int grid) : norm_(std::move(norm)) {
    require(grid >= 16, "SphereCache: grid must be >= 16");
    require(norm_.planar(), "SphereCache: plane norms only");
    offsets_.push_back(0);
    auto add = [&](Vec2 x) {
        pts_.push_back(x);
        for (Vec2 f : norm_.norming_set(x)) functionals_.push_back(f);
        offsets_.push_back(static_cast<int>(functionals_.size()));
    };
    for (int i = 0; i < grid; ++i) add(norm_.sphere_point(detail::two_pi * i / grid));
    for (Vec2 x : sphere_kinks(norm_)) add(x);
}

void SphereCache::prepare(int degree) {
    require(degree >= 1, "SphereCache::prepare: degree must be >= 1");
    basis_degree_ = degree;
    const int nc = degree + 1;
    basis_.assign(pts_.size() * nc, 0.0);
    VecD xp(nc), yp(nc);
    for (size_t i = 0; i < pts_.size(); ++i) {
        xp[0] = yp[0] = 1.0;
        for (int t = 1; t < nc; ++t) {
            xp[t] = xp[t - 1] * pts_[i].x;
            yp[t] = yp[t - 1] * pts_[i].y;
        }
        for (int j = 0; j < nc; ++j) basis_[i * nc + j] = xp[degree - j] * yp[j];
    }
}

std::vector<VecD> SphereCache::gram(int degree) const {
    require(degree == basis_degree_, "SphereCache::gram: prepare(degree) first");
    const int nc = degree + 1;
    // the row for pair (x, f) is [f.x b(x) | f.y b(x)]; accumulate the three
    // distinct nc x nc blocks of its outer square
    std::vector<VecD> sxx(nc, VecD(nc, 0.0)), sxy(nc, VecD(nc, 0.0)), syy(nc, VecD(nc, 0.0));
    const double* row = basis_.data();
    for (size_t i = 0; i < pts_.size(); ++i, row += nc) {
        double wxx = 0.0, wxy = 0.0, wyy = 0.0;
        for (int j = offsets_[i]; j < offsets_[i + 1]; ++j) {
            wxx += functionals_[j].x * functionals_[j].x;
            wxy += functionals_[j].x * functionals_[j].y;
            wyy += functionals_[j].y * functionals_[j].y;
        }
        for (int a = 0; a < nc; ++a) {
            for (int b = 0; b < nc; ++b) {
                const double bb = row[a] * row[b];
                sxx[a][b] += wxx * bb;
                sxy[a][b] += wxy * bb;
                syy[a][b] += wyy * bb;
            }
        }
    }
    std::vector<VecD> M(2 * nc, VecD(2 * nc, 0.0));
    for (int a = 0; a < nc; ++a) {
        for (int b = 0; b < nc; ++b) {
            M[a][b] = sxx[a][b];
            M[a][nc + b] = sxy[a][b];
            M[nc + a][b] = sxy[b][a];
            M[nc + a][nc + b] = syy[a][b];
        }
    }
    return M;
}

double SphereCache::vhat(const VectorHomoPoly& P) const {
    double best = 0.0;
    if (P.degree() == basis_degree_) {
        const int nc = basis_degree_ + 1;
        const double* c1 = P.p1.coeffs().data();
        const double* c2 = P.p2.coeffs().data();
        const double* row = basis_.data();
        for (size_t i = 0; i < pts_.size(); ++i, row += nc) {
            double s1 = 0.0, s2 = 0.0;
            for (int j = 0; j < nc; ++j) {
                s1 += row[j] * c1[j];
                s2 += row[j] * c2[j];
            }
            for (int j = offsets_[i]; j < offsets_[i + 1]; ++j) {
                const double val = std::abs(functionals_[j].x * s1 + functionals_[j].y * s2);
                if (val > best) best = val;
            }
        }
        return best;
    }
    for (size_t i = 0; i < pts_.size(); ++i) {
        const Vec2 px = P.eval(pts_[i]);
        for (int j = offsets_[i]; j < offsets_[i + 1]; ++j)
            best = std::max(best, std::abs(functionals_[j].dot(px)));
    }
    return best;
}

double SphereCache::shat(const VectorHomoPoly& P) const {
    double best = 0.0;
    for (const Vec2& x : pts_) {
        const Vec2 px = P.eval(x);
        best = std::max(best, px.x * px.x + px.y * px.y);
    }
    return std::sqrt(best);
}

double SphereCache::objective(const VectorHomoPoly& P) const {
    double v = 0.0, s = 0.0;
    if (P.degree() == basis_degree_) {
        const int nc = basis_degree_ + 1;
        const double* c1 = P.p1.coeffs().data();
        const double* c2 = P.p2.coeffs().data();
        const double* row = basis_.data();
        for (size_t i = 0; i < pts_.size(); ++i, row += nc) {
            double s1 = 0.0, s2 = 0.0;
            for (int j = 0; j < nc; ++j) {
                s1 += row[j] * c1[j];
                s2 += row[j] * c2[j];
            }
            const double len2 = s1 * s1 + s2 * s2;
            if (len2 > s) s = len2;
            for (int j = offsets_[i]; j < offsets_[i + 1]; ++j) {
                const double val = std::abs(functionals_[j].x * s1 + functionals_[j].y * s2);
                if (val > v) v = val;
            }
        }
        if (!(s > 1e-300)) return kBigObjective;
        return v / std::sqrt(s);
    }
    for (size_t i = 0; i < pts_.size(); ++i) {
        const Vec2 px = P.eval(pts_[i]);
        s = std::max(s, px.x * px.x + px.y * px.y);
        for (int j = offsets_[i]; j < offsets_[i + 1]; ++j)
            v = std::max(v, std::abs(functionals_[j].dot(px)));
    }
    if (!(s > 1e-300)) return kBigObjective;
    return v / std::sqrt(s);
}

int worker_count() {
    if (const char* env = std::getenv("PNINDEX_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return std::min(v, 64);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? std::min(static_cast<int>(hc), 16) : 4;
}

IndexEstimate estimate_index(const Norm& norm, int k, Budget budget, std::uint64_t seed) {
    require(k >= 1 && k <= 16, "estimate_index: k must lie in [1,16]");
    require(budget.starts >= 1 && budget.iterations >= 1, "estimate_index: budget must be positive");
    require(norm.planar(), "estimate_index: only plane norms are supported");

    SphereCache coarse(norm, 256);
    SphereCache fine(norm, 2048);
    coarse.prepare(k);
    fine.prepare(k);

    // On the sampled grid every pairing is linear in the coefficients, so
    // the least-squares-best direction is the bottom eigenvector of the
    // pairing Gram matrix; it seeds start 0 and the remaining starts stay
    // random to cover other basins.
    const VecD guided = detail::min_eigvec_sym(fine.gram(k));

    std::vector<StartResult> results(budget.starts);
    const int workers = std::clamp(worker_count(), 1, budget.starts);
    auto work = [&](int t0) {
        for (int s = t0; s < budget.starts; s += workers)
            results[s] = run_start(k, coarse, fine, budget.iterations, Rng::derive(seed, s),
                                   s == 0 ? &guided : nullptr);
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (int t = 1; t < workers; ++t) pool.emplace_back(work, t);
        work(0);
        for (auto& th : pool) th.join();
    }

    // reduction in start order; strict < keeps the lowest start on ties
    int bi = 0;
    long long evals = 0;
    for (int s = 0; s < budget.starts; ++s) {
        evals += results[s].evals;
        if (results[s].value < results[bi].value) bi = s;
    }

    VectorHomoPoly best = unpack(k, results[bi].best);
    const double cn = coeff_norm(best);
    if (cn > 0.0) best = (1.0 / cn) * best;

    IndexEstimate est;
    est.k = k;
    est.best = best;
    est.starts = budget.starts;
    est.evals = evals;
    est.seed = seed;
    const double s = sup_norm(best, norm, 1e-10);
    est.value = s > 0.0 ? radius(best, norm, 1e-9, 4096).value / s : 0.0;
    return est;
}

MinDegreeResult min_zero_degree(const Norm& norm, int kmax, Budget budget, std::uint64_t seed) {
    require(kmax >= 1 && kmax <= 9, "min_zero_degree: kmax must lie in [1,9]");
    MinDegreeResult res;
    for (int k = 1; k <= kmax; ++k) {
        IndexEstimate est = estimate_index(norm, k, budget, Rng::derive(seed, 1000 + k));
        res.per_k.push_back(est);
        if (est.value <= kZeroThreshold && verify_zero(est.best, norm, kZeroThreshold).zero) {
            res.found = true;
            res.k0 = k;
            break; // smallest qualifying degree; larger k not needed
        }
    }
    return res;
}

double uniqueness_check(const Norm& norm, const VectorHomoPoly& canonical, const VectorHomoPoly& found) {
    require(canonical.degree() == found.degree(), "uniqueness_check: degree mismatch");
    const double na = coeff_norm(canonical), nb = coeff_norm(found);
    require(na > 0.0 && nb > 0.0, "uniqueness_check: zero polynomial");
    const VectorHomoPoly a = (1.0 / na) * canonical;
    const VectorHomoPoly b = (1.0 / nb) * found;
    if (!verify_zero(a, norm, 1e-5).zero || !verify_zero(b, norm, 1e-5).zero)
        throw std::domain_error("uniqueness_check: both inputs must have numerical radius near 0");
    return std::abs(coeff_dot(a, b));
}

MonotonicityReport monotonicity_report(const Norm& norm, int kmax, Budget budget, std::uint64_t seed,
                                       double tol) {
    require(kmax >= 1 && kmax <= 7, "monotonicity_report: kmax must lie in [1,7]");
    require(tol > 0.0, "monotonicity_report: tol must be positive");
    MonotonicityReport rep;
    rep.tol = tol;
    for (int k = 1; k <= kmax; ++k)
        rep.entries.push_back(estimate_index(norm, k, budget, Rng::derive(seed, 2000 + k)));
    for (int k = 1; k < kmax; ++k)
        if (rep.entries[k].value > rep.entries[k - 1].value + tol) rep.violations.push_back(k);
    return rep;
}

} // namespace pnindex
