#pragma once

#include <cstdint>
#include <vector>

#include "pnindex/homopoly.hpp"
#include "pnindex/norms.hpp"

namespace pnindex {

/// Optimizer effort: independent random starts, simplex iterations per stage.
struct Budget {
    int starts = 64;
    int iterations = 300;
};

struct IndexEstimate {
    int k = 0;
    double value = 0.0;  // best certified v(P)/||P|| found; upper bound for the index
    VectorHomoPoly best; // coefficients normalized to unit Euclidean length
    int starts = 0;
    long long evals = 0; // objective evaluations across all starts
    std::uint64_t seed = 0;
};

/// Precomputed sphere points with their norming functionals (face extreme
/// points at polyhedral kinks), shared read-only by optimizer workers.
class SphereCache {
public:
    SphereCache(Norm norm, int grid);

    int points() const { return static_cast<int>(pts_.size()); }

    /// Precomputes the monomial basis of one degree at every cached point;
    /// evaluations of that degree then reduce to short dot products. Call
    /// before sharing the cache across workers.
    void prepare(int degree);

    /// Gram matrix of the pairing rows: each cached (point, functional)
    /// pair contributes the rank-one square of c -> f.P_c(x), which is
    /// linear in the 2(degree+1) coefficients. Requires prepare(degree).
    std::vector<VecD> gram(int degree) const;

    /// max |f.P(x)| over all cached pairs.
    double vhat(const VectorHomoPoly& P) const;

    /// max |P(x)|_2 over the cached sphere points.
    double shat(const VectorHomoPoly& P) const;

    /// vhat/shat; large sentinel when P is (numerically) the zero map.
    double objective(const VectorHomoPoly& P) const;

private:
    Norm norm_;
    std::vector<Vec2> pts_;
    std::vector<Vec2> functionals_;
    std::vector<int> offsets_; // CSR: functionals of pts_[i] at [offsets_[i], offsets_[i+1])
    int basis_degree_ = -1;
    VecD basis_; // points x (degree+1) monomials, row-major
};

/// Minimize v(P)/||P|| over degree-k polynomial maps by seeded multi-start
/// simplex descent on the coefficient sphere: population 4(k+1) (start plus
/// +/- axis offsets), reflect 1 / expand 2 / contract 0.5 / shrink 0.5,
/// shrinking restarts at the incumbent, one start guided by the bottom
/// eigenvector of the sampled pairing Gram matrix, and a final grid-refined
/// certification of the reported value. Deterministic for a fixed seed and
/// budget, independent of worker count.
IndexEstimate estimate_index(const Norm& norm, int k, Budget budget = {}, std::uint64_t seed = 0);

struct MinDegreeResult {
    bool found = false;
    int k0 = 0; // meaningful only when found
    std::vector<IndexEstimate> per_k;
};

/// Smallest k <= kmax whose estimate drops below the zero threshold (1e-6)
/// and whose best polynomial then passes verify_zero with grid escalation.
MinDegreeResult min_zero_degree(const Norm& norm, int kmax, Budget budget = {}, std::uint64_t seed = 0);

/// |cosine| between coefficient vectors after unit normalization; 1 means
/// the polynomials are scalar multiples. Both inputs must have the same
/// degree and pass a loose verify_zero on the given norm.
double uniqueness_check(const Norm& norm, const VectorHomoPoly& canonical, const VectorHomoPoly& found);

struct MonotonicityReport {
    std::vector<IndexEstimate> entries; // k = 1..kmax in order
    std::vector<int> violations;        // k where entry(k+1) > entry(k) + tol
    double tol = 1e-3;
};

/// Index estimates for k = 1..kmax; estimates are upper bounds, so only
/// increases beyond tol are flagged as violations.
MonotonicityReport monotonicity_report(const Norm& norm, int kmax, Budget budget = {},
                                       std::uint64_t seed = 0, double tol = 1e-3);

/// Worker cap: PNINDEX_THREADS when set (>= 1), else hardware concurrency.
int worker_count();

} // namespace pnindex
