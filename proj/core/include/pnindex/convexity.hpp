#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnindex/norms.hpp"

namespace pnindex {

/// A convexity violation: f(lambda u + (1-lambda) v) exceeds the chord value.
struct MidpointWitness {
    Vec2 u;
    Vec2 v;
    double lambda = 0.5;
    double lhs = 0.0; // f at the combination
    double rhs = 0.0; // lambda f(u) + (1-lambda) f(v)

    double margin() const { return lhs - rhs; }
};

struct ConvexityReport {
    bool certified = false; // certified-convex-on-grid; otherwise violation-found
    std::optional<MidpointWitness> witness;
    int grid = 0;                  // pairs or grid points examined
    double min_hessian_eig = 0.0;  // meaningful for the Hessian route only
};

/// Random convexity probing: sphere pairs drawn per cone octant, scaled
/// pairs off the sphere, and a deterministic family of near-axis and
/// near-diagonal probes that pin down the quartic family's failure modes.
/// Non-finite evaluations (formulas outside their norm range) are skipped.
ConvexityReport midpoint_test(const Norm& norm, int pairs, std::uint64_t seed = 0);

/// Finite-difference Hessian certificate on the annulus 0.5 <= |v|_2 <= 2,
/// excluding a thin band around the axes where second derivatives may blow
/// up; the band's edge is sampled 8x more densely. Verdict is certified when
/// the minimal eigenvalue stays above -1e-7.
ConvexityReport hessian_grid(const Norm& norm, int grid);

struct LogConvexitySample {
    double t = 0.0;
    double phi1 = 0.0;            // closed-form (log f(t,1))'
    double phi2 = 0.0;            // closed-form (log f(t,1))''
    double log_convex_term = 0.0; // phi2 + phi1^2
    double fd_phi2 = 0.0;         // finite-difference check of phi2
};

/// Closed-form log-derivative profiles for the geometric-mean and asym-a
/// families, with a built-in finite-difference cross-check of phi''.
std::vector<LogConvexitySample> log_convexity_profile(const Norm& family, std::span<const double> t_grid);

struct BetaClassification {
    double beta = 0.0;
    bool is_norm = false;
    std::string route;            // decomposition | substitution | negative-witness | above-three-witness
    double identity_error = 0.0;  // worst relative error of the certifying identity
    std::optional<MidpointWitness> witness; // present exactly when is_norm is false
};

/// Classify the quartic family (x^4 + 2 beta x^2 y^2 + y^4)^{1/4}:
/// beta in [0,1] certifies through the two-norm decomposition identity,
/// beta in (1,3] through the rotation-by-45-degrees substitution mapping it
/// onto the first case, and anything outside [0,3] gets an explicit
/// midpoint violation witness.
BetaClassification beta_classify(double beta);

struct EpsCounterexample {
    bool found = false;
    double eps = 0.0;
    double n11 = 0.0; // value at (1,1)
    double n10 = 0.0; // value at (1,0)
    double n01 = 0.0; // value at (0,1)
};

/// First eps in the (positive, decreasing) grid where the eps-geometric-mean
/// formula violates the triangle inequality at (1,0) + (0,1).
EpsCounterexample eps_counterexample(double theta, std::span<const double> eps_grid);

} // namespace pnindex
