#pragma once

#include <vector>

#include "pnindex/homopoly.hpp"
#include "pnindex/norms.hpp"

namespace pnindex {

/// Numerical radius estimate together with the pair that attained it.
struct RadiusEstimate {
    double value = 0.0;         // sup |x*(P(x))| over the sampled sphere
    DualPair witness;           // best norming pair found
    double witness_angle = 0.0; // sphere angle of the witness point
    double pairing = 0.0;       // signed x*(P(x)) at the witness
    int grid = 0;
    double refined_tol = 0.0;
};

/// x*(P(x)) at n equispaced sphere angles. Polyhedral norms contribute one
/// sample per face-extreme functional, including the exact kink points of
/// the unit sphere (which an angular grid cannot hit in floating point).
std::vector<double> range_samples(const VectorHomoPoly& P, const Norm& norm, int n);

/// Numerical radius: angular grid of >= `grid` points, golden-section
/// refinement of every bracketed local maximum of |x*(P(x))| down to tol.
RadiusEstimate radius(const VectorHomoPoly& P, const Norm& norm, double tol, int grid = 4096);

struct ZeroCheck {
    bool zero = false;
    double max_pairing = 0.0; // largest |x*(P(x))| seen at the deciding grid
};

/// Radius-zero certificate. A nonzero finding at the first grid is already
/// conclusive (grid values are true pairings); a near-zero result is
/// re-verified on a 65536-point grid before certifying.
ZeroCheck verify_zero(const VectorHomoPoly& P, const Norm& norm, double tol, int grid = 4096);

/// Norming functional reconstructed from a radius-zero map:
/// x* = -P2(v) ||v|| / Q(v), y* = P1(v) ||v|| / Q(v), Q = y P1 - x P2.
/// Requires Q(v) != 0; matches gradient(v) when v(P) = 0 and Q is definite.
Vec2 zero_poly_norming(const VectorHomoPoly& P, Vec2 v, const Norm& norm);

/// Largest |x*(P(x))| over seeded random unit vectors of ell_p^d, pairing
/// the embedded map with the d-dimensional norming functionals.
double embedded_max_pairing(const EmbeddedPoly& P, const Norm& norm, int samples,
                            std::uint64_t seed = 0);

/// Gap scan of the sampled range: flags a hole whose width exceeds the
/// empirical per-step modulus of continuity of the pairing.
struct IntervalCheck {
    bool interval_like = false;
    double max_gap = 0.0;
    double modulus = 0.0; // largest single-step change along the traversal
};

IntervalCheck interval_check(const VectorHomoPoly& P, const Norm& norm, int n = 16384);

} // namespace pnindex
