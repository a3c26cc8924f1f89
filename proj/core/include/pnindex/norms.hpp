#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pnindex/vec.hpp"

namespace pnindex {

/// Thrown when the unique-norming-functional request hits a kink of a
/// polyhedral norm; callers should fall back to norming_set().
struct NonSmoothPoint : std::domain_error {
    explicit NonSmoothPoint(const std::string& what) : std::domain_error(what) {}
};

enum class PolyhedralKind { L1, Linf };

struct LpParams {
    double p;
    int d; // ambient dimension, 2 unless used for the ell_p^d embedding
};
struct PolyhedralParams {
    PolyhedralKind kind;
};
/// (x^4 + 2 beta x^2 y^2 + y^4)^{1/4}; a norm exactly for beta in [0,3].
struct BetaQuarticParams {
    double beta;
};
/// Asymmetric two-factor norm with weights (a/(1+a))^{1+a} and (a/(1+a))^a,
/// exponents -a/2 and (1+a)/2. Absolute and normalized, not symmetric.
struct AsymAParams {
    double a;
    double w_inner; // (a/(1+a))^{1+a}
    double w_outer; // (a/(1+a))^a
};
/// (x^2+y^2)^{theta/2} (x^{2m-2}+y^{2m-2})^{(1-theta)/(2m-2)}.
struct InterpSymParams {
    int m;
    double theta;
};
/// ||.||_{p1}^theta ||.||_{p0}^{1-theta}, p0, p1 >= 2.
struct GeomMeanParams {
    double p0;
    double p1;
    double theta;
};
/// (x^2 + eps y^2)^{theta/2} (eps x^2 + y^2)^{(1-theta)/2}.
/// Positively homogeneous but not guaranteed to be a norm.
struct EpsGeomMeanParams {
    double theta;
    double eps;
};

using NormVariant = std::variant<LpParams, PolyhedralParams, BetaQuarticParams, AsymAParams,
                                 InterpSymParams, GeomMeanParams, EpsGeomMeanParams>;

/// classify() result: which of the standard structural identities the norm
/// satisfies on the sampled point set.
struct NormTraits {
    bool absolute = false;
    bool symmetric = false;
    bool normalized = false;
};

/// A point of the norming set Pi(X): unit vector, norming functional, pairing.
struct DualPair {
    Vec2 point;
    Vec2 functional;
    double pairing = 0.0;
};

/// Immutable description of one of the supported plane norms (plus ell_p^d).
/// All operations are pure; copies are cheap.
class Norm {
public:
    static Norm lp(double p, int d = 2);
    static Norm l1();
    static Norm linf();
    static Norm beta_quartic(double beta);
    static Norm asym_a(double a);
    static Norm interp_sym(int m, double theta);
    static Norm geom_mean(double p0, double p1, double theta);
    static Norm eps_geom_mean(double theta, double eps);

    /// Norm value; exactly 0 at the zero vector for every variant.
    double eval(Vec2 v) const;

    /// d-dimensional evaluation; only the Lp variant leaves the plane.
    double eval(std::span<const double> v) const;

    /// Gradient of the norm at v != 0, i.e. the unique norming functional of
    /// v/||v||. Throws NonSmoothPoint on polyhedral kinks.
    Vec2 gradient(Vec2 v) const;

    /// Gradient for Lp in d dimensions.
    VecD gradient(std::span<const double> v) const;

    /// Extreme points of the norming face of v != 0. Singleton {gradient}
    /// for smooth norms; 2 extreme functionals at polyhedral kinks.
    std::vector<Vec2> norming_set(Vec2 v) const;

    /// Radial section of the unit sphere: (cos t, sin t)/||(cos t, sin t)||.
    Vec2 sphere_point(double angle) const;

    /// Dual norm oracle: sup{f.x : ||x|| <= 1} by angular grid plus
    /// golden-section refinement; 1e-9 budget for the smooth variants.
    double dual_eval(Vec2 functional, int grid = 4096) const;

    /// Sampled check of the absolute/symmetric/normalized identities
    /// (tolerance 1e-12 on each sampled point). samples >= 100.
    NormTraits classify(int samples, std::uint64_t seed = 0) const;

    /// False only at polyhedral kinks; variant-level property.
    bool smooth() const;

    /// True when the formula is known to define a norm for the stored
    /// parameters. False for EpsGeomMean and for BetaQuartic outside [0,3].
    bool guaranteed_norm() const;

    int dim() const;
    bool planar() const { return dim() == 2; }

    std::string name() const;

    const NormVariant& spec() const { return spec_; }

private:
    explicit Norm(NormVariant spec) : spec_(std::move(spec)) {}
    NormVariant spec_;
};

/// DualPair at a sphere angle of a smooth norm (or a smooth point of a
/// polyhedral one): point = sphere_point(angle), functional = gradient.
DualPair dual_pair_at(const Norm& norm, double angle);

/// Non-smooth points of the unit sphere, with exact coordinates (an angular
/// grid lands next to them but never on them). Empty for smooth norms.
std::vector<Vec2> sphere_kinks(const Norm& norm);

} // namespace pnindex
