#pragma once

#include <span>
#include <vector>

#include "pnindex/norms.hpp"
#include "pnindex/vec.hpp"

namespace pnindex {

/// Homogeneous polynomial in two real variables. coeffs[i] multiplies
/// x^{degree-i} y^i; the list is dense and owns exactly degree+1 entries.
class ScalarHomoPoly {
public:
    ScalarHomoPoly() : degree_(1), coeffs_{0.0, 0.0} {}
    ScalarHomoPoly(int degree, VecD coeffs);

    static ScalarHomoPoly zero(int degree);
    static ScalarHomoPoly monomial(int degree, int ypow, double c);

    int degree() const { return degree_; }
    const VecD& coeffs() const { return coeffs_; }
    double operator[](int i) const { return coeffs_[i]; }
    double& operator[](int i) { return coeffs_[i]; }

    /// Horner evaluation in y/x or x/y, whichever ratio is <= 1 in magnitude.
    double eval(Vec2 v) const;

    ScalarHomoPoly dx() const;
    ScalarHomoPoly dy() const;
    ScalarHomoPoly mul_x() const;
    ScalarHomoPoly mul_y() const;

    double coeff_norm2() const;

private:
    int degree_;
    VecD coeffs_;
};

ScalarHomoPoly operator+(const ScalarHomoPoly& a, const ScalarHomoPoly& b);
ScalarHomoPoly operator-(const ScalarHomoPoly& a, const ScalarHomoPoly& b);
ScalarHomoPoly operator*(double s, const ScalarHomoPoly& q);

/// Product of homogeneous polynomials (coefficient convolution).
ScalarHomoPoly homo_mul(const ScalarHomoPoly& a, const ScalarHomoPoly& b);

/// Linear map of the plane, row-major (a b; c d).
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const;

    static Mat2 identity() { return {}; }
    static Mat2 flip_x() { return {-1.0, 0.0, 0.0, 1.0}; }
    static Mat2 flip_y() { return {1.0, 0.0, 0.0, -1.0}; }
    static Mat2 swap_xy() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 rotation(double t);
};

/// Coefficients of v -> q(S v), expanded exactly via binomial products.
ScalarHomoPoly compose_linear(const ScalarHomoPoly& q, const Mat2& S);

/// Polynomial map of the plane: a pair of scalar polynomials of one degree.
struct VectorHomoPoly {
    ScalarHomoPoly p1;
    ScalarHomoPoly p2;

    VectorHomoPoly() = default;
    VectorHomoPoly(ScalarHomoPoly q1, ScalarHomoPoly q2);

    int degree() const { return p1.degree(); }
    Vec2 eval(Vec2 v) const { return {p1.eval(v), p2.eval(v)}; }
    bool is_zero() const;
};

VectorHomoPoly operator+(const VectorHomoPoly& a, const VectorHomoPoly& b);
VectorHomoPoly operator*(double s, const VectorHomoPoly& P);

/// S^{-1} o P o S for an invertible linear map S.
VectorHomoPoly conjugate(const VectorHomoPoly& P, const Mat2& S);

/// Coefficient vector (p1 then p2), length 2(degree+1); inverse of unpack.
VecD pack(const VectorHomoPoly& P);
VectorHomoPoly unpack(int degree, std::span<const double> c);
double coeff_dot(const VectorHomoPoly& a, const VectorHomoPoly& b);
double coeff_norm(const VectorHomoPoly& P);

/// Symmetric multilinear form of even order generated by a homogeneous
/// polynomial R with A(x,...,x) = R(x).
class SymMultiForm {
public:
    explicit SymMultiForm(ScalarHomoPoly generator);

    int order() const { return generator_.degree(); }
    const ScalarHomoPoly& generator() const { return generator_; }

    /// Full polarization sum over sign vectors: 2^order generator evals,
    /// combined by a fixed pairwise tree so the result is run-independent.
    double apply(std::span<const Vec2> args) const;

    /// A(x,...,x,w) via the directional-derivative identity grad R(x).w / order;
    /// agrees with apply() and costs two polynomial evaluations.
    double diag_with(Vec2 x, Vec2 w) const;

private:
    ScalarHomoPoly generator_;
};

SymMultiForm polarize(const ScalarHomoPoly& r);

/// Q(x,y) = y P1(x,y) - x P2(x,y); exact coefficient arithmetic.
ScalarHomoPoly q_poly(const VectorHomoPoly& P);

struct DefiniteReport {
    bool definite = false;
    double min_abs = 0.0; // smallest |Q| found on the Euclidean circle
    Vec2 witness;         // where that minimum (or a sign change) occurs
};

/// Does Q keep a fixed sign off the origin? Angular grid plus Newton
/// polishing of the extremum nearest zero; threshold 1e-10. Odd degree
/// is rejected immediately with a sign-change witness.
DefiniteReport q_definite(const ScalarHomoPoly& q, int grid = 8192);

/// sup{||P(x)|| : ||x|| = 1} by angular grid (>= 4096) with golden-section
/// refinement to tol.
double sup_norm(const VectorHomoPoly& P, const Norm& norm, double tol = 1e-10);

/// P(x) = -A(x,..,x,y0) x0 + A(x,..,x,x0) y0 for the form generated by R.
/// Requires x0, y0 independent and R of one sign off the origin; the result
/// has numerical radius 0 for the norm R(.)^{1/degree}.
VectorHomoPoly tangent_poly(const ScalarHomoPoly& r, Vec2 x0, Vec2 y0);

/// (-y^{p-1}, x^{p-1}) for even p >= 2; radius 0 on ell_p^2.
VectorHomoPoly lp_zero_poly(int p);

/// Degree-3 zero-radius map of the asym-a norm: first component
/// (a/(1+a))^a (1+2a)/(1+a) x^2 y + (a/(1+a))^{1+2a} y^3, second -x^3.
VectorHomoPoly asym_zero_poly(double a);

/// Degree 2m-1 zero-radius map of the interp-sym norm:
/// P1 = theta y (x^{2m-2}+y^{2m-2}) + (1-theta) y^{2m-3}(x^2+y^2),
/// P2(x,y) = -P1(y,x). m >= 2 (m = 2 collapses both terms to the
/// Euclidean rotation factor).
VectorHomoPoly interp_zero_poly(int m, double theta);

/// Smallest-degree polynomial R with ||v|| = R(v)^{1/deg R}, for the
/// variants where some power of the norm is a polynomial (lp with even
/// integer p, beta-quartic, interp-sym at theta 0 or 1). Throws otherwise.
ScalarHomoPoly generator_poly(const Norm& norm);

/// P acting on the first two coordinates of R^d, zero on the rest.
struct EmbeddedPoly {
    VectorHomoPoly base;
    int d = 2;

    VecD eval(std::span<const double> v) const;
};

EmbeddedPoly embed_lp(VectorHomoPoly P, int d);

} // namespace pnindex
