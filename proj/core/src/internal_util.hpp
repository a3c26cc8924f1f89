#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pnindex/vec.hpp"

namespace pnindex::detail {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Golden-section maximization on [a, b]; returns the best value, argmax via out.
template <class F>
double golden_max(F&& f, double a, double b, int iters = 80, double* arg = nullptr) {
    const double phi = 0.61803398874989484820;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters && (b - a) > 1e-14; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        }
    }
    if (f1 >= f2) {
        if (arg) *arg = x1;
        return f1;
    }
    if (arg) *arg = x2;
    return f2;
}

/// Maximum of f over one period of the circle: full grid scan, then
/// golden-section refinement of the highest local-maximum cells (at most
/// max_refine of them, plus the global argmax cell). The cap keeps noise
/// floors near 0 from triggering thousands of refinements; with grids much
/// finer than the oscillation count of f, every competitive peak holds a
/// top-ranked sample. NaN samples are skipped.
template <class F>
double max_on_circle(F&& f, int grid, double* argmax = nullptr, int max_refine = 64) {
    std::vector<double> val(grid);
    int ibest = -1;
    for (int i = 0; i < grid; ++i) {
        val[i] = f(two_pi * i / grid);
        if (std::isnan(val[i])) continue;
        if (ibest < 0 || val[i] > val[ibest]) ibest = i;
    }
    if (ibest < 0) return std::numeric_limits<double>::quiet_NaN();

    double best = val[ibest];
    double best_arg = two_pi * ibest / grid;
    auto refine = [&](int i) {
        const double a = two_pi * (i - 1) / grid, b = two_pi * (i + 1) / grid;
        double arg = 0.0;
        const double v = golden_max(f, a, b, 80, &arg);
        if (!std::isnan(v) && v > best) {
            best = v;
            best_arg = arg;
        }
    };
    std::vector<int> cells;
    for (int i = 0; i < grid; ++i) {
        if (std::isnan(val[i])) continue;
        const double prev = val[(i + grid - 1) % grid], next = val[(i + 1) % grid];
        if (std::isnan(prev) || std::isnan(next)) continue;
        if (val[i] >= prev && val[i] >= next && (val[i] > prev || val[i] > next)) cells.push_back(i);
    }
    if (static_cast<int>(cells.size()) > max_refine) {
        std::sort(cells.begin(), cells.end(), [&](int a, int b) {
            return val[a] != val[b] ? val[a] > val[b] : a < b;
        });
        cells.resize(max_refine);
    }
    for (int i : cells) refine(i);
    refine(ibest);
    if (argmax) *argmax = best_arg;
    return best;
}

/// Gaussian elimination with full pivoting; solves A X = B for several
/// right-hand sides. A is n x n, rhs holds columns b of length n.
inline std::vector<VecD> solve_full_pivot(std::vector<VecD> A, std::vector<VecD> rhs) {
    const int n = static_cast<int>(A.size());
    std::vector<int> colperm(n);
    for (int i = 0; i < n; ++i) colperm[i] = i;

    for (int step = 0; step < n; ++step) {
        int pr = step, pc = step;
        double pmax = 0.0;
        for (int r = step; r < n; ++r)
            for (int c = step; c < n; ++c)
                if (std::abs(A[r][c]) > pmax) {
                    pmax = std::abs(A[r][c]);
                    pr = r; pc = c;
                }
        if (pmax == 0.0) throw std::runtime_error("solve_full_pivot: singular system");
        std::swap(A[step], A[pr]);
        for (auto& b : rhs) std::swap(b[step], b[pr]);
        if (pc != step) {
            for (int r = 0; r < n; ++r) std::swap(A[r][step], A[r][pc]);
            std::swap(colperm[step], colperm[pc]);
        }
        for (int r = step + 1; r < n; ++r) {
            const double m = A[r][step] / A[step][step];
            if (m == 0.0) continue;
            for (int c = step; c < n; ++c) A[r][c] -= m * A[step][c];
            for (auto& b : rhs) b[r] -= m * b[step];
        }
    }
    std::vector<VecD> out(rhs.size(), VecD(n));
    for (size_t s = 0; s < rhs.size(); ++s) {
        VecD x(n);
        for (int r = n - 1; r >= 0; --r) {
            double acc = rhs[s][r];
            for (int c = r + 1; c < n; ++c) acc -= A[r][c] * x[c];
            x[r] = acc / A[r][r];
        }
        for (int r = 0; r < n; ++r) out[s][colperm[r]] = x[r];
    }
    return out;
}

/// Eigenvector of the smallest eigenvalue of a symmetric matrix, by cyclic
/// Jacobi rotations. Sign fixed so the largest-magnitude entry is positive,
/// which keeps results reproducible across call sites.
inline VecD min_eigvec_sym(std::vector<VecD> M) {
    const int n = static_cast<int>(M.size());
    std::vector<VecD> V(n, VecD(n, 0.0));
    for (int i = 0; i < n; ++i) V[i][i] = 1.0;

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(M[i][j]));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::abs(M[p][q]);
        if (off <= 1e-15 * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(M[p][q]) <= 1e-18 * scale) continue;
                const double theta = (M[q][q] - M[p][p]) / (2.0 * M[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double mip = M[i][p], miq = M[i][q];
                    M[i][p] = c * mip - s * miq;
                    M[i][q] = s * mip + c * miq;
                }
                for (int i = 0; i < n; ++i) {
                    const double mpi = M[p][i], mqi = M[q][i];
                    M[p][i] = c * mpi - s * mqi;
                    M[q][i] = s * mpi + c * mqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = V[i][p], viq = V[i][q];
                    V[i][p] = c * vip - s * viq;
                    V[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    int imin = 0;
    for (int i = 1; i < n; ++i)
        if (M[i][i] < M[imin][imin]) imin = i;
    VecD out(n);
    int ibig = 0;
    for (int i = 0; i < n; ++i) {
        out[i] = V[i][imin];
        if (std::abs(out[i]) > std::abs(out[ibig])) ibig = i;
    }
    if (out[ibig] < 0.0)
        for (double& v : out) v = -v;
    return out;
}

} // namespace pnindex::detail
