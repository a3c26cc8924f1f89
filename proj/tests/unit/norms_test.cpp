#include "doctest.h"

#include <cmath>
#include <vector>

#include "pnindex/norms.hpp"
#include "pnindex/rng.hpp"

using namespace pnindex;

namespace {

const double kTau = 6.283185307179586;

std::vector<Norm> smooth_zoo() {
    return {Norm::lp(2.0),
            Norm::lp(4.0),
            Norm::lp(3.5),
            Norm::beta_quartic(2.0),
            Norm::beta_quartic(0.0),
            Norm::asym_a(0.3),
            Norm::asym_a(0.7),
            Norm::interp_sym(3, 0.4),
            Norm::interp_sym(4, 1.0),
            Norm::interp_sym(3, 0.0),
            Norm::geom_mean(2.0, 4.0, 0.5),
            Norm::eps_geom_mean(0.5, 0.01)};
}

Vec2 fd_gradient(const Norm& n, Vec2 v) {
    const double h = 1e-6;
    return {(n.eval({v.x + h, v.y}) - n.eval({v.x - h, v.y})) / (2 * h),
            (n.eval({v.x, v.y + h}) - n.eval({v.x, v.y - h})) / (2 * h)};
}

} // namespace

TEST_CASE("norm values at fixed points") {
    CHECK(Norm::lp(2.0).eval({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(Norm::lp(4.0).eval({1.0, 1.0}) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
    CHECK(Norm::l1().eval({3.0, -4.0}) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(Norm::linf().eval({3.0, -4.0}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(Norm::beta_quartic(1.0).eval({1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // the asymmetric family is normalized on both axes by construction
    CHECK(Norm::asym_a(0.5).eval({1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(Norm::asym_a(0.5).eval({0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(Norm::asym_a(0.3).eval({0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(Norm::interp_sym(3, 1.0).eval({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(Norm::interp_sym(3, 0.0).eval({1.0, 1.0}) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
    CHECK(Norm::geom_mean(2.0, 4.0, 1.0).eval({1.0, 1.0}) ==
          doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
    CHECK(Norm::eps_geom_mean(0.5, 1.0).eval({1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (const Norm& n : smooth_zoo()) CHECK(n.eval({0.0, 0.0}) == 0.0);
}

TEST_CASE("homogeneity and triangle inequality on samples") {
    Rng rng(42);
    for (const Norm& n : smooth_zoo()) {
        for (int i = 0; i < 200; ++i) {
            const Vec2 u{rng.normal(), rng.normal()};
            const Vec2 v{rng.normal(), rng.normal()};
            const double lam = rng.uniform(-3.0, 3.0);
            const double nu = n.eval(u);
            CHECK(n.eval(u * lam) == doctest::Approx(std::abs(lam) * nu).epsilon(1e-12));
            if (n.guaranteed_norm())
                CHECK(n.eval(u + v) <= nu + n.eval(v) + 1e-12 * (nu + n.eval(v)));
        }
    }
    CHECK(Norm::eps_geom_mean(0.5, 0.01).guaranteed_norm() == false);
    CHECK(Norm::beta_quartic(5.0).guaranteed_norm() == false);
    CHECK(Norm::beta_quartic(-1.0).guaranteed_norm() == false);
    CHECK(Norm::beta_quartic(3.0).guaranteed_norm() == true);
}

TEST_CASE("gradients match finite differences and Euler identity") {
    Rng rng(7);
    for (const Norm& n : smooth_zoo()) {
        for (int i = 0; i < 64; ++i) {
            const double t = rng.uniform(0.0, kTau);
            const double r = rng.uniform(0.5, 2.0);
            const Vec2 v{r * std::cos(t), r * std::sin(t)};
            const Vec2 g = n.gradient(v);
            const Vec2 fd = fd_gradient(n, v);
            CHECK(g.x == doctest::Approx(fd.x).epsilon(5e-6));
            CHECK(g.y == doctest::Approx(fd.y).epsilon(5e-6));
            // 1-homogeneous: grad(v).v = ||v||, grad(3v) = grad(v)
            CHECK(g.dot(v) == doctest::Approx(n.eval(v)).epsilon(1e-12));
            const Vec2 g3 = n.gradient(v * 3.0);
            CHECK(g3.x == doctest::Approx(g.x).epsilon(1e-11));
            CHECK(g3.y == doctest::Approx(g.y).epsilon(1e-11));
        }
    }
}

TEST_CASE("polyhedral norming sets and kinks") {
    const Norm l1 = Norm::l1();
    const Norm li = Norm::linf();

    auto f1 = l1.norming_set({2.0, 3.0});
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].x == 1.0);
    CHECK(f1[0].y == 1.0);
    auto f2 = l1.norming_set({2.0, -3.0});
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].y == -1.0);

    auto axis = l1.norming_set({1.0, 0.0});
    REQUIRE(axis.size() == 2);
    CHECK(axis[0].x == 1.0);
    CHECK(axis[0].y + axis[1].y == 0.0); // the two face extremes (1, +/-1)

    auto edge = li.norming_set({1.0, 0.25});
    REQUIRE(edge.size() == 1);
    CHECK(edge[0].x == 1.0);
    CHECK(edge[0].y == 0.0);
    auto corner = li.norming_set({1.0, 1.0});
    REQUIRE(corner.size() == 2);
    CHECK(corner[0].dot({1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(corner[1].dot({1.0, 1.0}) == doctest::Approx(1.0));

    CHECK_THROWS_AS((void)l1.gradient({1.0, 0.0}), NonSmoothPoint);
    CHECK_THROWS_AS((void)li.gradient({1.0, 1.0}), NonSmoothPoint);
    CHECK_NOTHROW((void)li.gradient({1.0, 0.25}));

    CHECK(sphere_kinks(l1).size() == 4);
    CHECK(sphere_kinks(li).size() == 4);
    CHECK(sphere_kinks(Norm::lp(4.0)).empty());
    for (Vec2 k : sphere_kinks(li)) CHECK(li.eval(k) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sphere points sit on the unit sphere") {
    for (const Norm& n : smooth_zoo()) {
        for (int i = 0; i < 97; ++i) {
            const Vec2 s = n.sphere_point(kTau * i / 97);
            CHECK(n.eval(s) == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
    for (int i = 0; i < 97; ++i) {
        CHECK(Norm::l1().eval(Norm::l1().sphere_point(kTau * i / 97)) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(Norm::linf().eval(Norm::linf().sphere_point(kTau * i / 97)) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("dual norm oracle") {
    // dual of lp is lq with 1/p + 1/q = 1
    CHECK(Norm::lp(2.0).dual_eval({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(Norm::lp(4.0).dual_eval({1.0, 1.0}) == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-9));
    const double q = 4.0 / 3.0;
    CHECK(Norm::lp(4.0).dual_eval({0.7, -1.3}) ==
          doctest::Approx(std::pow(std::pow(0.7, q) + std::pow(1.3, q), 1.0 / q)).epsilon(1e-9));
    CHECK(Norm::l1().dual_eval({0.3, -2.0}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(Norm::linf().dual_eval({0.3, -2.0}) == doctest::Approx(2.3).epsilon(1e-12));
}

TEST_CASE("structural trait classification") {
    const auto t1 = Norm::lp(4.0).classify(200);
    CHECK(t1.absolute);
    CHECK(t1.symmetric);
    CHECK(t1.normalized);

    const auto t2 = Norm::asym_a(0.3).classify(200);
    CHECK(t2.absolute);
    CHECK_FALSE(t2.symmetric);
    CHECK(t2.normalized);

    const auto t3 = Norm::beta_quartic(2.0).classify(200);
    CHECK(t3.absolute);
    CHECK(t3.symmetric);
    CHECK(t3.normalized);

    const auto t4 = Norm::eps_geom_mean(0.5, 0.01).classify(200);
    CHECK(t4.absolute);
    CHECK(t4.symmetric);
    CHECK_FALSE(t4.normalized);

    const auto t5 = Norm::interp_sym(3, 0.4).classify(200);
    CHECK(t5.symmetric);
    CHECK(t5.normalized);
}

TEST_CASE("display names") {
    CHECK(Norm::lp(4.0).name() == "lp(4)");
    CHECK(Norm::lp(4.0, 3).name() == "lp(4,d=3)");
    CHECK(Norm::l1().name() == "l1");
    CHECK(Norm::linf().name() == "linf");
    CHECK(Norm::beta_quartic(2.0).name() == "beta-quartic(2)");
    CHECK(Norm::asym_a(0.3).name() == "asym-a(0.3)");
    CHECK(Norm::interp_sym(3, 0.4).name() == "interp-sym(3,0.4)");
    CHECK(Norm::geom_mean(2.0, 4.0, 0.5).name() == "geom-mean(2,4,0.5)");
    CHECK(Norm::eps_geom_mean(0.5, 0.01).name() == "eps-geom-mean(0.5,0.01)");
}

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(Norm::lp(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Norm::lp(0.5), std::invalid_argument);
    CHECK_THROWS_AS(Norm::lp(4.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Norm::asym_a(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Norm::asym_a(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Norm::interp_sym(2, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(Norm::interp_sym(3, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(Norm::interp_sym(3, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(Norm::geom_mean(1.5, 4.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Norm::geom_mean(2.0, 4.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(Norm::eps_geom_mean(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Norm::eps_geom_mean(0.0, 0.01), std::invalid_argument);
    CHECK_NOTHROW(Norm::interp_sym(3, 0.0));
    CHECK_NOTHROW(Norm::interp_sym(3, 1.0));
    CHECK_NOTHROW(Norm::beta_quartic(-2.0)); // classification needs these
}

TEST_CASE("lp in higher dimension") {
    const Norm n = Norm::lp(4.0, 3);
    CHECK(n.dim() == 3);
    CHECK_FALSE(n.planar());
    const VecD v = {1.0, -2.0, 0.5};
    CHECK(n.eval(v) == doctest::Approx(std::pow(1.0 + 16.0 + 0.0625, 0.25)).epsilon(1e-14));

    const VecD g = n.gradient(v);
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
        VecD a = v, b = v;
        a[i] += h;
        b[i] -= h;
        CHECK(g[i] == doctest::Approx((n.eval(a) - n.eval(b)) / (2 * h)).epsilon(5e-6));
    }
    // norming functional of v/||v|| pairs to 1
    double pair = 0.0;
    const double nv = n.eval(v);
    for (int i = 0; i < 3; ++i) pair += g[i] * v[i] / nv;
    CHECK(pair == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("dual pair pins unit pairing") {
    for (const Norm& n : {Norm::lp(4.0), Norm::beta_quartic(2.0), Norm::asym_a(0.3)}) {
        for (int i = 0; i < 32; ++i) {
            const DualPair dp = dual_pair_at(n, kTau * i / 32 + 0.01);
            CHECK(dp.pairing == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(n.eval(dp.point) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
