#include "doctest.h"

#include <array>
#include <cmath>

#include "pnindex/convexity.hpp"

using namespace pnindex;

TEST_CASE("random midpoint probing certifies true norms") {
    CHECK(midpoint_test(Norm::lp(2.0), 2000).certified);
    CHECK(midpoint_test(Norm::lp(4.0), 2000).certified);
    CHECK(midpoint_test(Norm::beta_quartic(3.0), 2000).certified);
    CHECK(midpoint_test(Norm::asym_a(0.3), 2000).certified);
    CHECK(midpoint_test(Norm::interp_sym(3, 0.4), 2000).certified);
    CHECK_THROWS_AS(midpoint_test(Norm::lp(2.0), 500), std::invalid_argument);
}

TEST_CASE("midpoint probing refutes the failing formulas") {
    for (double beta : {5.0, -1.0}) {
        const ConvexityReport rep = midpoint_test(Norm::beta_quartic(beta), 2000);
        REQUIRE_FALSE(rep.certified);
        REQUIRE(rep.witness.has_value());
        const MidpointWitness& w = *rep.witness;
        // re-evaluate the violated inequality from scratch
        const Norm n = Norm::beta_quartic(beta);
        const Vec2 mid = w.lambda * w.u + (1.0 - w.lambda) * w.v;
        CHECK(n.eval(mid) == doctest::Approx(w.lhs).epsilon(1e-12));
        CHECK(w.lambda * n.eval(w.u) + (1.0 - w.lambda) * n.eval(w.v) ==
              doctest::Approx(w.rhs).epsilon(1e-12));
        CHECK(w.margin() > 1e-10);
    }

    const ConvexityReport eps = midpoint_test(Norm::eps_geom_mean(0.5, 0.01), 2000);
    CHECK_FALSE(eps.certified);
    CHECK(eps.witness.has_value());
}

TEST_CASE("midpoint probing is reproducible per seed") {
    const ConvexityReport a = midpoint_test(Norm::beta_quartic(5.0), 2000, 3);
    const ConvexityReport b = midpoint_test(Norm::beta_quartic(5.0), 2000, 3);
    REQUIRE((a.witness.has_value() && b.witness.has_value()));
    CHECK(a.witness->u.x == b.witness->u.x);
    CHECK(a.witness->lhs == b.witness->lhs);
    CHECK(a.grid == b.grid);
}

TEST_CASE("second derivative grid certifies smooth norms") {
    const std::array<Norm, 4> good = {Norm::lp(4.0), Norm::geom_mean(2.0, 4.0, 0.5),
                                      Norm::asym_a(0.3), Norm::interp_sym(3, 0.4)};
    for (const Norm& n : good) {
        const ConvexityReport rep = hessian_grid(n, 256);
        CHECK(rep.certified);
        CHECK(rep.min_hessian_eig > -1e-7);
    }

    const ConvexityReport bad = hessian_grid(Norm::beta_quartic(5.0), 256);
    CHECK_FALSE(bad.certified);
    CHECK(bad.min_hessian_eig < -1e-4);

    CHECK_THROWS_AS(hessian_grid(Norm::l1(), 256), std::invalid_argument);
    CHECK_THROWS_AS(hessian_grid(Norm::linf(), 256), std::invalid_argument);
    CHECK_THROWS_AS(hessian_grid(Norm::lp(4.0), 32), std::invalid_argument);
}

TEST_CASE("log-derivative profiles match finite differences") {
    const std::array<double, 5> ts = {0.0, 0.2, 0.5, 0.8, 1.0};
    const std::vector<LogConvexitySample> geo =
        log_convexity_profile(Norm::geom_mean(2.0, 4.0, 0.4), ts);
    REQUIRE(geo.size() == ts.size());
    for (const LogConvexitySample& s : geo) {
        CHECK(s.phi2 == doctest::Approx(s.fd_phi2).epsilon(1e-6));
        CHECK(s.log_convex_term == doctest::Approx(s.phi2 + s.phi1 * s.phi1).epsilon(1e-12));
    }

    const std::array<double, 4> ta = {0.0, 0.5, 1.5, 3.0};
    const std::vector<LogConvexitySample> asym = log_convexity_profile(Norm::asym_a(0.3), ta);
    for (const LogConvexitySample& s : asym) {
        CHECK(s.phi2 == doctest::Approx(s.fd_phi2).epsilon(1e-6));
        CHECK(s.log_convex_term >= -1e-9);
    }
    // the asym profile touches zero exactly at t = 0
    CHECK(asym[0].log_convex_term == doctest::Approx(0.0).epsilon(1e-10));

    CHECK_THROWS_AS(log_convexity_profile(Norm::lp(4.0), ta), std::invalid_argument);
    const std::array<double, 1> out = {1.5};
    CHECK_THROWS_AS(log_convexity_profile(Norm::geom_mean(2.0, 4.0, 0.4), out),
                    std::invalid_argument);
}

TEST_CASE("quartic formula classification over the parameter line") {
    struct Row {
        double beta;
        bool is_norm;
        const char* route;
    };
    const Row rows[] = {
        {0.0, true, "decomposition"},  {0.5, true, "decomposition"},
        {1.0, true, "decomposition"},  {2.0, true, "substitution"},
        {3.0, true, "substitution"},   {-1.0, false, "negative-witness"},
        {-0.5, false, "negative-witness"}, {3.5, false, "above-three-witness"},
    };
    for (const Row& r : rows) {
        const BetaClassification c = beta_classify(r.beta);
        CHECK(c.beta == r.beta);
        CHECK(c.is_norm == r.is_norm);
        CHECK(c.route == r.route);
        if (r.is_norm) {
            CHECK(c.identity_error <= 1e-12);
            CHECK_FALSE(c.witness.has_value());
        } else {
            REQUIRE(c.witness.has_value());
            CHECK(c.witness->margin() > 1e-10);
        }
    }
}

TEST_CASE("violation margins agree with the closed forms") {
    // diagonal midpoint of (1,0) and (0,1): margin (1+beta)^{1/4}/2^{1/2} - 1 ... frozen
    const double m1 = beta_classify(-1.0).witness->margin();
    CHECK(m1 == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
    const double m05 = beta_classify(-0.5).witness->margin();
    CHECK(m05 == doctest::Approx(0.05328077569585321).epsilon(1e-9));
    const double m35 = beta_classify(3.5).witness->margin();
    CHECK(m35 == doctest::Approx(0.0023283044665083352).epsilon(1e-9));
    const double m5 = beta_classify(5.0).witness->margin();
    CHECK(m5 == doctest::Approx(0.021991162258356844).epsilon(1e-9));
}

TEST_CASE("shrinking the weight breaks the interpolated formula") {
    const std::array<double, 3> grid = {1.0, 0.1, 0.01};
    const EpsCounterexample ce = eps_counterexample(0.5, grid);
    REQUIRE(ce.found);
    CHECK(ce.eps == 0.01);
    CHECK(ce.n10 == doctest::Approx(0.316227766016838).epsilon(1e-12));
    CHECK(ce.n01 == doctest::Approx(0.316227766016838).epsilon(1e-12));
    CHECK(ce.n11 == doctest::Approx(1.00498756211209).epsilon(1e-12));
    CHECK(ce.n11 > ce.n10 + ce.n01); // the two-point triangle inequality fails

    const std::array<double, 1> mild = {1.0};
    CHECK_FALSE(eps_counterexample(0.5, mild).found);

    CHECK_THROWS_AS(eps_counterexample(0.0, grid), std::invalid_argument);
    CHECK_THROWS_AS(eps_counterexample(1.0, grid), std::invalid_argument);
    const std::array<double, 2> increasing = {0.01, 0.1};
    CHECK_THROWS_AS(eps_counterexample(0.5, increasing), std::invalid_argument);
    const std::array<double, 1> negative = {-0.5};
    CHECK_THROWS_AS(eps_counterexample(0.5, negative), std::invalid_argument);
}
