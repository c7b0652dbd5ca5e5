#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kernels.hpp"
#include "util.hpp"

using namespace nle;

TEST_CASE("pLaplacian point values") {
    auto k = KernelParams::p_laplacian(1, 0.5, 2.0);
    // F(1, x=1) = (1/2) |1|^2 / 1^2
    CHECK(eval_F(k, 1.0, {1.0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eval_dF_dt(k, 1.0, {1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    // radial form agrees with the vector form
    CHECK(eval_F_r(k, 0.7, 2.0) ==
          doctest::Approx(eval_F(k, 0.7, {2.0})).epsilon(1e-15));
    // 2D: only |x| matters
    auto k2 = KernelParams::p_laplacian(2, 0.5, 2.0);
    double a = eval_F(k2, 1.0, {3.0, 4.0});
    double b = eval_F_r(k2, 1.0, 5.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-15));
}

TEST_CASE("pLaplacian structural constants") {
    auto k = KernelParams::p_laplacian(1, 0.5, 2.0);  // n + sp = 2
    CHECK(k.c_star == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k.c_upper == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k.c1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(k.c2 == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(k.c3 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("meanCurvature structural constants") {
    auto k = KernelParams::mean_curvature(1, 0.5);
    double m = 1.5;
    double ginf = 0.5 * std::sqrt(M_PI) * std::tgamma(0.5 * m) /
                  std::tgamma(0.5 * (m + 1.0));
    CHECK(k.p == 1.0);
    CHECK(k.c_upper == doctest::Approx(ginf).epsilon(1e-12));
    CHECK(k.c3 == doctest::Approx(ginf).epsilon(1e-12));
    CHECK(k.c1 == doctest::Approx(m + 1.0).epsilon(1e-12));
    CHECK(k.c2 == doctest::Approx((m + 1.0) * (m + 3.0)).epsilon(1e-12));
    // c_* is the minimum of g on [0,1]; g decreases, so g(1) = 2^{-(m+1)/2}
    CHECK(k.c_star == doctest::Approx(std::pow(2.0, -0.5 * (m + 1.0))).epsilon(1e-6));
}

TEST_CASE("meanCurvature helpers vs independent quadrature") {
    auto k = KernelParams::mean_curvature(1, 0.5);
    double m = k.n + k.s;
    CHECK(eval_helpers(k, 0.0, Helper::g) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_helpers(k, 0.0, Helper::G) == doctest::Approx(0.0).epsilon(1e-14));
    for (double tau : {0.3, 1.0, 2.5, 10.0}) {
        double ref = adaptive_simpson(
            [&](double r) { return std::pow(1.0 + r * r, -0.5 * (m + 1.0)); },
            0.0, tau, 1e-13);
        CHECK(eval_helpers(k, tau, Helper::G) == doctest::Approx(ref).epsilon(1e-10));
        double refc = adaptive_simpson(
            [&](double t) { return eval_helpers(k, t, Helper::G); }, 0.0, tau, 1e-13);
        CHECK(eval_helpers(k, tau, Helper::Gcal) ==
              doctest::Approx(refc).epsilon(1e-9));
    }
    // lower bound Gcal(tau) >= c_* (|tau| - 1)
    for (double tau = 0.0; tau <= 20.0; tau += 0.25)
        CHECK(eval_helpers(k, tau, Helper::Gcal) >= k.c_star * (tau - 1.0) - 1e-12);
}

TEST_CASE("assumption audit passes for both built-ins") {
    for (auto k : {KernelParams::p_laplacian(1, 0.3, 1.5),
                   KernelParams::p_laplacian(2, 0.75, 2.0),
                   KernelParams::mean_curvature(1, 0.5),
                   KernelParams::mean_curvature(2, 0.25)}) {
        auto rep = audit_assumptions(k, 10000, 42);
        CHECK(rep.items.size() == 11);
        CHECK(rep.all_pass());
        for (const auto& it : rep.items) {
            INFO(it.id, " margin ", it.margin);
            CHECK(it.pass);
        }
    }
}

TEST_CASE("audit is deterministic in the seed") {
    auto k = KernelParams::p_laplacian(1, 0.5, 2.0);
    auto a = audit_assumptions(k, 2000, 7);
    auto b = audit_assumptions(k, 2000, 7);
    CHECK(a.text() == b.text());
    CHECK(a.key_values() == b.key_values());
}

TEST_CASE("custom kernel with understated c1 fails (2.7)") {
    // F = |t| / |x|^{n+s}: correct c1 would be n+s, claim 0.01 instead
    double ns = 1.5;
    auto F = [ns](double t, double r) { return std::fabs(t) * std::pow(r, -ns); };
    auto dF = [ns](double t, double r) {
        return (t > 0 ? 1.0 : t < 0 ? -1.0 : 0.0) * std::pow(r, -ns);
    };
    auto k = KernelParams::custom(1, 0.5, 1.0, F, dF,
                                  /*c_star*/ 1.0, /*c_upper*/ 1.0,
                                  /*c1*/ 0.01, /*c2*/ ns * (ns + 1.0), /*c3*/ 1.0);
    auto rep = audit_assumptions(k, 4000, 11);
    bool found = false;
    for (const auto& it : rep.items)
        if (it.id == "2.7") {
            found = true;
            CHECK_FALSE(it.pass);
            CHECK(it.margin < 0.0);
        }
    CHECK(found);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(KernelParams::p_laplacian(3, 0.5, 2.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(KernelParams::p_laplacian(1, 0.0, 2.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(KernelParams::p_laplacian(1, 1.0, 2.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(KernelParams::p_laplacian(1, 0.5, 0.5).validate(),
                    std::invalid_argument);
    CHECK_NOTHROW(KernelParams::mean_curvature(2, 0.9).validate());
}
