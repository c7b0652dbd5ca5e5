#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "config.hpp"
#include "experiments.hpp"
#include "util.hpp"

using namespace nle;

namespace {
const std::array<double, 2> e1 = {1.0, 0.0};
}

TEST_CASE("tail estimate exponents (frozen)") {
    auto lo1 = tail_estimate_check(0.25, 2.0, 1, {8, 16, 32, 64});
    CHECK(lo1.predicted_exponent == doctest::Approx(0.5));
    CHECK(lo1.fitted_exponent == doctest::Approx(0.47571545512602353).epsilon(1e-9));
    CHECK(lo1.pass);
    auto hi1 = tail_estimate_check(0.75, 2.0, 1, {8, 16, 32, 64});
    CHECK(hi1.predicted_exponent == doctest::Approx(0.0));
    CHECK(hi1.fitted_exponent == doctest::Approx(0.056715667979185758).epsilon(1e-9));
    CHECK(hi1.pass);
    auto lo2 = tail_estimate_check(0.375, 2.0, 2, {8, 16, 32, 64});
    CHECK(lo2.fitted_exponent == doctest::Approx(1.2744973700845614).epsilon(1e-9));
    CHECK(lo2.pass);
    auto hi2 = tail_estimate_check(0.9, 2.0, 2, {8, 16, 32, 64});
    CHECK(hi2.fitted_exponent == doctest::Approx(1.0143382720769192).epsilon(1e-9));
    CHECK(hi2.pass);
}

TEST_CASE("sp = 1 prefers the log-corrected model") {
    auto n1 = tail_estimate_check(0.5, 2.0, 1, {8, 16, 32, 64});
    CHECK(n1.log_regime);
    CHECK(n1.resid_reduction == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(n1.pass);
    auto n2 = tail_estimate_check(0.5, 2.0, 2, {8, 16, 32, 64});
    CHECK(n2.log_regime);
    CHECK(n2.resid_reduction == doctest::Approx(0.84520243664719252).epsilon(1e-6));
    CHECK(n2.resid_reduction >= 0.20);
    CHECK(n2.pass);
}

TEST_CASE("tail estimate needs four radii") {
    CHECK_THROWS_WITH_AS(tail_estimate_check(0.25, 2.0, 1, {8, 16, 32}),
                         "fit requires >= 4 radii", std::invalid_argument);
}

TEST_CASE("1D scaling sweep (frozen)") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    ScalingOptions opts;
    opts.quad.tail = TailPolicy::quadrature_1d;
    auto rep = scaling_experiment(k, Potential::double_well(), {4, 8, 16, 32}, opts);
    REQUIRE(rep.measured.size() == 4);
    CHECK(rep.measured[0] == doctest::Approx(19.756948823640172).epsilon(1e-9));
    CHECK(rep.measured[1] == doctest::Approx(28.899757475202989).epsilon(1e-9));
    CHECK(rep.measured[2] == doctest::Approx(42.749674996571116).epsilon(1e-9));
    CHECK(rep.measured[3] == doctest::Approx(64.090019197664077).epsilon(1e-9));
    CHECK(rep.fitted_exponent == doctest::Approx(0.57452115811340143).epsilon(1e-6));
    CHECK(rep.predicted_exponent == doctest::Approx(0.5));
    CHECK(rep.pass);
    CHECK_FALSE(rep.incomplete);
    // report renders
    CHECK(rep.csv().find("R,") == 0);
    CHECK(rep.verdict().find("PASS") != std::string::npos);
}

TEST_CASE("scaling sweep input validation") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    CHECK_THROWS_AS(scaling_experiment(k, Potential::double_well(), {4, 8}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scaling_experiment(k, Potential::double_well(), {8, 4, 16}, {}),
                    std::invalid_argument);
}

TEST_CASE("psi upper-bound curve obeys the sub-linear regime") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    ScalingOptions opts;
    opts.rule = DataRule::psi_upper;
    opts.quad.tail = TailPolicy::quadrature_1d;
    auto rep = scaling_experiment(k, Potential::double_well(), {4, 8, 16, 32}, opts);
    for (size_t i = 1; i < rep.measured.size(); ++i)
        CHECK(rep.measured[i] > rep.measured[i - 1]);  // growing, but
    CHECK(rep.fitted_exponent < 1.0);                  // sub-linear
}

TEST_CASE("standard bump shape") {
    auto b = standard_bump();
    CHECK(b(0.0) == doctest::Approx(1.0));
    CHECK(b(0.5) == doctest::Approx(1.0));
    CHECK(b(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b(0.75) > 0.0);
    CHECK(b(0.75) < 1.0);
    // monotone down across the transition ring
    for (double t = 0.5; t < 0.99; t += 0.01) CHECK(b(t + 0.01) <= b(t) + 1e-12);
    CHECK(bump_c1_norm(b, 1.0) == doctest::Approx(5.0).epsilon(1e-6));
    // scaled norm: sup stays 1, derivative shrinks by the scale
    CHECK(bump_c1_norm(b, 8.0) == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("perturbation experiment (frozen)") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    QuadratureConfig q;
    q.tail = TailPolicy::analytic_constant;
    auto rep = perturbation_experiment(default_perturb_base, standard_bump(), k,
                                       Potential::double_well(), {8, 16, 32, 64},
                                       {}, q, true);
    REQUIRE(rep.records.size() == 4);
    CHECK(rep.records[0].delta ==
          doctest::Approx(0.081853019227509094).epsilon(1e-6));
    CHECK(rep.records[3].delta ==
          doctest::Approx(0.0039947361200916021).epsilon(1e-6));
    for (const auto& r : rep.records) CHECK(r.delta >= -1e-10 * r.energy_base);
    CHECK(rep.slope == doctest::Approx(-2.0030601025814625).epsilon(1e-4));
    CHECK(rep.pass);
    CHECK_FALSE(rep.incomplete);
    CHECK(rep.verdict().find("PASS") != std::string::npos);
}

TEST_CASE("zero bump perturbs nothing") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    QuadratureConfig q;
    q.tail = TailPolicy::analytic_constant;
    auto rep = perturbation_experiment(default_perturb_base,
                                       [](double) { return 0.0; }, k,
                                       Potential::double_well(), {8, 16}, {}, q,
                                       /*minimize_base=*/false);
    for (const auto& r : rep.records) {
        CHECK(r.energy_plus == r.energy_base);
        CHECK(r.energy_minus == r.energy_base);
        CHECK(r.delta == 0.0);
    }
}

TEST_CASE("perturbation precondition rejects small R") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    CHECK_THROWS_AS(perturbation_experiment(default_perturb_base, standard_bump(),
                                            k, Potential::double_well(), {2, 4},
                                            {}, {}, false),
                    std::invalid_argument);
}

TEST_CASE("symmetry diagnostic recovers an exact ramp direction") {
    Domain dom{2, 4.0, 8.0, 0.125};
    double th = 30.0 * M_PI / 180.0;
    std::array<double, 2> om = {std::cos(th), std::sin(th)};
    auto u = sample_profile(dom, Profile::make_ramp(om), FarField::ramp(om));
    auto sym = symmetry_diagnostic(u);
    CHECK(std::fabs(sym.theta - th) < 0.01 * M_PI / 180.0);
    CHECK(sym.residual < 1e-3);
    CHECK(sym.t_centers.size() == sym.u0.size());
    CHECK(sym.u0.size() > 10);
}

TEST_CASE("symmetry diagnostic is invariant under quarter turns") {
    Domain dom{2, 4.0, 8.0, 0.25};
    double th = 20.0 * M_PI / 180.0;
    std::array<double, 2> om = {std::cos(th), std::sin(th)};
    auto u = sample_profile(dom, Profile::make_layer_tanh(om, 1.0),
                            FarField::sign_layer(om));
    auto rot = u;  // (i, j) -> (j, N-1-i) rotates the square lattice by 90 deg
    int N = dom.cells_per_axis();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            rot.values[size_t(j) * N + (N - 1 - i)] =
                u.values[size_t(i) * N + j];
    auto a = symmetry_diagnostic(u);
    auto b = symmetry_diagnostic(rot);
    CHECK(a.residual == doctest::Approx(b.residual).epsilon(1e-10));
}

TEST_CASE("radial state scores a large residual") {
    Domain dom{2, 4.0, 8.0, 0.125};
    auto u = sample_profile(dom, Profile::make_custom([](const std::vector<double>& x) {
                                return std::exp(-(x[0] * x[0] + x[1] * x[1]));
                            }),
                            FarField::constant(0.0));
    auto sym = symmetry_diagnostic(u);
    CHECK(sym.residual > 0.05);
}

TEST_CASE("appendix and convexity suites pass") {
    auto app = appendix_inequality_suite(50, 2024);
    CHECK(app.failures == 0);
    CHECK(app.pass);
    CHECK(app.worst_margin >= 0.0);
    CHECK(app.text().find("PASS") != std::string::npos);
    for (auto k : {KernelParams::p_laplacian(1, 0.5, 2.0),
                   KernelParams::mean_curvature(1, 0.5)}) {
        auto cvx = convexity_suite(k, 2000, 7);
        CHECK(cvx.failures == 0);
        CHECK(cvx.pass);
    }
}

TEST_CASE("config parser") {
    auto cfg = ConfigFile::parse(
        "# comment\n"
        "[kernel]\n"
        "family = pLaplacian\n"
        "s = 0.5\n"
        "\n"
        "[experiment]\n"
        "R_list = 4, 8, 16\n"
        "samples = 100\n");
    CHECK(cfg.get("kernel", "family", "?") == "pLaplacian");
    CHECK(cfg.get_num("kernel", "s", 0.0) == doctest::Approx(0.5));
    CHECK(cfg.get_int("experiment", "samples", 0) == 100);
    CHECK(cfg.get("kernel", "missing", "fallback") == "fallback");
    CHECK_FALSE(cfg.has("kernel", "missing"));
    auto lst = cfg.get_list("experiment", "R_list");
    REQUIRE(lst.size() == 3);
    CHECK(lst[1] == doctest::Approx(8.0));
    // diagnostics carry the line number
    CHECK_THROWS_WITH_AS(ConfigFile::parse("[a]\nkey value\n"),
                         doctest::Contains("line 2"), std::invalid_argument);
    // keys before the first header land in the unnamed block
    CHECK(ConfigFile::parse("key = 1\n").get("", "key", "?") == "1");
    CHECK_THROWS_AS(cfg.get_num("kernel", "family", 0.0), std::invalid_argument);
}
