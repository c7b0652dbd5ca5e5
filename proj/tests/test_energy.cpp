#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "energy.hpp"
#include "fast_energy.hpp"
#include "util.hpp"

using namespace nle;

namespace {
const std::array<double, 2> e1 = {1.0, 0.0};

GridFunction random_state(const Domain& d, uint64_t seed) {
    Rng rng(seed);
    auto u = sample_profile(d, Profile::make_constant(0.0), FarField::constant(0.0));
    for (auto& v : u.values) v = rng.uniform(-1.0, 1.0);
    return u;
}
}  // namespace

TEST_CASE("frozen 1D breakdown (ramp on B_1, s=0.25, p=2, quadrature tail)") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    Domain dom{1, 1.0, 2.0, 1.0 / 16.0};
    auto u = sample_profile(dom, Profile::make_ramp(e1), FarField::ramp(e1));
    QuadratureConfig q;
    q.tail = TailPolicy::quadrature_1d;
    auto b = total_energy(u, k, Potential::double_well(), q);
    CHECK(b.interior_interior == doctest::Approx(1.5015625482971311).epsilon(1e-12));
    CHECK(b.interior_exterior == doctest::Approx(9.0485778637005456).epsilon(1e-12));
    CHECK(b.potential == doctest::Approx(0.26666688919067383).epsilon(1e-12));
    CHECK(b.total == doctest::Approx(10.816807301188351).epsilon(1e-12));
    CHECK(b.total ==
          doctest::Approx(b.interior_interior + b.interior_exterior + b.potential)
              .epsilon(1e-14));
}

TEST_CASE("frozen 2D breakdown (ramp at 30 deg, s=0.5, p=2, analytic tail)") {
    auto k = KernelParams::p_laplacian(2, 0.5, 2.0);
    Domain dom{2, 1.0, 2.0, 0.25};
    double th = 30.0 * M_PI / 180.0;
    std::array<double, 2> om = {std::cos(th), std::sin(th)};
    auto u = sample_profile(dom, Profile::make_ramp(om), FarField::ramp(om));
    auto b = total_energy(u, k, Potential::double_well(), {});
    CHECK(b.interior_interior == doctest::Approx(3.6548393434956226).epsilon(1e-12));
    CHECK(b.interior_exterior == doctest::Approx(110.30555104971126).epsilon(1e-12));
    CHECK(b.potential == doctest::Approx(0.50114059448242188).epsilon(1e-12));
    CHECK(b.total == doctest::Approx(114.4615309876893).epsilon(1e-12));
}

TEST_CASE("frozen meanCurvature value (1D tanh layer)") {
    auto k = KernelParams::mean_curvature(1, 0.5);
    Domain dom{1, 1.0, 2.0, 0.25};
    auto u = sample_profile(dom, Profile::make_layer_tanh(e1, 1.0),
                            FarField::sign_layer(e1));
    QuadratureConfig q;
    q.tail = TailPolicy::none;
    auto b = total_energy(u, k, Potential::double_well(), q);
    CHECK(b.total == doctest::Approx(2.8132913478879922).epsilon(1e-12));
}

TEST_CASE("interior_interior converges to the continuum Gagliardo integral") {
    // ramp on B_1, s=0.25, p=2: closed form (1/2) int int |x-y|^{1/2} = 16 sqrt2 / 15
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    double oracle = 16.0 * std::sqrt(2.0) / 15.0;
    QuadratureConfig q;
    q.tail = TailPolicy::none;
    double prev_err = 1e300;
    for (double div : {16.0, 32.0, 64.0}) {
        Domain dom{1, 1.0, 2.0, 1.0 / div};
        auto u = sample_profile(dom, Profile::make_ramp(e1), FarField::ramp(e1));
        auto b = total_energy(u, k, Potential::double_well(), q);
        double err = std::fabs(b.interior_interior - oracle) / oracle;
        CHECK(err < prev_err);  // monotone decrease in h
        prev_err = err;
    }
    CHECK(prev_err < 0.02);  // within 2% at h = R/64
}

TEST_CASE("FFT fast path agrees with the direct sum") {
    auto pot = Potential::double_well();
    QuadratureConfig q;
    for (int n : {1, 2}) {
        auto k = KernelParams::p_laplacian(n, 0.6, 2.0);
        Domain dom{n, 1.0, 2.0, n == 1 ? 0.0625 : 0.25};
        auto u = random_state(dom, 99 + n);
        u.farfield = FarField::constant(1.0);
        REQUIRE(FastEnergy::applicable(k, q));
        FastEnergy fe(u, k, pot, q);
        std::vector<double> v;
        for (size_t f : fe.interior()) v.push_back(u.values[f]);
        std::vector<double> g;
        double E = fe.eval(v, &g);
        auto direct = total_energy(u, k, pot, q);
        auto gd = gradient(u, k, pot, q);
        CHECK(E == doctest::Approx(direct.total).epsilon(1e-11));
        auto b = fe.breakdown(v);
        CHECK(b.interior_interior ==
              doctest::Approx(direct.interior_interior).epsilon(1e-10));
        CHECK(b.interior_exterior ==
              doctest::Approx(direct.interior_exterior).epsilon(1e-10));
        CHECK(b.potential == doctest::Approx(direct.potential).epsilon(1e-12));
        REQUIRE(g.size() == gd.size());
        for (size_t a = 0; a < g.size(); ++a)
            CHECK(g[a] == doctest::Approx(gd[a]).epsilon(1e-9));
    }
    // fast path refuses what it cannot represent
    CHECK_FALSE(FastEnergy::applicable(KernelParams::p_laplacian(1, 0.5, 1.5), q));
    QuadratureConfig qm;
    qm.self_pair = SelfPairPolicy::midpoint_correction;
    CHECK_FALSE(FastEnergy::applicable(KernelParams::p_laplacian(1, 0.5, 2.0), qm));
}

TEST_CASE("gradient matches central differences") {
    auto pot = Potential::double_well();
    QuadratureConfig q;
    q.tail = TailPolicy::analytic_constant;
    for (auto k : {KernelParams::p_laplacian(1, 0.5, 2.0),
                   KernelParams::p_laplacian(1, 0.4, 3.0),
                   KernelParams::mean_curvature(1, 0.5)}) {
        Domain dom{1, 1.0, 2.0, 0.0625};
        auto u = random_state(dom, 5);
        u.farfield = FarField::constant(1.0);
        auto inodes = interior_nodes(u);
        auto g = gradient(u, k, pot, q);
        REQUIRE(g.size() == inodes.size());
        Rng rng(17);
        double eps = 1e-6;
        for (int trial = 0; trial < 20; ++trial) {
            size_t a = size_t(rng.uniform(0.0, double(inodes.size())));
            a = std::min(a, inodes.size() - 1);
            auto up = u, um = u;
            up.values[inodes[a]] += eps;
            um.values[inodes[a]] -= eps;
            double fd = (total_energy(up, k, pot, q).total -
                         total_energy(um, k, pot, q).total) / (2.0 * eps);
            CHECK(g[a] == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("summation modes agree") {
    auto k = KernelParams::p_laplacian(1, 0.5, 2.0);
    Domain dom{1, 1.0, 2.0, 0.0625};
    auto u = random_state(dom, 31);
    u.farfield = FarField::constant(-1.0);
    QuadratureConfig qc, qf;
    qc.summation = Summation::compensated;
    qf.summation = Summation::fixed_order;
    double a = total_energy(u, k, Potential::double_well(), qc).total;
    double b = total_energy(u, k, Potential::double_well(), qf).total;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("tail policies are ordered: envelope dominates exact quadrature") {
    auto k = KernelParams::p_laplacian(1, 0.25, 2.0);
    Domain dom{1, 1.0, 2.0, 0.0625};
    auto u = sample_profile(dom, Profile::make_ramp(e1), FarField::ramp(e1));
    QuadratureConfig qa, qq, qn;
    qa.tail = TailPolicy::analytic_constant;
    qq.tail = TailPolicy::quadrature_1d;
    qn.tail = TailPolicy::none;
    double Ea = total_energy(u, k, Potential::double_well(), qa).total;
    double Eq = total_energy(u, k, Potential::double_well(), qq).total;
    double En = total_energy(u, k, Potential::double_well(), qn).total;
    CHECK(Ea >= Eq);
    CHECK(Eq >= En);
}

TEST_CASE("midpoint correction adds a nonnegative self term") {
    auto k = KernelParams::p_laplacian(1, 0.5, 2.0);
    Domain dom{1, 1.0, 2.0, 0.125};
    auto u = random_state(dom, 77);
    u.farfield = FarField::constant(0.0);
    QuadratureConfig qe, qm;
    qe.tail = qm.tail = TailPolicy::none;
    qe.self_pair = SelfPairPolicy::exclude;
    qm.self_pair = SelfPairPolicy::midpoint_correction;
    double Ee = total_energy(u, k, Potential::double_well(), qe).total;
    double Em = total_energy(u, k, Potential::double_well(), qm).total;
    CHECK(Em >= Ee - 1e-14);
}

TEST_CASE("seminorms are finite and scale with the state") {
    auto k = KernelParams::p_laplacian(1, 0.5, 2.0);
    Domain dom{1, 1.0, 2.0, 0.125};
    auto u = sample_profile(dom, Profile::make_ramp(e1), FarField::ramp(e1));
    double gs = gagliardo_seminorm(u, 1.0, k);
    double es = exterior_seminorm(u, k);
    CHECK(gs > 0.0);
    CHECK(std::isfinite(gs));
    CHECK(es >= 0.0);
    CHECK(std::isfinite(es));
    auto zero = sample_profile(dom, Profile::make_constant(0.0), FarField::constant(0.0));
    CHECK(gagliardo_seminorm(zero, 1.0, k) == doctest::Approx(0.0));
}
