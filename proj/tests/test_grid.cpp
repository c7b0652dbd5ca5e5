#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grid.hpp"
#include "util.hpp"

using namespace nle;

TEST_CASE("domain basics") {
    Domain d{1, 1.0, 2.0, 0.25};
    CHECK_NOTHROW(d.validate());
    CHECK(d.cells_per_axis() == 16);
    // cell centers are symmetric about the origin
    CHECK(d.coord(0) == doctest::Approx(-d.coord(d.cells_per_axis() - 1)));
    CHECK_THROWS_AS((Domain{3, 1.0, 2.0, 0.25}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((Domain{1, 1.0, 1.5, 0.25}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((Domain{1, 1.0, 2.0, -0.1}).validate(), std::invalid_argument);
}

TEST_CASE("profiles") {
    auto dist = Profile::make_dist_aux(3.0);
    CHECK(dist.eval({0.0}) == doctest::Approx(4.0));          // max{R+1-0, 1}
    CHECK(dist.eval({10.0}) == doctest::Approx(1.0));         // clamped at 1
    auto psi = Profile::make_psi_aux(3.0);
    CHECK(psi.eval({0.0}) == doctest::Approx(-1.0));          // inside the ball
    CHECK(psi.eval({10.0}) == doctest::Approx(1.0));          // far outside
    auto ramp = Profile::make_ramp({1.0, 0.0});
    CHECK(ramp.eval({0.3}) == doctest::Approx(0.3));
    CHECK(ramp.eval({5.0}) == doctest::Approx(1.0));          // clipped
    CHECK(ramp.eval({-5.0}) == doctest::Approx(-1.0));
}

TEST_CASE("sample_profile matches pointwise evaluation") {
    Domain d{2, 1.0, 2.0, 0.25};
    std::array<double, 2> om = {0.6, 0.8};
    auto u = sample_profile(d, Profile::make_ramp(om), FarField::ramp(om));
    CHECK(u.values.size() == size_t(d.cells_per_axis()) * d.cells_per_axis());
    for (size_t f = 0; f < u.size(); ++f) {
        auto x = u.node(f);
        double t = om[0] * x[0] + om[1] * x[1];
        double want = std::fmin(1.0, std::fmax(-1.0, t));
        CHECK(u.values[f] == doctest::Approx(want).epsilon(1e-14));
    }
    CHECK(u.farfield.eval(0.25) == doctest::Approx(0.25));
}

TEST_CASE("interior predicate is the strict open ball") {
    Domain d{1, 1.0, 2.0, 0.25};
    GridFunction u = sample_profile(d, Profile::make_constant(0.0));
    size_t count = 0;
    for (size_t f = 0; f < u.size(); ++f) {
        if (u.interior(f)) ++count;
        CHECK(u.interior(f) == (u.radius(f) < d.effective_R()));
    }
    CHECK(count == 8);  // cell centers at +-{1,3,5,7}/8
}

TEST_CASE("serialization round trip is bit exact") {
    Domain d{2, 1.0, 2.5, 0.25};
    std::array<double, 2> om = {std::cos(0.3), std::sin(0.3)};
    auto u = sample_profile(d, Profile::make_layer_tanh(om, 1.3),
                            [&] {
                                FarField f;
                                f.kind = FarFieldKind::profile1d;
                                f.omega = om;
                                f.profile = FarProfile::tanh_layer;
                                f.width = 1.3;
                                return f;
                            }());
    u.values[7] = 0.1234567890123456789;  // not representable exactly
    auto v = GridFunction::deserialize(u.serialize());
    REQUIRE(v.values.size() == u.values.size());
    for (size_t f = 0; f < u.size(); ++f) CHECK(v.values[f] == u.values[f]);
    CHECK(v.dom.same_as(u.dom));
    CHECK(v.farfield.kind == u.farfield.kind);
    CHECK(v.farfield.eval(0.37) == u.farfield.eval(0.37));
    // and the round trip of the round trip is textually identical
    CHECK(v.serialize() == u.serialize());
}

TEST_CASE("deserialize rejects malformed input") {
    CHECK_THROWS_AS(GridFunction::deserialize("nonsense"), std::invalid_argument);
    auto u = sample_profile(Domain{1, 1.0, 2.0, 0.25}, Profile::make_constant(0.5),
                            FarField::constant(0.5));
    std::string text = u.serialize();
    text.resize(text.size() / 2);  // truncate the value list
    CHECK_THROWS_AS(GridFunction::deserialize(text), std::invalid_argument);
}

TEST_CASE("min/max combination is a pointwise multiset rearrangement") {
    Domain d{1, 1.0, 2.0, 0.25};
    Rng rng(123);
    auto u = sample_profile(d, Profile::make_constant(0.0), FarField::constant(0.0));
    auto v = u;
    for (size_t f = 0; f < u.size(); ++f) {
        u.values[f] = rng.uniform(-1.0, 1.0);
        v.values[f] = rng.uniform(-1.0, 1.0);
    }
    auto [m, M] = min_max_combine(u, v);
    for (size_t f = 0; f < u.size(); ++f) {
        CHECK(m.values[f] == std::fmin(u.values[f], v.values[f]));
        CHECK(M.values[f] == std::fmax(u.values[f], v.values[f]));
        CHECK(m.values[f] + M.values[f] ==
              doctest::Approx(u.values[f] + v.values[f]).epsilon(1e-15));
    }
}

TEST_CASE("translate shifts the lattice exactly") {
    Domain d{1, 2.0, 4.0, 0.25};
    std::array<double, 2> e1 = {1.0, 0.0};
    auto u = sample_profile(d, Profile::make_ramp(e1), FarField::ramp(e1));
    auto t = translate(u, {d.h});
    // ramp values decrease by exactly h wherever both nodes are unclipped
    int checked = 0;
    for (size_t f = 1; f < u.size(); ++f) {
        auto x = u.node(f);
        if (std::fabs(x[0]) < 1.0 - d.h && std::fabs(x[0] - d.h) < 1.0 - d.h) {
            CHECK(t.values[f] == doctest::Approx(u.values[f] - d.h).epsilon(1e-14));
            ++checked;
        }
    }
    CHECK(checked > 4);
    CHECK_THROWS_AS(translate(u, {0.3 * d.h}), std::invalid_argument);
}
