#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "potentials.hpp"

using namespace nle;

TEST_CASE("double well point values") {
    auto w = Potential::double_well();
    CHECK(eval_W(w, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(eval_W(w, 1.0) == doctest::Approx(0.0));
    CHECK(eval_W(w, -1.0) == doctest::Approx(0.0));
    CHECK(eval_dW(w, 2.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(eval_dW(w, 1.0) == doctest::Approx(0.0));
    CHECK(eval_dW(w, -1.0) == doctest::Approx(0.0));
    CHECK(eval_dW(w, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("double well is nonnegative and vanishes only at the wells") {
    auto w = Potential::double_well();
    for (double u = -3.0; u <= 3.0; u += 0.01) {
        CHECK(eval_W(w, u) >= 0.0);
        if (std::fabs(std::fabs(u) - 1.0) > 1e-6) CHECK(eval_W(w, u) > 0.0);
    }
}

TEST_CASE("dW is consistent with W by finite differences") {
    auto w = Potential::double_well();
    double d = 1e-6;
    for (double u : {-1.7, -0.4, 0.0, 0.9, 2.2}) {
        double fd = (eval_W(w, u + d) - eval_W(w, u - d)) / (2.0 * d);
        CHECK(eval_dW(w, u) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("zero potential") {
    auto z = Potential::none();
    CHECK(z.klass == PotentialClass::C1Bounded);
    CHECK(eval_W(z, 0.37) == 0.0);
    CHECK(eval_dW(z, -2.0) == 0.0);
}

TEST_CASE("custom potential") {
    auto c = Potential::custom([](double u) { return u * u; },
                               [](double u) { return 2.0 * u; },
                               PotentialClass::C1Bounded);
    CHECK(eval_W(c, 3.0) == doctest::Approx(9.0));
    CHECK(eval_dW(c, 3.0) == doctest::Approx(6.0));
    CHECK_THROWS_AS(Potential::custom(nullptr, nullptr, PotentialClass::C1Bounded),
                    std::invalid_argument);
}
