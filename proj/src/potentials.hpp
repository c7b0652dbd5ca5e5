#pragma once
#include <functional>
#include <stdexcept>

namespace nle {

enum class PotentialFamily { doubleWell, zero, custom };
// which assumption the potential claims: C1 bounded (2.12) or C2 double well (2.13)
enum class PotentialClass { C1Bounded, doubleWellC2 };

struct Potential {
    PotentialFamily family = PotentialFamily::doubleWell;
    PotentialClass klass = PotentialClass::doubleWellC2;
    std::function<double(double)> W_fn, dW_fn;  // custom only

    static Potential double_well() { return {}; }
    static Potential none() {
        Potential p;
        p.family = PotentialFamily::zero;
        p.klass = PotentialClass::C1Bounded;
        return p;
    }
    static Potential custom(std::function<double(double)> W,
                            std::function<double(double)> dW,
                            PotentialClass klass) {
        if (!W || !dW)
            throw std::invalid_argument("custom potential needs W and dW");
        Potential p;
        p.family = PotentialFamily::custom;
        p.klass = klass;
        p.W_fn = std::move(W);
        p.dW_fn = std::move(dW);
        return p;
    }
};

inline double eval_W(const Potential& pot, double u) {
    switch (pot.family) {
        case PotentialFamily::doubleWell: {
            double q = u * u - 1.0;
            return 0.25 * q * q;
        }
        case PotentialFamily::zero: return 0.0;
        case PotentialFamily::custom: return pot.W_fn(u);
    }
    return 0.0;
}

inline double eval_dW(const Potential& pot, double u) {
    switch (pot.family) {
        case PotentialFamily::doubleWell: return u * u * u - u;
        case PotentialFamily::zero: return 0.0;
        case PotentialFamily::custom: return pot.dW_fn(u);
    }
    return 0.0;
}

}  // namespace nle
