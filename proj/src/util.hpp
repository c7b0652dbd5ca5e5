#pragma once
#include <cstdint>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace nle {

// Deterministic uniform generator. std::uniform_real_distribution is
// implementation-defined, so map the raw 64-bit stream to [0,1) ourselves:
// identical output on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    uint64_t next() {
        // splitmix64
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
private:
    uint64_t state_;
};

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w);

// Kahan-compensated accumulator.
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// Least squares fit y = slope*x + intercept.
struct LineFit {
    double slope = 0.0, intercept = 0.0, slope_stderr = 0.0, ss_resid = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::string format_sig17(double v);

}  // namespace nle
