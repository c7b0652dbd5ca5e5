#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nle {

enum class Family { pLaplacian, meanCurvature, custom };
enum class Helper { g, G, Gcal };

// Radial custom kernel: f(t, r) with r = |x| > 0, plus its t-derivative.
using RadialFn = std::function<double(double, double)>;

struct KernelParams {
    Family family = Family::pLaplacian;
    int n = 1;        // spatial dimension, 1 or 2
    double s = 0.5;   // in (0,1)
    double p = 2.0;   // >= 1; fixed to 1 for meanCurvature
    // structural constants of the assumption set
    double c_star = 0.0, c_upper = 0.0;  // sandwich bounds
    double c1 = 0.0, c2 = 0.0;           // x-derivative growth
    double c3 = 0.0;                     // t-derivative growth
    // only for family == custom
    RadialFn F_fn, dF_fn;

    static KernelParams p_laplacian(int n, double s, double p);
    static KernelParams mean_curvature(int n, double s);
    static KernelParams custom(int n, double s, double p, RadialFn F,
                               RadialFn dF, double c_star, double c_upper,
                               double c1, double c2, double c3);
    void validate() const;  // throws std::invalid_argument
};

// F(t, x); x may have 1 or n components, only |x| matters (kernels are radial).
double eval_F(const KernelParams& k, double t, const std::vector<double>& x);
double eval_dF_dt(const KernelParams& k, double t, const std::vector<double>& x);

// radial forms used by the energy module (r = |x|)
double eval_F_r(const KernelParams& k, double t, double r);
double eval_dF_dt_r(const KernelParams& k, double t, double r);

// section-6.2 helpers; meanCurvature only
double eval_helpers(const KernelParams& k, double value, Helper which);

struct AuditItem {
    std::string id;           // e.g. "2.4"
    bool pass = true;
    double margin = 0.0;      // most negative slack seen (>=0 means pass)
    std::string worst;        // description of the worst sample
};

struct AuditReport {
    std::vector<AuditItem> items;
    bool all_pass() const;
    std::string text() const;       // line-oriented report
    std::string key_values() const; // machine-readable block
};

struct AuditRanges {
    double t_max = 4.0;
    double r_min = 0.1, r_max = 10.0;
};

AuditReport audit_assumptions(const KernelParams& k, int sample_count,
                              uint64_t seed, AuditRanges ranges = {});

}  // namespace nle
