#include "kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "util.hpp"

namespace nle {

namespace {

double norm_of(const std::vector<double>& x) {
    double q = 0.0;
    for (double v : x) q += v * v;
    return std::sqrt(q);
}

// g(rho) = (1 + rho^2)^{-(n+s+1)/2}
double mc_g(double m, double rho) {
    return std::pow(1.0 + rho * rho, -0.5 * (m + 1.0));
}

// G(tau) = int_0^tau g, odd. Substituting rho = tan(theta) turns it into
// int_0^{atan(tau)} cos^{m-1}(theta) dtheta: smooth and bounded, so a fixed
// Gauss-Legendre rule is accurate to machine precision.
double mc_G(double m, double tau) {
    double a = std::fabs(tau);
    if (a == 0.0) return 0.0;
    static thread_local std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(40, gx, gw);
    double th = std::atan(a);
    double v = 0.0;
    for (size_t i = 0; i < gx.size(); ++i) {
        double theta = 0.5 * th * (gx[i] + 1.0);
        v += gw[i] * std::pow(std::cos(theta), m - 1.0);
    }
    v *= 0.5 * th;
    return tau > 0 ? v : -v;
}

// Gcal(t) = int_0^t (t - rho) g(rho) drho, even. The rho g(rho) piece has the
// elementary antiderivative -(1+rho^2)^{-(m-1)/2} / (m-1), leaving
// Gcal(t) = t G(t) - (1 - (1+t^2)^{-(m-1)/2}) / (m-1).
double mc_Gcal(double m, double t) {
    double a = std::fabs(t);
    if (a == 0.0) return 0.0;
    return a * mc_G(m, a) -
           (1.0 - std::pow(1.0 + a * a, -0.5 * (m - 1.0))) / (m - 1.0);
}

// G(inf) = int_0^inf (1+r^2)^{-(m+1)/2} dr = (sqrt(pi)/2) Gamma(m/2)/Gamma((m+1)/2)
double mc_G_inf(double m) {
    return 0.5 * std::sqrt(M_PI) *
           std::exp(std::lgamma(0.5 * m) - std::lgamma(0.5 * (m + 1.0)));
}

// min of g on [0,1] over a 1000-point grid (g is decreasing, but the grid min
// is the documented definition)
double mc_c_star(double m) {
    double best = mc_g(m, 0.0);
    for (int i = 1; i < 1000; ++i) best = std::min(best, mc_g(m, i / 999.0));
    return best;
}

}  // namespace

void KernelParams::validate() const {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("kernel: s must be in (0,1)");
    if (!(p >= 1.0)) throw std::invalid_argument("kernel: p must be >= 1");
    if (n != 1 && n != 2) throw std::invalid_argument("kernel: n must be 1 or 2");
    if (family == Family::meanCurvature && p != 1.0)
        throw std::invalid_argument("kernel: meanCurvature requires p = 1");
    if (c_star > c_upper) throw std::invalid_argument("kernel: c_star > c_upper");
    if (family == Family::custom && (!F_fn || !dF_fn))
        throw std::invalid_argument("kernel: custom family needs F and dF callables");
}

KernelParams KernelParams::p_laplacian(int n, double s, double p) {
    KernelParams k;
    k.family = Family::pLaplacian;
    k.n = n; k.s = s; k.p = p;
    double m = n + s * p;
    k.c_star = 1.0 / p;
    k.c_upper = 1.0 / p;
    k.c1 = m;
    k.c2 = m * (m + 1.0);
    k.c3 = 1.0;
    k.validate();
    return k;
}

KernelParams KernelParams::mean_curvature(int n, double s) {
    KernelParams k;
    k.family = Family::meanCurvature;
    k.n = n; k.s = s; k.p = 1.0;
    double m = n + s;
    k.c_star = mc_c_star(m);
    k.c_upper = mc_G_inf(m);
    k.c1 = m + 1.0;
    k.c2 = (m + 1.0) * (m + 3.0);
    k.c3 = mc_G_inf(m);
    k.validate();
    return k;
}

KernelParams KernelParams::custom(int n, double s, double p, RadialFn F,
                                  RadialFn dF, double c_star, double c_upper,
                                  double c1, double c2, double c3) {
    KernelParams k;
    k.family = Family::custom;
    k.n = n; k.s = s; k.p = p;
    k.F_fn = std::move(F); k.dF_fn = std::move(dF);
    k.c_star = c_star; k.c_upper = c_upper;
    k.c1 = c1; k.c2 = c2; k.c3 = c3;
    k.validate();
    return k;
}

double eval_F_r(const KernelParams& k, double t, double r) {
    if (!(r > 0.0))
        throw std::domain_error("F defined on R x R^n \\ {0}");
    switch (k.family) {
        case Family::pLaplacian:
            return std::pow(std::fabs(t), k.p) / k.p *
                   std::pow(r, -(k.n + k.s * k.p));
        case Family::meanCurvature:
            return mc_Gcal(k.n + k.s, std::fabs(t) / r) *
                   std::pow(r, -(k.n + k.s - 1.0));
        case Family::custom:
            return k.F_fn(t, r);
    }
    return 0.0;
}

double eval_dF_dt_r(const KernelParams& k, double t, double r) {
    if (!(r > 0.0))
        throw std::domain_error("F defined on R x R^n \\ {0}");
    switch (k.family) {
        case Family::pLaplacian: {
            if (t == 0.0) return 0.0;  // p.v. convention for p < 2
            double mag = std::pow(std::fabs(t), k.p - 1.0);
            return (t > 0 ? mag : -mag) * std::pow(r, -(k.n + k.s * k.p));
        }
        case Family::meanCurvature:
            return mc_G(k.n + k.s, t / r) * std::pow(r, -(k.n + k.s));
        case Family::custom:
            return k.dF_fn(t, r);
    }
    return 0.0;
}

double eval_F(const KernelParams& k, double t, const std::vector<double>& x) {
    return eval_F_r(k, t, norm_of(x));
}

double eval_dF_dt(const KernelParams& k, double t, const std::vector<double>& x) {
    return eval_dF_dt_r(k, t, norm_of(x));
}

double eval_helpers(const KernelParams& k, double value, Helper which) {
    if (k.family != Family::meanCurvature)
        throw std::invalid_argument("helpers g/G/Gcal require meanCurvature");
    double m = k.n + k.s;
    switch (which) {
        case Helper::g: return mc_g(m, value);
        case Helper::G: return mc_G(m, value);
        case Helper::Gcal: return mc_Gcal(m, value);
    }
    return 0.0;
}

namespace {

// analytic radial derivatives of F in x, for the growth-bound audit
// (finite differences are too noisy at the 1e-9 slack for second derivatives)
struct XDerivs {
    double dFdxi, d2Fdxi2;
};

XDerivs x_derivs(const KernelParams& k, double t, double r, double xi) {
    double dFdr = 0.0, d2Fdr2 = 0.0;
    switch (k.family) {
        case Family::pLaplacian: {
            double m = k.n + k.s * k.p;
            double F = eval_F_r(k, t, r);
            dFdr = -m / r * F;
            d2Fdr2 = m * (m + 1.0) / (r * r) * F;
            break;
        }
        case Family::meanCurvature: {
            double m = k.n + k.s;
            double tau = std::fabs(t) / r;
            double Gc = mc_Gcal(m, tau), G = mc_G(m, tau), g = mc_g(m, tau);
            dFdr = -std::pow(r, -m) * ((m - 1.0) * Gc + tau * G);
            d2Fdr2 = std::pow(r, -m - 1.0) *
                     (m * (m - 1.0) * Gc + 2.0 * m * tau * G + tau * tau * g);
            break;
        }
        case Family::custom: {
            // custom kernels: central differences (coarser slack applied by caller)
            double hr = 1e-5 * r;
            auto f = [&](double rr) { return k.F_fn(t, rr); };
            dFdr = (f(r + hr) - f(r - hr)) / (2.0 * hr);
            d2Fdr2 = (f(r + hr) - 2.0 * f(r) + f(r - hr)) / (hr * hr);
            break;
        }
    }
    // chain rule through r(x): dr/dxi = xi/r
    XDerivs d;
    double c = xi / r;
    d.dFdxi = c * dFdr;
    d.d2Fdxi2 = c * c * d2Fdr2 + (1.0 / r - xi * xi / (r * r * r)) * dFdr;
    return d;
}

struct Tracker {
    double margin = 1e300;
    std::string worst;
    void observe(double slack, const std::string& sample) {
        if (slack < margin) { margin = slack; worst = sample; }
    }
};

std::string sample_str(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    bool first = true;
    for (auto& [name, v] : kv) {
        if (!first) os << " ";
        first = false;
        os << name << "=" << v;
    }
    return os.str();
}

}  // namespace

bool AuditReport::all_pass() const {
    for (auto& it : items)
        if (!it.pass) return false;
    return true;
}

std::string AuditReport::text() const {
    std::ostringstream os;
    int npass = 0;
    for (auto& it : items) npass += it.pass ? 1 : 0;
    os << "assumption audit: " << npass << "/" << items.size() << " items pass\n";
    for (auto& it : items) {
        os << "  (" << it.id << ") " << (it.pass ? "pass" : "FAIL")
           << "  margin=" << format_sig17(it.margin);
        if (!it.worst.empty()) os << "  worst: " << it.worst;
        os << "\n";
    }
    return os.str();
}

std::string AuditReport::key_values() const {
    std::ostringstream os;
    for (auto& it : items) {
        os << "item=" << it.id << " pass=" << (it.pass ? 1 : 0)
           << " margin=" << format_sig17(it.margin)
           << " worst=\"" << it.worst << "\"\n";
    }
    return os.str();
}

AuditReport audit_assumptions(const KernelParams& k, int sample_count,
                              uint64_t seed, AuditRanges ranges) {
    if (sample_count < 1)
        throw std::invalid_argument("audit: sample_count >= 1");
    k.validate();
    Rng rng(seed);
    const double rel = 1e-9;  // relative slack
    const double m_exp = k.n + k.s * k.p;

    Tracker sym, mono_t, mono_x, scal, sand_lo, sand_hi, dx1, dx2, dt_growth,
        strict, convex;

    for (int i = 0; i < sample_count; ++i) {
        double t = rng.uniform(-ranges.t_max, ranges.t_max);
        double t2 = rng.uniform(-ranges.t_max, ranges.t_max);
        double r = rng.uniform(ranges.r_min, ranges.r_max);
        double r2 = rng.uniform(ranges.r_min, ranges.r_max);
        double alpha = rng.uniform(0.0, 1.0);
        if (alpha == 0.0) alpha = 1.0;
        double lam = rng.uniform(0.0, 1.0);
        double xi_frac = rng.uniform(-1.0, 1.0);  // xi / r component fraction

        double F = eval_F_r(k, t, r);
        double scale = std::max(1.0, std::fabs(F));

        // (2.1) symmetry: evenness in t and radial dependence, bit-exact
        {
            bool ok = eval_F_r(k, -t, r) == F;
            sym.observe(ok ? 0.0 : -1.0, sample_str({{"t", t}, {"r", r}}));
        }
        // (2.2) monotone in |t|
        {
            double lo = std::min(std::fabs(t), std::fabs(t2));
            double hi = std::max(std::fabs(t), std::fabs(t2));
            double slack = eval_F_r(k, hi, r) - eval_F_r(k, lo, r);
            mono_t.observe(slack / scale + rel, sample_str({{"t1", lo}, {"t2", hi}, {"r", r}}));
        }
        // (2.3) monotone in |x|: |x1| >= |x2| => F(t,x1) <= F(t,x2)
        {
            double lo = std::min(r, r2), hi = std::max(r, r2);
            double slack = eval_F_r(k, t, lo) - eval_F_r(k, t, hi);
            mono_x.observe(slack / std::max(1.0, eval_F_r(k, t, lo)) + rel,
                           sample_str({{"t", t}, {"r1", hi}, {"r2", lo}}));
        }
        // (2.4) scaling: F(t, alpha x) <= alpha^{-n-sp-1} F(t, x), alpha in (0,1]
        {
            double lhs = eval_F_r(k, t, alpha * r);
            double rhs = std::pow(alpha, -(m_exp + 1.0)) * F;
            scal.observe((rhs - lhs) / std::max(1.0, rhs) + rel,
                         sample_str({{"t", t}, {"r", r}, {"alpha", alpha}}));
        }
        // (2.5) sandwich
        {
            double core = std::pow(std::fabs(t), k.p) * std::pow(r, -m_exp);
            double lo = k.c_star * (core - std::pow(r, -(m_exp - k.p)));
            double hi = k.c_upper * core;
            sand_lo.observe((F - lo) / scale + rel, sample_str({{"t", t}, {"r", r}}));
            sand_hi.observe((hi - F) / std::max(1.0, hi) + rel,
                            sample_str({{"t", t}, {"r", r}}));
        }
        // (2.7), (2.8) x-derivative growth
        {
            double xi = xi_frac * r;
            XDerivs d = x_derivs(k, t, r, xi);
            double slack_rel = k.family == Family::custom ? 1e-3 : rel;
            double b1 = k.c1 * F / r;
            double b2 = k.c2 * F / (r * r);
            dx1.observe((b1 - std::fabs(d.dFdxi)) / std::max(1.0, b1) + slack_rel,
                        sample_str({{"t", t}, {"r", r}, {"xi", xi}}));
            dx2.observe((b2 - std::fabs(d.d2Fdxi2)) / std::max(1.0, b2) + slack_rel,
                        sample_str({{"t", t}, {"r", r}, {"xi", xi}}));
        }
        // (2.10) |dF/dt| <= c3 |t|^{p-1} / |x|^{n+sp}
        {
            double b = k.c3 * std::pow(std::fabs(t), k.p - 1.0) * std::pow(r, -m_exp);
            double slack = (b - std::fabs(eval_dF_dt_r(k, t, r))) / std::max(1.0, b);
            dt_growth.observe(slack + rel, sample_str({{"t", t}, {"r", r}}));
        }
        // (2.11) strict monotonicity of dF/dt
        {
            double T = std::max(t, t2), tau = std::min(t, t2);
            if (T - tau >= 1e-6) {
                double slack = eval_dF_dt_r(k, T, r) - eval_dF_dt_r(k, tau, r);
                strict.observe(slack, sample_str({{"T", T}, {"tau", tau}, {"r", r}}));
            }
        }
        // (4.14) convexity in t
        {
            double lhs = eval_F_r(k, lam * t + (1.0 - lam) * t2, r);
            double rhs = lam * eval_F_r(k, t, r) + (1.0 - lam) * eval_F_r(k, t2, r);
            convex.observe((rhs - lhs) / std::max(1.0, rhs) + rel,
                           sample_str({{"t", t}, {"tau", t2}, {"lambda", lam}, {"r", r}}));
        }
    }

    AuditReport rep;
    auto push = [&rep](const char* id, const Tracker& tr) {
        rep.items.push_back({id, tr.margin >= 0.0, tr.margin, tr.worst});
    };
    push("2.1", sym);
    push("2.2", mono_t);
    push("2.3", mono_x);
    push("2.4", scal);
    push("2.5-lower", sand_lo);
    push("2.5-upper", sand_hi);
    push("2.7", dx1);
    push("2.8", dx2);
    push("2.10", dt_growth);
    push("2.11", strict);
    push("4.14", convex);
    return rep;
}

}  // namespace nle
