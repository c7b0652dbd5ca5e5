#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fast_energy.hpp"
#include "util.hpp"

namespace nle {

namespace {

double energy_total(const GridFunction& u, const KernelParams& k,
                    const Potential& pot, const QuadratureConfig& q) {
    if (FastEnergy::applicable(k, q)) {
        FastEnergy fe(u, k, pot, q);
        const auto& in = fe.interior();
        std::vector<double> v(in.size());
        for (size_t a = 0; a < in.size(); ++a) v[a] = u.values[in[a]];
        return fe.eval(v, nullptr);
    }
    return total_energy(u, k, pot, q).total;
}

// two-parameter shape model for the sp = 1 regime, fit by least squares in
// linear space: n = 1: a log(R+1) + b; n = 2: a [(R+1)log(R+1) - R] + b (R+1)
struct ShapeFit {
    double a = 0.0, b = 0.0;
    double log_resid = 0.0;  // sum of squared log-space residuals
    std::vector<double> pred;
    bool valid = false;
};

void shape_basis(int n, double R, double* f0, double* f1) {
    if (n == 1) {
        *f0 = std::log(R + 1.0);
        *f1 = 1.0;
    } else {
        *f0 = (R + 1.0) * std::log(R + 1.0) - R;
        *f1 = R + 1.0;
    }
}

ShapeFit fit_log_shape(int n, const std::vector<double>& R,
                       const std::vector<double>& vals) {
    double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
    for (size_t i = 0; i < R.size(); ++i) {
        double f0, f1;
        shape_basis(n, R[i], &f0, &f1);
        a00 += f0 * f0;
        a01 += f0 * f1;
        a11 += f1 * f1;
        b0 += f0 * vals[i];
        b1 += f1 * vals[i];
    }
    double det = a00 * a11 - a01 * a01;
    ShapeFit sf;
    if (std::fabs(det) < 1e-300) return sf;
    sf.a = (b0 * a11 - b1 * a01) / det;
    sf.b = (a00 * b1 - a01 * b0) / det;
    sf.valid = true;
    sf.pred.resize(R.size());
    for (size_t i = 0; i < R.size(); ++i) {
        double f0, f1;
        shape_basis(n, R[i], &f0, &f1);
        sf.pred[i] = sf.a * f0 + sf.b * f1;
        if (!(sf.pred[i] > 0.0)) {
            sf.valid = false;
            return sf;
        }
        double e = std::log(sf.pred[i]) - std::log(vals[i]);
        sf.log_resid += e * e;
    }
    return sf;
}

// fills fit fields of an ExperimentReport from R -> measured, comparing against
// the three-regime prediction; fit_count largest radii enter the power fit
void fit_regimes(ExperimentReport& rep, double exp_tol, size_t fit_count) {
    double sp = rep.s * rep.p;
    bool log_case = std::fabs(sp - 1.0) < 1e-12;
    rep.log_regime = log_case;
    rep.tolerance = exp_tol;
    rep.predicted_exponent = sp < 1.0 ? rep.n - sp : rep.n - 1.0;

    size_t m = rep.R_list.size();
    size_t lo = m > fit_count ? m - fit_count : 0;
    std::vector<double> lx, ly;
    for (size_t i = lo; i < m; ++i) {
        lx.push_back(std::log(rep.R_list[i]));
        ly.push_back(std::log(rep.measured[i]));
    }
    LineFit lf = fit_line(lx, ly);
    rep.fitted_exponent = lf.slope;
    rep.fitted_stderr = lf.slope_stderr;

    if (!log_case) {
        rep.pass = std::fabs(rep.fitted_exponent - rep.predicted_exponent) <=
                   exp_tol;
        return;
    }

    // sp = 1: compare the all-points power fit with the log-corrected shape
    // model; pass iff the shape model cuts the log-space residual by >= 20%
    std::vector<double> ax, ay;
    for (size_t i = 0; i < m; ++i) {
        ax.push_back(std::log(rep.R_list[i]));
        ay.push_back(std::log(rep.measured[i]));
    }
    LineFit full = fit_line(ax, ay);
    rep.power_resid = full.ss_resid;
    ShapeFit sf = fit_log_shape(rep.n, rep.R_list, rep.measured);
    rep.log_resid = sf.valid ? sf.log_resid : 1e300;
    rep.resid_reduction =
        rep.power_resid > 0.0
            ? (rep.power_resid - rep.log_resid) / rep.power_resid
            : (rep.log_resid <= rep.power_resid ? 1.0 : 0.0);
    rep.pass = rep.resid_reduction >= 0.20;
}

}  // namespace

std::string ExperimentReport::csv() const {
    std::ostringstream os;
    os << "R,measured\n";
    for (size_t i = 0; i < R_list.size(); ++i)
        os << format_sig17(R_list[i]) << "," << format_sig17(measured[i])
           << "\n";
    return os.str();
}

std::string ExperimentReport::verdict() const {
    std::ostringstream os;
    os << "experiment: " << id << "\n";
    os << "kernel=" << kernel << " potential=" << potential << " n=" << n
       << " s=" << format_sig17(s) << " p=" << format_sig17(p) << "\n";
    os << "R_list:";
    for (double R : R_list) os << " " << format_sig17(R);
    os << "\nmeasured:";
    for (double v : measured) os << " " << format_sig17(v);
    os << "\n";
    if (incomplete) os << "status: incomplete (solver stall)\n";
    os << "predicted_exponent: " << format_sig17(predicted_exponent);
    if (log_regime) os << " (with log factor)";
    os << "\nfitted_exponent: " << format_sig17(fitted_exponent) << " +- "
       << format_sig17(fitted_stderr) << "\n";
    if (log_regime) {
        os << "power_fit_residual: " << format_sig17(power_resid) << "\n";
        os << "log_model_residual: " << format_sig17(log_resid) << "\n";
        os << "residual_reduction: " << format_sig17(resid_reduction)
           << " (needs >= 0.2)\n";
    } else {
        os << "tolerance: " << format_sig17(tolerance) << "\n";
    }
    if (!notes.empty()) os << "notes: " << notes << "\n";
    os << "verdict: " << (pass && !incomplete ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string ExperimentReport::gnuplot() const {
    std::ostringstream os;
    os << "# R fitted_model\n";
    if (log_regime) {
        ShapeFit sf = fit_log_shape(n, R_list, measured);
        for (size_t i = 0; i < R_list.size(); ++i) {
            double f0, f1;
            shape_basis(n, R_list[i], &f0, &f1);
            os << format_sig17(R_list[i]) << " "
               << format_sig17(sf.a * f0 + sf.b * f1) << "\n";
        }
    } else {
        // re-derive the power model from the stored fit on the large-R tail
        size_t m = R_list.size();
        size_t lo = m > 3 ? m - 3 : 0;
        std::vector<double> lx, ly;
        for (size_t i = lo; i < m; ++i) {
            lx.push_back(std::log(R_list[i]));
            ly.push_back(std::log(measured[i]));
        }
        LineFit lf = fit_line(lx, ly);
        for (size_t i = 0; i < R_list.size(); ++i)
            os << format_sig17(R_list[i]) << " "
               << format_sig17(std::exp(lf.intercept) *
                               std::pow(R_list[i], lf.slope))
               << "\n";
    }
    return os.str();
}

ExperimentReport scaling_experiment(const KernelParams& k, const Potential& pot,
                                    const std::vector<double>& R_list,
                                    const ScalingOptions& opts) {
    k.validate();
    if (R_list.size() < 3)
        throw std::invalid_argument("scaling_experiment: need >= 3 radii");
    for (size_t i = 1; i < R_list.size(); ++i)
        if (!(R_list[i] > R_list[i - 1]))
            throw std::invalid_argument("scaling_experiment: R_list must increase");

    ExperimentReport rep;
    rep.id = "scaling";
    rep.n = k.n;
    rep.s = k.s;
    rep.p = k.p;
    rep.kernel = k.family == Family::pLaplacian     ? "pLaplacian"
                 : k.family == Family::meanCurvature ? "meanCurvature"
                                                     : "custom";
    rep.potential = pot.family == PotentialFamily::doubleWell ? "doubleWell"
                    : pot.family == PotentialFamily::zero     ? "zero"
                                                              : "custom";
    rep.R_list = R_list;

    for (double R : R_list) {
        if (opts.rule == DataRule::psi_upper) {
            // un-minimized upper-bound curve: radial ring state on B_{R+2}
            Domain dom;
            dom.n = k.n;
            dom.R = R + 2.0;
            dom.R_box = opts.box_factor * dom.R;
            dom.h = dom.R / opts.h_divisor;
            GridFunction u = sample_profile(dom, Profile::make_psi_aux(R),
                                            FarField::constant(1.0));
            rep.measured.push_back(energy_total(u, k, pot, opts.quad));
            continue;
        }
        Domain dom;
        dom.n = k.n;
        dom.R = R;
        dom.R_box = opts.box_factor * R;
        dom.h = R / opts.h_divisor;
        std::array<double, 2> e1 = {1.0, 0.0};
        GridFunction u0 =
            opts.rule == DataRule::ramp
                ? sample_profile(dom, Profile::make_ramp(e1), FarField::ramp(e1))
                : sample_profile(dom, Profile::make_layer_tanh(e1, 1.0),
                                 [&] {
                                     FarField f;
                                     f.kind = FarFieldKind::profile1d;
                                     f.omega = e1;
                                     f.profile = FarProfile::tanh_layer;
                                     f.width = 1.0;
                                     return f;
                                 }());
        // fine grids flatline (in fp) near pg ~ 1e-8, below the h-scaled
        // solver default; an absolute tolerance keeps every R solvable
        MinimizeConfig mc = opts.solver;
        if (mc.grad_tol <= 0.0) mc.grad_tol = 1e-6;
        MinimizeResult res = minimize(u0, k, pot, mc, opts.quad);
        if (res.status == SolveStatus::stalled) rep.incomplete = true;
        rep.measured.push_back(res.energy);
    }
    fit_regimes(rep, 0.15, 3);
    if (R_list.size() == 3) rep.notes = "fit over all three radii";
    return rep;
}

ExperimentReport tail_estimate_check(double s, double p, int n,
                                     const std::vector<double>& R_list,
                                     double h) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("tail_estimate_check: n must be 1 or 2");
    if (R_list.size() < 4)
        throw std::invalid_argument("fit requires >= 4 radii");
    for (size_t i = 1; i < R_list.size(); ++i)
        if (!(R_list[i] > R_list[i - 1]))
            throw std::invalid_argument("tail_estimate_check: R_list must increase");
    if (h <= 0.0) h = n == 1 ? 0.05 : 0.25;
    double sp = s * p;

    ExperimentReport rep;
    rep.id = "tail_estimate";
    rep.n = n;
    rep.s = s;
    rep.p = p;
    rep.kernel = "none";
    rep.potential = "none";
    rep.R_list = R_list;

    for (double R : R_list) {
        double Rb = R + 2.0;
        int m = static_cast<int>(std::ceil(Rb / h));
        Kahan acc;
        if (n == 1) {
            for (int i = -m; i < m; ++i) {
                double x = (i + 0.5) * h;
                double r = std::fabs(x);
                if (r >= Rb) continue;
                double d = std::fmax(R + 1.0 - r, 1.0);
                acc.add(std::pow(d, -sp) * h);
            }
        } else {
            for (int i = -m; i < m; ++i)
                for (int j = -m; j < m; ++j) {
                    double r = std::hypot((i + 0.5) * h, (j + 0.5) * h);
                    if (r >= Rb) continue;
                    double d = std::fmax(R + 1.0 - r, 1.0);
                    acc.add(std::pow(d, -sp) * h * h);
                }
        }
        rep.measured.push_back(acc.sum);
    }
    // all points enter the power fit here: the integrand is exact, no small-R
    // transient to discard
    fit_regimes(rep, 0.1, R_list.size());
    return rep;
}

BumpFn standard_bump() {
    return [](double t) {
        double a = std::fabs(t);
        if (a <= 0.5) return 1.0;
        if (a >= 1.0) return 0.0;
        double x = (a - 0.5) * 2.0;
        auto f = [](double y) { return std::exp(-1.0 / std::fmax(y, 1e-300)); };
        return f(1.0 - x) / (f(1.0 - x) + f(x));
    };
}

double bump_c1_norm(const BumpFn& bump, double scale) {
    const int M = 100000;
    double sup = 0.0, dsup = 0.0;
    double d = 1e-6;
    for (int i = 0; i <= M; ++i) {
        double t = static_cast<double>(i) / M;
        sup = std::fmax(sup, std::fabs(bump(t)));
        double der = (bump(t + d) - bump(t - d)) / (2.0 * d);
        dsup = std::fmax(dsup, std::fabs(der));
    }
    // phi(|x|/scale) has derivative sup-norm dsup/scale
    return sup + dsup / scale;
}

GridFunction default_perturb_base(double R) {
    Domain dom;
    dom.n = 1;
    dom.R = R;
    dom.R_box = 2.0 * R;
    dom.h = 1.0 / (2.0 * R);
    std::array<double, 2> e1 = {1.0, 0.0};
    FarField ff;
    ff.kind = FarFieldKind::profile1d;
    ff.omega = e1;
    ff.profile = FarProfile::tanh_layer;
    ff.width = 1.0;
    return sample_profile(dom, Profile::make_layer_tanh(e1, 1.0), ff);
}

namespace {

// u_{R,sgn}(x) = u(Psi^{-1}(x)) on the same lattice; the map shifts only the
// first coordinate, so the inverse is a scalar fixed point per node and the
// off-lattice evaluation is linear interpolation along the first axis
GridFunction perturb_state(const GridFunction& u, const BumpFn& bump, double R,
                           double sgn) {
    const Domain& dom = u.dom;
    int N = dom.cells_per_axis();
    GridFunction out = u;
    double Reff = dom.effective_R();

    for (int c = 0; c < (dom.n == 1 ? 1 : N); ++c) {
        double x1 = dom.n == 1 ? 0.0 : dom.coord(c);
        for (int i = 0; i < N; ++i) {
            double x0 = dom.coord(i);
            double r0 = dom.n == 1 ? std::fabs(x0) : std::hypot(x0, x1);
            size_t flat = dom.n == 1 ? static_cast<size_t>(i)
                                     : static_cast<size_t>(i) * N + c;
            if (r0 >= Reff) continue;  // exterior invariance, exact
            // y0 = x0 - sgn * phi(|y| / R)
            double y0 = x0;
            bool conv = false;
            for (int it = 0; it < 500; ++it) {
                double ry = dom.n == 1 ? std::fabs(y0) : std::hypot(y0, x1);
                double yn = x0 - sgn * bump(ry / R);
                if (std::fabs(yn - y0) < 1e-12) {
                    y0 = yn;
                    conv = true;
                    break;
                }
                y0 = yn;
            }
            if (!conv)
                throw std::invalid_argument(
                    "perturbation_experiment: fixed point failed (R too small)");
            // interpolate the base state at (y0, x1) along the first axis
            double pos = y0 / dom.h + 0.5 * N - 0.5;
            int j = static_cast<int>(std::floor(pos));
            double frac = pos - j;
            int j0 = std::clamp(j, 0, N - 1);
            int j1 = std::clamp(j + 1, 0, N - 1);
            auto value_at = [&](int row) {
                return dom.n == 1 ? u.values[row]
                                  : u.values[static_cast<size_t>(row) * N + c];
            };
            out.values[flat] =
                (1.0 - frac) * value_at(j0) + frac * value_at(j1);
        }
    }
    return out;
}

}  // namespace

std::string PerturbationReport::csv() const {
    std::ostringstream os;
    os << "R,energy_base,energy_plus,energy_minus,delta,ratio\n";
    for (const auto& r : records)
        os << format_sig17(r.R) << "," << format_sig17(r.energy_base) << ","
           << format_sig17(r.energy_plus) << "," << format_sig17(r.energy_minus)
           << "," << format_sig17(r.delta) << "," << format_sig17(r.ratio)
           << "\n";
    return os.str();
}

std::string PerturbationReport::verdict() const {
    std::ostringstream os;
    os << "experiment: perturbation\n";
    os << "bump_c1_norm: " << format_sig17(bump_c1) << "\n";
    for (const auto& r : records)
        os << "R=" << format_sig17(r.R) << " delta=" << format_sig17(r.delta)
           << " ratio=" << format_sig17(r.ratio) << "\n";
    if (incomplete) os << "status: incomplete (solver stall)\n";
    os << "fitted_slope: " << format_sig17(slope) << " +- "
       << format_sig17(slope_stderr) << " (predicted -2)\n";
    os << "verdict: " << (pass && !incomplete ? "PASS" : "FAIL") << "\n";
    return os.str();
}

PerturbationReport perturbation_experiment(const BaseStateRule& base,
                                           const BumpFn& bump,
                                           const KernelParams& k,
                                           const Potential& pot,
                                           const std::vector<double>& R_list,
                                           const MinimizeConfig& cfg,
                                           const QuadratureConfig& q,
                                           bool minimize_base) {
    if (R_list.size() < 2)
        throw std::invalid_argument("perturbation_experiment: need >= 2 radii");
    PerturbationReport rep;
    rep.bump_c1 = bump_c1_norm(bump, 1.0);
    for (double R : R_list) {
        // the perturbation actually applied at radius R is phi(|x|/R)
        if (!(R > 2.0 * bump_c1_norm(bump, R)))
            throw std::invalid_argument(
                "perturbation_experiment: needs R > 2 |bump|_C1");
        GridFunction u = base(R);
        u.dom.validate();
        PerturbationRecord rec;
        rec.R = R;
        if (minimize_base) {
            // fine layer grids flatline (in fp) near pg ~ 1e-8, below the
            // h-scaled default; an absolute tolerance keeps every R solvable
            MinimizeConfig mc = cfg;
            if (mc.grad_tol <= 0.0) mc.grad_tol = 1e-6;
            MinimizeResult res = minimize(u, k, pot, mc, q);
            if (res.status == SolveStatus::stalled) rep.incomplete = true;
            u = res.u;
            rec.energy_base = res.energy;
        } else {
            rec.energy_base = energy_total(u, k, pot, q);
        }
        GridFunction up = perturb_state(u, bump, R, +1.0);
        GridFunction um = perturb_state(u, bump, R, -1.0);
        rec.energy_plus = energy_total(up, k, pot, q);
        rec.energy_minus = energy_total(um, k, pot, q);
        rec.delta = rec.energy_plus + rec.energy_minus - 2.0 * rec.energy_base;
        rec.ratio = rec.delta / rec.energy_base;
        rep.records.push_back(rec);
    }
    std::vector<double> lx, ly;
    bool delta_ok = true;
    for (const auto& r : rep.records) {
        lx.push_back(std::log(r.R));
        ly.push_back(std::log(std::fabs(r.ratio)));
        if (r.delta < -1e-10 * r.energy_base) delta_ok = false;
    }
    LineFit lf = fit_line(lx, ly);
    rep.slope = lf.slope;
    rep.slope_stderr = lf.slope_stderr;
    rep.pass = delta_ok && rep.slope >= -2.3 && rep.slope <= -1.7;
    return rep;
}

namespace {

// per-bin sufficient statistics for the detrended residual along a direction
struct BinScan {
    double residual_sq_sum = 0.0;
    size_t count = 0;
};

double direction_residual(const std::vector<double>& ts,
                          const std::vector<double>& vals, double h) {
    // bin by floor(t/h); per-bin linear fit in t removes the binning-noise
    // floor (an exactly one-dimensional affine state scores ~ 0 at any angle)
    double tmin = 1e300;
    for (double t : ts) tmin = std::fmin(tmin, t);
    int nb = 0;
    std::vector<int> bin(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        bin[i] = static_cast<int>(std::floor((ts[i] - tmin) / h));
        nb = std::max(nb, bin[i] + 1);
    }
    std::vector<double> c0(nb, 0), st(nb, 0), stt(nb, 0), sv(nb, 0),
        stv(nb, 0), svv(nb, 0);
    for (size_t i = 0; i < ts.size(); ++i) {
        int b = bin[i];
        c0[b] += 1.0;
        st[b] += ts[i];
        stt[b] += ts[i] * ts[i];
        sv[b] += vals[i];
        stv[b] += ts[i] * vals[i];
        svv[b] += vals[i] * vals[i];
    }
    double ss = 0.0;
    for (int b = 0; b < nb; ++b) {
        if (c0[b] < 0.5) continue;
        double m = c0[b];
        double Syy = svv[b] - sv[b] * sv[b] / m;
        double Stt = stt[b] - st[b] * st[b] / m;
        double Sty = stv[b] - st[b] * sv[b] / m;
        double resid = Syy;
        if (Stt > 1e-18) resid -= Sty * Sty / Stt;
        ss += std::fmax(resid, 0.0);
    }
    return std::sqrt(ss / static_cast<double>(ts.size()));
}

}  // namespace

SymmetryResult symmetry_diagnostic(const GridFunction& u2d) {
    if (u2d.dom.n != 2)
        throw std::invalid_argument("symmetry_diagnostic: needs n = 2");
    const Domain& dom = u2d.dom;
    double Reff = dom.effective_R();
    int N = dom.cells_per_axis();
    std::vector<double> xs, ys, vals;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double x = dom.coord(i), y = dom.coord(j);
            if (std::hypot(x, y) >= Reff) continue;
            xs.push_back(x);
            ys.push_back(y);
            vals.push_back(u2d.values[static_cast<size_t>(i) * N + j]);
        }
    if (xs.empty())
        throw std::invalid_argument("symmetry_diagnostic: empty ball");

    std::vector<double> ts(xs.size());
    auto residual_of = [&](double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        for (size_t i = 0; i < xs.size(); ++i) ts[i] = c * xs[i] + s * ys[i];
        return direction_residual(ts, vals, dom.h);
    };

    const int scan = 360;
    double best = 1e300, best_th = 0.0;
    for (int a = 0; a < scan; ++a) {
        double th = a * 2.0 * M_PI / scan;
        double r = residual_of(th);
        if (r < best) {
            best = r;
            best_th = th;
        }
    }
    // golden-section refinement around the best scan cell
    double lo = best_th - 2.0 * M_PI / scan, hi = best_th + 2.0 * M_PI / scan;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = residual_of(c), fd = residual_of(d);
    while (hi - lo > 1e-5) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = residual_of(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = residual_of(d);
        }
    }
    SymmetryResult out;
    out.theta = 0.5 * (lo + hi);
    out.omega = {std::cos(out.theta), std::sin(out.theta)};
    out.residual = residual_of(out.theta);

    // per-bin mean profile table at the best direction
    double tmin = 1e300;
    for (double t : ts) tmin = std::fmin(tmin, t);
    int nb = 0;
    std::vector<int> bin(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        bin[i] = static_cast<int>(std::floor((ts[i] - tmin) / dom.h));
        nb = std::max(nb, bin[i] + 1);
    }
    std::vector<double> sum(nb, 0.0), cnt(nb, 0.0);
    for (size_t i = 0; i < ts.size(); ++i) {
        sum[bin[i]] += vals[i];
        cnt[bin[i]] += 1.0;
    }
    for (int b = 0; b < nb; ++b) {
        if (cnt[b] < 0.5) continue;
        out.t_centers.push_back(tmin + (b + 0.5) * dom.h);
        out.u0.push_back(sum[b] / cnt[b]);
    }
    return out;
}

std::string SuiteReport::text() const {
    std::ostringstream os;
    os << "suite: " << id << "\n";
    os << "samples: " << total << "\n";
    os << "failures: " << failures << "\n";
    os << "worst_margin: " << format_sig17(worst_margin) << "\n";
    if (!worst.empty()) os << "worst_sample: " << worst << "\n";
    os << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

namespace {

void track(SuiteReport& rep, double margin, const std::string& what) {
    if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst = what;
    }
    if (margin < 0.0) ++rep.failures;
}

}  // namespace

SuiteReport appendix_inequality_suite(int sample_count, uint64_t seed) {
    SuiteReport rep;
    rep.id = "appendix_inequalities";
    Rng rng(seed);
    const double slack = 1e-9;
    const double pchoice[3] = {1.5, 2.0, 3.0};

    for (int sample = 0; sample < sample_count; ++sample) {
        int n = sample % 2 == 0 ? 1 : 2;
        double s = rng.uniform(0.2, 0.9);
        double p = pchoice[rng.next() % 3];
        double sp = s * p;
        double r1 = rng.uniform(1.0, 2.0);
        double r2 = rng.uniform(2.5, 4.0);
        double h = n == 1 ? 0.05 : 0.25;

        // lattice covering B_{r2}, nodes split into ball B_{r1} and annulus
        int m = static_cast<int>(std::ceil(r2 / h));
        std::vector<double> X, Y, V;
        std::vector<char> inner;
        for (int i = -m; i < m; ++i) {
            double x = (i + 0.5) * h;
            if (n == 1) {
                double r = std::fabs(x);
                if (r >= r2) continue;
                X.push_back(x);
                Y.push_back(0.0);
                V.push_back(rng.uniform(-1.0, 1.0));
                inner.push_back(r < r1);
            } else {
                for (int j = -m; j < m; ++j) {
                    double y = (j + 0.5) * h;
                    double r = std::hypot(x, y);
                    if (r >= r2) continue;
                    X.push_back(x);
                    Y.push_back(y);
                    V.push_back(rng.uniform(-1.0, 1.0));
                    inner.push_back(r < r1);
                }
            }
        }
        double hn = std::pow(h, n), h2n = hn * hn;
        size_t total = X.size();
        double vol_in = 0.0, vol_out = 0.0, mean_in = 0.0;
        for (size_t i = 0; i < total; ++i) {
            if (inner[i]) {
                vol_in += hn;
                mean_in += V[i] * hn;
            } else {
                vol_out += hn;
            }
        }
        mean_in /= vol_in;

        // Poincare: |u - mean|_{L^p(in)} vs (d^{n+sp}/|in|)^{1/p} [u]_{W^{s,p}(in)}
        double d_in = 2.0 * r1, d_all = 2.0 * r2;
        Kahan lhs15, semi_in, cross, lp_out, lp_in;
        for (size_t i = 0; i < total; ++i) {
            if (inner[i]) {
                lhs15.add(std::pow(std::fabs(V[i] - mean_in), p) * hn);
                lp_in.add(std::pow(std::fabs(V[i]), p) * hn);
            } else {
                lp_out.add(std::pow(std::fabs(V[i]), p) * hn);
            }
            for (size_t j = 0; j < total; ++j) {
                if (j == i) continue;
                double r = n == 1 ? std::fabs(X[i] - X[j])
                                  : std::hypot(X[i] - X[j], Y[i] - Y[j]);
                double w = std::pow(std::fabs(V[i] - V[j]), p) *
                           std::pow(r, -(n + sp)) * h2n;
                if (inner[i] && inner[j]) semi_in.add(w);
                if (inner[i] && !inner[j]) cross.add(w);
            }
        }
        {
            double lhs = std::pow(lhs15.sum, 1.0 / p);
            double rhs = std::pow(std::pow(d_in, n + sp) / vol_in, 1.0 / p) *
                         std::pow(semi_in.sum, 1.0 / p);
            double scale = std::fmax(rhs, 1e-300);
            std::ostringstream what;
            what << "poincare sample=" << sample << " n=" << n << " s=" << s
                 << " p=" << p;
            track(rep, (rhs - lhs) / scale + slack, what.str());
            ++rep.total;
        }
        {
            // nested-ball L^p bound with the diam(outer) constant
            double lhs = lp_in.sum;
            double rhs = std::pow(2.0, p - 1.0) / vol_out *
                         (std::pow(d_all, n + sp) * cross.sum +
                          vol_in * lp_out.sum);
            double scale = std::fmax(rhs, 1e-300);
            std::ostringstream what;
            what << "nested_lp sample=" << sample << " n=" << n << " s=" << s
                 << " p=" << p;
            track(rep, (rhs - lhs) / scale + slack, what.str());
            ++rep.total;
        }
    }
    rep.pass = rep.failures == 0;
    return rep;
}

SuiteReport convexity_suite(const KernelParams& k, int sample_count,
                            uint64_t seed) {
    k.validate();
    SuiteReport rep;
    rep.id = "convexity";
    Rng rng(seed);
    AuditRanges ranges;
    const double slack = 1e-10;

    for (int sample = 0; sample < sample_count; ++sample) {
        double lam = rng.uniform();
        double t = rng.uniform(-ranges.t_max, ranges.t_max);
        double tau = rng.uniform(-ranges.t_max, ranges.t_max);
        double r = rng.uniform(ranges.r_min, ranges.r_max);
        double lhs = eval_F_r(k, lam * t + (1.0 - lam) * tau, r);
        double rhs = lam * eval_F_r(k, t, r) + (1.0 - lam) * eval_F_r(k, tau, r);
        double scale = std::fmax(std::fmax(std::fabs(lhs), std::fabs(rhs)),
                                 1e-300);
        std::ostringstream what;
        what << "convexity sample=" << sample << " lam=" << lam << " t=" << t
             << " tau=" << tau << " r=" << r;
        track(rep, (rhs - lhs) / scale + slack, what.str());
        ++rep.total;

        if (k.family != Family::meanCurvature) continue;

        // helper chain a^2 g(a) <= a G(a) <= 2 Gcal(a), a >= 0
        double a = rng.uniform(0.0, ranges.t_max);
        double ga = eval_helpers(k, a, Helper::g);
        double Ga = eval_helpers(k, a, Helper::G);
        double Gc = eval_helpers(k, a, Helper::Gcal);
        {
            double l = a * a * ga, m1 = a * Ga, u1 = 2.0 * Gc;
            double sc = std::fmax(std::fmax(m1, u1), 1e-300);
            std::ostringstream w1;
            w1 << "chain_lower sample=" << sample << " a=" << a;
            track(rep, (m1 - l) / sc + slack, w1.str());
            ++rep.total;
            std::ostringstream w2;
            w2 << "chain_upper sample=" << sample << " a=" << a;
            track(rep, (u1 - m1) / sc + slack, w2.str());
            ++rep.total;
        }
        {
            // 0 < g(rho) <= 1 on [0, 1]
            double rho = rng.uniform(0.0, 1.0);
            double g = eval_helpers(k, rho, Helper::g);
            std::ostringstream w1;
            w1 << "g_range sample=" << sample << " rho=" << rho;
            track(rep, std::fmin(g, 1.0 + slack - g), w1.str());
            ++rep.total;
        }
        {
            // Gcal(tau) >= c_* (|tau| - 1)
            double tt = rng.uniform(-ranges.t_max, ranges.t_max);
            double Gcv = eval_helpers(k, std::fabs(tt), Helper::Gcal);
            double bound = k.c_star * (std::fabs(tt) - 1.0);
            double sc = std::fmax(std::fmax(std::fabs(Gcv), std::fabs(bound)),
                                  1.0);
            std::ostringstream w1;
            w1 << "gcal_lower sample=" << sample << " tau=" << tt;
            track(rep, (Gcv - bound) / sc + slack, w1.str());
            ++rep.total;
        }
    }
    rep.pass = rep.failures == 0;
    return rep;
}

}  // namespace nle
