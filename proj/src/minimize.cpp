#include "minimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fast_energy.hpp"
#include "util.hpp"

namespace nle {

void MinimizeConfig::validate() const {
    if (max_iters < 1) throw std::invalid_argument("minimize: max_iters >= 1");
    if (!(step0 > 0.0)) throw std::invalid_argument("minimize: step0 > 0");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
        throw std::invalid_argument("minimize: backtrack_factor in (0,1)");
    if (!(armijo_c > 0.0 && armijo_c < 1.0))
        throw std::invalid_argument("minimize: armijo_c in (0,1)");
    if (use_box && !(box_lo < box_hi))
        throw std::invalid_argument("minimize: box bounds inverted");
}

double MinimizeConfig::resolved_tol(const Domain& dom) const {
    return grad_tol > 0.0 ? grad_tol : 1e-8 * std::pow(dom.h, dom.n);
}

namespace {

// unified energy/gradient callback over interior values
struct Objective {
    const GridFunction* u0;
    const KernelParams* k;
    const Potential* pot;
    QuadratureConfig q;
    std::unique_ptr<FastEnergy> fast;
    std::vector<size_t> inodes;
    GridFunction work;

    Objective(const GridFunction& u, const KernelParams& kk,
              const Potential& pp, const QuadratureConfig& qq)
        : u0(&u), k(&kk), pot(&pp), q(qq) {
        if (FastEnergy::applicable(kk, qq)) {
            fast.reset(new FastEnergy(u, kk, pp, qq));
            inodes = fast->interior();
        } else {
            inodes = interior_nodes(u);
        }
        work = u;
    }
    double eval(const std::vector<double>& v, std::vector<double>* g) {
        if (fast) return fast->eval(v, g);
        for (size_t a = 0; a < inodes.size(); ++a) work.values[inodes[a]] = v[a];
        EnergyBreakdown b = total_energy(work, *k, *pot, q);
        if (g) *g = gradient(work, *k, *pot, q);
        return b.total;
    }
};

}  // namespace

MinimizeResult minimize(const GridFunction& u0, const KernelParams& k,
                        const Potential& pot, const MinimizeConfig& cfg,
                        const QuadratureConfig& q) {
    cfg.validate();
    u0.dom.validate();
    Objective obj(u0, k, pot, q);
    size_t nv = obj.inodes.size();
    double tol = cfg.resolved_tol(u0.dom);

    auto clip = [&](double x) {
        return cfg.use_box ? std::min(cfg.box_hi, std::max(cfg.box_lo, x)) : x;
    };

    std::vector<double> v(nv);
    for (size_t a = 0; a < nv; ++a) {
        double val = u0.values[obj.inodes[a]];
        if (cfg.use_box && (val < cfg.box_lo || val > cfg.box_hi))
            throw std::invalid_argument("minimize: u0 violates box bounds");
        v[a] = val;
    }

    MinimizeResult res;
    std::vector<double> g, gn, vn(nv), vprev, gprev;
    double E = obj.eval(v, &g);
    res.evals = 1;
    if (!std::isfinite(E))
        throw std::invalid_argument("minimize: non-finite energy at u0");

    double step = cfg.step0;
    res.status = SolveStatus::max_iters;
    int it = 0, flat = 0;
    for (; it < cfg.max_iters; ++it) {
        double pg = 0.0;
        for (size_t a = 0; a < nv; ++a)
            pg = std::max(pg, std::fabs(v[a] - clip(v[a] - g[a])));
        res.trace.push_back({it, E, pg, step});
        if (pg < tol) {
            res.status = SolveStatus::converged;
            break;
        }
        if (!vprev.empty()) {
            // BB1 step from the last accepted move
            double num = 0.0, den = 0.0;
            for (size_t a = 0; a < nv; ++a) {
                double dv = v[a] - vprev[a], dg = g[a] - gprev[a];
                num += dv * dv;
                den += dv * dg;
            }
            step = den > 1e-300 ? num / den : step * 2.0;
            step = std::min(std::max(step, 1e-12), 1e12);
        }
        double st = step;
        bool accepted = false;
        double En = 0.0;
        for (int half = 0; half < 60; ++half) {
            double decrease = 0.0;
            for (size_t a = 0; a < nv; ++a) {
                vn[a] = clip(v[a] - st * g[a]);
                decrease += g[a] * (v[a] - vn[a]);
            }
            En = obj.eval(vn, &gn);
            ++res.evals;
            if (En <= E - cfg.armijo_c * decrease) {
                accepted = true;
                break;
            }
            st *= cfg.backtrack_factor;
        }
        if (!accepted) {
            res.status = SolveStatus::stalled;
            break;
        }
        // accepted steps that no longer move the energy beyond rounding mean
        // the iterate is at the floating-point progress limit
        flat = En >= E ? flat + 1 : 0;
        vprev = v;
        gprev = g;
        v.swap(vn);
        g.swap(gn);
        E = En;
        step = st;
        if (flat >= 200) {
            ++it;
            res.status = SolveStatus::stalled;
            break;
        }
    }

    res.u = u0;  // exterior (and far field) bit-identical
    for (size_t a = 0; a < nv; ++a) res.u.values[obj.inodes[a]] = v[a];
    res.energy = E;
    return res;
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
    std::ostringstream os;
    os << "iter,energy,grad_norm,step\n";
    for (const auto& t : trace)
        os << t.iter << "," << format_sig17(t.energy) << ","
           << format_sig17(t.grad_norm) << "," << format_sig17(t.step) << "\n";
    return os.str();
}

double submodularity_gap(const GridFunction& u, const GridFunction& v,
                         const KernelParams& k, const Potential& pot,
                         const QuadratureConfig& q) {
    auto [m, M] = min_max_combine(u, v);
    double em = total_energy(m, k, pot, q).total;
    double eM = total_energy(M, k, pot, q).total;
    double eu = total_energy(u, k, pot, q).total;
    double ev = total_energy(v, k, pot, q).total;
    return (em + eM) - (eu + ev);
}

ComparisonReport ordered_data_comparison(const GridFunction& phi1,
                                         const GridFunction& phi2,
                                         const KernelParams& k,
                                         const Potential& pot,
                                         const MinimizeConfig& cfg,
                                         const QuadratureConfig& q) {
    if (!phi1.dom.same_as(phi2.dom))
        throw std::invalid_argument("ordered_data_comparison: mismatched domains");
    for (size_t i = 0; i < phi1.values.size(); ++i)
        if (phi1.values[i] < phi2.values[i] - 1e-12)
            throw std::invalid_argument("ordered_data_comparison: phi1 < phi2 somewhere");
    ComparisonReport rep;
    rep.r1 = minimize(phi1, k, pot, cfg, q);
    rep.r2 = minimize(phi2, k, pot, cfg, q);
    rep.min_difference = 1e300;
    double hn = std::pow(phi1.dom.h, phi1.dom.n);
    for (size_t i = 0; i < phi1.values.size(); ++i) {
        double d = rep.r1.u.values[i] - rep.r2.u.values[i];
        rep.min_difference = std::min(rep.min_difference, d);
        if (-d > rep.tol) rep.violation_measure += hn;
    }
    return rep;
}

}  // namespace nle
