#include "energy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "util.hpp"

namespace nle {

namespace {

// generic accumulator honoring the summation policy
struct Acc {
    explicit Acc(Summation s) : comp(s == Summation::compensated) {}
    bool comp;
    Kahan k;
    double plain = 0.0;
    void add(double v) { comp ? k.add(v) : (void)(plain += v); }
    double value() const { return comp ? k.sum : plain; }
};

double sigma_sphere(int n) {  // surface measure of S^{n-1}
    return n == 1 ? 2.0 : 2.0 * M_PI;
}

// node coordinates for flat index, avoiding re-allocation
void node_of(const Domain& dom, size_t flat, int N, double* x) {
    for (int d = dom.n - 1; d >= 0; --d) {
        x[d] = dom.coord(static_cast<int>(flat % N));
        flat /= N;
    }
}

}  // namespace

std::string EnergyBreakdown::csv_row(double R, double h) const {
    std::ostringstream os;
    os << format_sig17(R) << "," << format_sig17(h) << ","
       << format_sig17(interior_interior) << "," << format_sig17(interior_exterior)
       << "," << format_sig17(potential) << "," << format_sig17(total);
    return os.str();
}

std::vector<size_t> interior_nodes(const GridFunction& u) {
    std::vector<size_t> out;
    double Reff = u.dom.effective_R();
    int N = u.dom.cells_per_axis();
    double x[2];
    for (size_t f = 0; f < u.values.size(); ++f) {
        node_of(u.dom, f, N, x);
        double r = u.dom.n == 1 ? std::fabs(x[0]) : std::hypot(x[0], x[1]);
        if (r < Reff) out.push_back(f);
    }
    return out;
}

double TailTerms::energy(const KernelParams& k, double ui, size_t node) const {
    double e = 0.0;
    size_t nr = region_values.size();
    for (size_t j = 0; j < nr; ++j)
        e += weights[node * nr + j] *
             std::pow(std::fabs(ui - region_values[j]), k.p);
    return e;
}

double TailTerms::denergy(const KernelParams& k, double ui, size_t node) const {
    double e = 0.0;
    size_t nr = region_values.size();
    for (size_t j = 0; j < nr; ++j) {
        double t = ui - region_values[j];
        if (t == 0.0) continue;
        double mag = k.p * std::pow(std::fabs(t), k.p - 1.0);
        e += weights[node * nr + j] * (t > 0 ? mag : -mag);
    }
    return e;
}

TailTerms build_tail(const GridFunction& u, const KernelParams& k,
                     const QuadratureConfig& q) {
    TailTerms tt;
    if (q.tail == TailPolicy::none) return tt;
    if (u.farfield.kind == FarFieldKind::none)
        throw std::invalid_argument(
            "tail policy requires an evaluable far field (or tail_policy none)");

    const Domain& dom = u.dom;
    double sp = k.s * k.p;
    double m = dom.n + sp;
    auto inodes = interior_nodes(u);
    size_t ni = inodes.size();

    bool constant_ff = u.farfield.kind == FarFieldKind::constant;
    if (constant_ff) {
        tt.region_values = {u.farfield.value};
    } else {
        // far field is +-1 a.e. beyond R_box for the 1d profiles; split by the
        // sign of omega . y (surrogate for the finite transition sliver)
        tt.region_values = {u.farfield.eval(dom.R_box + 1.0),
                            u.farfield.eval(-dom.R_box - 1.0)};
    }
    size_t nr = tt.region_values.size();
    tt.weights.assign(ni * nr, 0.0);

    int N = dom.cells_per_axis();
    double x[2];

    if (q.tail == TailPolicy::analytic_constant) {
        // crude radial envelope |x - y| >= |y| / 2:
        // int_{|y|>R_box} (|y|/2)^{-(n+sp)} dy = 2^{n+sp} sigma R_box^{-sp}/sp
        double w = k.c_upper * std::pow(2.0, m) * sigma_sphere(dom.n) *
                   std::pow(dom.R_box, -sp) / sp;
        double per = w / static_cast<double>(nr);
        for (size_t i = 0; i < ni; ++i)
            for (size_t j = 0; j < nr; ++j) tt.weights[i * nr + j] = per;
        return tt;
    }

    // quadrature_1d: per-node integral of the kernel envelope c_upper |x-y|^{-(n+sp)}
    // over each far region (exact kernel for the pLaplacian family)
    if (dom.n == 1) {
        for (size_t i = 0; i < ni; ++i) {
            node_of(dom, inodes[i], N, x);
            double right = std::pow(dom.R_box - x[0], -sp) / sp;  // y > R_box
            double left = std::pow(dom.R_box + x[0], -sp) / sp;   // y < -R_box
            if (constant_ff) {
                tt.weights[i] = k.c_upper * (right + left);
            } else {
                // region 0: omega . y > 0
                bool right_pos = u.farfield.omega[0] > 0.0;
                tt.weights[i * 2 + 0] = k.c_upper * (right_pos ? right : left);
                tt.weights[i * 2 + 1] = k.c_upper * (right_pos ? left : right);
            }
        }
    } else {
        // polar quadrature around the origin: r = R_box / v, v in (0,1]
        const int nrad = 48, nang = 128;
        std::vector<double> gl_x, gl_w;
        gauss_legendre(nrad, gl_x, gl_w);
        struct QP { double y0, y1, jac; int region; };
        std::vector<QP> qps;
        qps.reserve(nrad * nang);
        for (int a = 0; a < nrad; ++a) {
            double v = 0.5 * (gl_x[a] + 1.0);
            double wv = 0.5 * gl_w[a];
            double r = dom.R_box / v;
            double jac_r = dom.R_box * dom.R_box / (v * v * v) * wv;
            for (int b = 0; b < nang; ++b) {
                double th = (b + 0.5) * 2.0 * M_PI / nang;
                QP qp;
                qp.y0 = r * std::cos(th);
                qp.y1 = r * std::sin(th);
                qp.jac = jac_r * (2.0 * M_PI / nang);
                if (constant_ff) {
                    qp.region = 0;
                } else {
                    double t = u.farfield.omega[0] * qp.y0 +
                               u.farfield.omega[1] * qp.y1;
                    qp.region = t > 0.0 ? 0 : 1;
                }
                qps.push_back(qp);
            }
        }
        for (size_t i = 0; i < ni; ++i) {
            node_of(dom, inodes[i], N, x);
            double acc[2] = {0.0, 0.0};
            for (const QP& qp : qps) {
                double dx = qp.y0 - x[0], dy = qp.y1 - x[1];
                acc[qp.region] +=
                    qp.jac * std::pow(dx * dx + dy * dy, -0.5 * m);
            }
            for (size_t j = 0; j < nr; ++j)
                tt.weights[i * nr + j] = k.c_upper * acc[j];
        }
    }
    return tt;
}

namespace {

// self-pair midpoint correction: approximate the cell-cell self integral
// assuming locally linear u; precomputed unit-cell constant times |grad u|^p
double self_cell_constant(const KernelParams& k, double h, int n) {
    // int_{cell^2} |e.(x-y)|^p / |x-y|^{n+sp} dxdy via 8^n-point midpoint
    // on the difference variable, diagonal sub-pairs dropped
    double sp = k.s * k.p;
    int M = 8;
    double sub = h / M;
    double acc = 0.0;
    if (n == 1) {
        for (int a = -M + 1; a < M; ++a) {
            if (a == 0) continue;
            double z = a * sub;
            double w = (1.0 - std::fabs(z) / h) * h;  // overlap measure
            acc += std::pow(std::fabs(z), k.p) * std::pow(std::fabs(z), -(1.0 + sp)) * w * sub;
        }
    } else {
        for (int a = -M + 1; a < M; ++a)
            for (int b = -M + 1; b < M; ++b) {
                if (a == 0 && b == 0) continue;
                double zx = a * sub, zy = b * sub;
                double r = std::hypot(zx, zy);
                double w = (1.0 - std::fabs(zx) / h) * (1.0 - std::fabs(zy) / h) * h * h;
                acc += std::pow(std::fabs(zx), k.p) * std::pow(r, -(2.0 + sp)) * w * sub * sub;
            }
    }
    return acc * k.c_upper;
}

}  // namespace

EnergyBreakdown total_energy(const GridFunction& u, const KernelParams& k,
                             const Potential& pot, const QuadratureConfig& q) {
    u.dom.validate();
    k.validate();
    const Domain& dom = u.dom;
    int N = dom.cells_per_axis();
    size_t total = u.values.size();
    double Reff = dom.effective_R();
    double h2n = std::pow(dom.h, 2.0 * dom.n);
    double hn = std::pow(dom.h, dom.n);

    std::vector<char> interior(total);
    std::vector<double> xs(total), ys(dom.n == 2 ? total : 0);
    {
        double x[2];
        for (size_t f = 0; f < total; ++f) {
            node_of(dom, f, N, x);
            xs[f] = x[0];
            if (dom.n == 2) ys[f] = x[1];
            double r = dom.n == 1 ? std::fabs(x[0]) : std::hypot(x[0], x[1]);
            interior[f] = r < Reff ? 1 : 0;
        }
    }

    Acc aii(q.summation), aie(q.summation), apot(q.summation);
    for (size_t i = 0; i < total; ++i) {
        if (!interior[i]) continue;
        for (size_t j = 0; j < total; ++j) {
            if (j == i) continue;
            double dx = xs[i] - xs[j];
            double r = dom.n == 1 ? std::fabs(dx) : std::hypot(dx, ys[i] - ys[j]);
            double F = eval_F_r(k, u.values[i] - u.values[j], r);
            if (interior[j]) {
                aii.add(F * h2n);  // ordered pairs: both orderings accumulate
            } else {
                aie.add(2.0 * F * h2n);
            }
        }
        apot.add(eval_W(pot, u.values[i]) * hn);
    }

    if (q.self_pair == SelfPairPolicy::midpoint_correction) {
        double cc = self_cell_constant(k, dom.h, dom.n);
        // |grad u| estimated by one-sided differences along the first axis
        for (size_t i = 0; i < total; ++i) {
            if (!interior[i]) continue;
            size_t stride = dom.n == 1 ? 1 : static_cast<size_t>(N);
            double g = i + stride < total
                           ? (u.values[i + stride] - u.values[i]) / dom.h
                           : 0.0;
            aii.add(cc * std::pow(std::fabs(g), k.p));
        }
    }

    TailTerms tt = build_tail(u, k, q);
    if (!tt.empty()) {
        auto inodes = interior_nodes(u);
        for (size_t ii = 0; ii < inodes.size(); ++ii)
            aie.add(2.0 * hn * tt.energy(k, u.values[inodes[ii]], ii));
    }

    EnergyBreakdown b;
    b.interior_interior = aii.value();
    b.interior_exterior = aie.value();
    b.potential = apot.value();
    b.total = b.interior_interior + b.interior_exterior + b.potential;
    return b;
}

double gagliardo_seminorm(const GridFunction& u, double region_R,
                          const KernelParams& k) {
    const Domain& dom = u.dom;
    if (region_R > dom.R_box + 1e-12)
        throw std::invalid_argument("gagliardo_seminorm: region exceeds R_box");
    int N = dom.cells_per_axis();
    size_t total = u.values.size();
    double sp = k.s * k.p;
    double h2n = std::pow(dom.h, 2.0 * dom.n);
    std::vector<size_t> sel;
    std::vector<double> xs, ys;
    double x[2];
    for (size_t f = 0; f < total; ++f) {
        node_of(dom, f, N, x);
        double r = dom.n == 1 ? std::fabs(x[0]) : std::hypot(x[0], x[1]);
        if (r < region_R) {
            sel.push_back(f);
            xs.push_back(x[0]);
            if (dom.n == 2) ys.push_back(x[1]);
        }
    }
    Kahan acc;
    for (size_t a = 0; a < sel.size(); ++a)
        for (size_t b = 0; b < sel.size(); ++b) {
            if (a == b) continue;
            double dx = xs[a] - xs[b];
            double r = dom.n == 1 ? std::fabs(dx) : std::hypot(dx, ys[a] - ys[b]);
            double t = u.values[sel[a]] - u.values[sel[b]];
            acc.add(std::pow(std::fabs(t), k.p) * std::pow(r, -(dom.n + sp)) * h2n);
        }
    return std::pow(acc.sum, 1.0 / k.p);
}

double exterior_seminorm(const GridFunction& u, const KernelParams& k) {
    const Domain& dom = u.dom;
    if (dom.R_box < 2.0 * dom.R - 1e-12)
        throw std::invalid_argument("exterior_seminorm: needs R_box >= 2R");
    int N = dom.cells_per_axis();
    size_t total = u.values.size();
    double Reff = dom.effective_R();
    double sp = k.s * k.p;
    double h2n = std::pow(dom.h, 2.0 * dom.n);
    std::vector<size_t> in, an;  // ball, annulus B_2R \ B_R
    std::vector<double> xin, yin, xan, yan;
    double x[2];
    for (size_t f = 0; f < total; ++f) {
        node_of(dom, f, N, x);
        double r = dom.n == 1 ? std::fabs(x[0]) : std::hypot(x[0], x[1]);
        if (r < Reff) {
            in.push_back(f); xin.push_back(x[0]);
            if (dom.n == 2) yin.push_back(x[1]);
        } else if (r < 2.0 * dom.R) {
            an.push_back(f); xan.push_back(x[0]);
            if (dom.n == 2) yan.push_back(x[1]);
        }
    }
    Kahan acc;
    for (size_t a = 0; a < in.size(); ++a)
        for (size_t b = 0; b < an.size(); ++b) {
            double dx = xin[a] - xan[b];
            double r = dom.n == 1 ? std::fabs(dx) : std::hypot(dx, yin[a] - yan[b]);
            double t = u.values[in[a]] - u.values[an[b]];
            acc.add(std::pow(std::fabs(t), k.p) * std::pow(r, -(dom.n + sp)) * h2n);
        }
    return std::pow(acc.sum, 1.0 / k.p);
}

std::vector<double> gradient(const GridFunction& u, const KernelParams& k,
                             const Potential& pot, const QuadratureConfig& q) {
    const Domain& dom = u.dom;
    int N = dom.cells_per_axis();
    size_t total = u.values.size();
    double hn = std::pow(dom.h, dom.n);
    auto inodes = interior_nodes(u);
    std::vector<double> xs(total), ys(dom.n == 2 ? total : 0);
    double x[2];
    for (size_t f = 0; f < total; ++f) {
        node_of(dom, f, N, x);
        xs[f] = x[0];
        if (dom.n == 2) ys[f] = x[1];
    }
    TailTerms tt = build_tail(u, k, q);
    std::vector<double> g(inodes.size());
    for (size_t a = 0; a < inodes.size(); ++a) {
        size_t i = inodes[a];
        Kahan acc;
        for (size_t j = 0; j < total; ++j) {
            if (j == i) continue;
            double dx = xs[i] - xs[j];
            double r = dom.n == 1 ? std::fabs(dx) : std::hypot(dx, ys[i] - ys[j]);
            acc.add(eval_dF_dt_r(k, u.values[i] - u.values[j], r));
        }
        double v = 2.0 * hn * acc.sum;
        if (!tt.empty()) v += 2.0 * tt.denergy(k, u.values[i], a);
        v += eval_dW(pot, u.values[i]);
        g[a] = hn * v;
    }
    return g;
}

}  // namespace nle
