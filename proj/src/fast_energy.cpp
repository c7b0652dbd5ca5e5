#include "fast_energy.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "util.hpp"

namespace nle {

namespace {

// complex-to-complex FFT convolution engine on an M (or M x M) padded lattice;
// packing two real inputs as re + i*im convolves both against the (real)
// kernel in a single transform pair
struct Conv {
    int n = 1, M = 0;
    size_t size = 0;
    fftw_complex* buf = nullptr;
    fftw_complex* spec = nullptr;
    fftw_complex* kernel = nullptr;  // spectrum of the real kernel
    fftw_plan fwd = nullptr, bwd = nullptr;

    void init(int n_, int M_) {
        n = n_;
        M = M_;
        size = n == 1 ? M : static_cast<size_t>(M) * M;
        buf = fftw_alloc_complex(size);
        spec = fftw_alloc_complex(size);
        kernel = fftw_alloc_complex(size);
        if (n == 1) {
            fwd = fftw_plan_dft_1d(M, buf, spec, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_1d(M, spec, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            fwd = fftw_plan_dft_2d(M, M, buf, spec, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_2d(M, M, spec, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
    }
    void set_kernel() {  // buf (real part; imag zero) -> kernel spectrum
        fftw_execute(fwd);
        std::memcpy(kernel, spec, sizeof(fftw_complex) * size);
    }
    // buf -> buf = kernel * buf, normalized; linear in the complex input, so
    // real and imaginary parts are convolved independently
    void convolve() {
        fftw_execute(fwd);
        double scale = 1.0 / static_cast<double>(size);
        for (size_t i = 0; i < size; ++i) {
            double re = spec[i][0] * kernel[i][0] - spec[i][1] * kernel[i][1];
            double im = spec[i][0] * kernel[i][1] + spec[i][1] * kernel[i][0];
            spec[i][0] = re * scale;
            spec[i][1] = im * scale;
        }
        fftw_execute(bwd);
    }
    void destroy() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        fftw_free(buf);
        fftw_free(spec);
        fftw_free(kernel);
    }
};

}  // namespace

struct FastEnergy::Impl {
    Domain dom;
    KernelParams k;
    Potential pot;
    QuadratureConfig q;
    int N = 0, M = 0;
    double h2n = 0, hn = 0;
    std::vector<double> u0;       // full field (exterior authoritative)
    std::vector<char> interior;   // per box node
    std::vector<double> rowsum, rowsumI;
    TailTerms tail;
    Conv conv;
    std::vector<double> field;    // assembled full field scratch
    std::vector<double> cu, cuI;  // conv(u), conv(interior-masked u)

    // pack u (real part) and interior-masked u (imaginary part)
    void pad_in(const std::vector<double>& grid) {
        std::memset(conv.buf, 0, sizeof(fftw_complex) * conv.size);
        if (dom.n == 1) {
            for (int i = 0; i < N; ++i) {
                conv.buf[i][0] = grid[i];
                conv.buf[i][1] = interior[i] ? grid[i] : 0.0;
            }
        } else {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    size_t g = static_cast<size_t>(i) * N + j;
                    size_t b = static_cast<size_t>(i) * M + j;
                    conv.buf[b][0] = grid[g];
                    conv.buf[b][1] = interior[g] ? grid[g] : 0.0;
                }
        }
    }
    void take_out() {
        cu.resize(u0.size());
        cuI.resize(u0.size());
        if (dom.n == 1) {
            for (int i = 0; i < N; ++i) {
                cu[i] = conv.buf[i][0];
                cuI[i] = conv.buf[i][1];
            }
        } else {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    size_t g = static_cast<size_t>(i) * N + j;
                    size_t b = static_cast<size_t>(i) * M + j;
                    cu[g] = conv.buf[b][0];
                    cuI[g] = conv.buf[b][1];
                }
        }
    }
};

bool FastEnergy::applicable(const KernelParams& k, const QuadratureConfig& q) {
    return k.family == Family::pLaplacian && k.p == 2.0 &&
           q.self_pair == SelfPairPolicy::exclude;
}

FastEnergy::FastEnergy(const GridFunction& u0, const KernelParams& k,
                       const Potential& pot, const QuadratureConfig& q)
    : impl_(new Impl) {
    if (!applicable(k, q))
        throw std::invalid_argument("FastEnergy: needs pLaplacian p=2, self pairs excluded");
    u0.dom.validate();
    Impl& im = *impl_;
    im.dom = u0.dom;
    im.k = k;
    im.pot = pot;
    im.q = q;
    im.N = im.dom.cells_per_axis();
    im.M = 2 * im.N;
    im.h2n = std::pow(im.dom.h, 2.0 * im.dom.n);
    im.hn = std::pow(im.dom.h, im.dom.n);
    im.u0 = u0.values;

    inodes_ = interior_nodes(u0);
    im.interior.assign(u0.values.size(), 0);
    for (size_t f : inodes_) im.interior[f] = 1;

    im.conv.init(im.dom.n, im.M);

    // kernel over wrapped offsets, |offset|^{-(n+sp)}, zero self weight
    double expo = -(im.dom.n + k.s * k.p);
    std::memset(im.conv.buf, 0, sizeof(fftw_complex) * im.conv.size);
    auto off = [&](int a) { return a <= im.M / 2 ? a : a - im.M; };
    if (im.dom.n == 1) {
        for (int a = 0; a < im.M; ++a) {
            int oa = off(a);
            if (oa == 0) continue;
            im.conv.buf[a][0] = std::pow(std::fabs(oa) * im.dom.h, expo);
        }
    } else {
        for (int a = 0; a < im.M; ++a)
            for (int b = 0; b < im.M; ++b) {
                int oa = off(a), ob = off(b);
                if (oa == 0 && ob == 0) continue;
                double r = std::hypot(oa * im.dom.h, ob * im.dom.h);
                im.conv.buf[static_cast<size_t>(a) * im.M + b][0] =
                    std::pow(r, expo);
            }
    }
    im.conv.set_kernel();

    // row sums against all box nodes / interior nodes only, one packed pass
    std::vector<double> ones(u0.values.size(), 1.0);
    im.pad_in(ones);
    im.conv.convolve();
    im.take_out();
    im.rowsum = im.cu;
    im.rowsumI = im.cuI;

    im.tail = build_tail(u0, k, q);
    im.field = u0.values;
}

FastEnergy::~FastEnergy() { impl_->conv.destroy(); }

GridFunction FastEnergy::assemble(const std::vector<double>& v) const {
    GridFunction g;
    g.dom = impl_->dom;
    g.values = impl_->u0;
    g.farfield = FarField::none();  // caller keeps the original far field
    for (size_t a = 0; a < inodes_.size(); ++a) g.values[inodes_[a]] = v[a];
    return g;
}

double FastEnergy::eval(const std::vector<double>& v, std::vector<double>* grad) {
    Impl& im = *impl_;
    if (v.size() != inodes_.size())
        throw std::invalid_argument("FastEnergy::eval: bad size");
    im.field = im.u0;
    for (size_t a = 0; a < inodes_.size(); ++a) im.field[inodes_[a]] = v[a];

    im.pad_in(im.field);
    im.conv.convolve();
    im.take_out();

    // with F = t^2 w / 2 and rowsumI_j = sum_{i interior} w(i-j):
    //   sum_int A_i = sum_int u_i^2 rowsum_i - 2 sum_int u_i cu_i
    //                 + sum_all u_j^2 rowsumI_j
    //   sum_int B_i = 2 (sum_int u_i^2 rowsumI_i - sum_int u_i cuI_i)
    // and E_pairs = h^2n (sum A - sum B / 2) over interior rows
    Kahan acc;
    for (size_t f : inodes_) {
        double ui = im.field[f];
        acc.add(im.h2n * (ui * ui * (im.rowsum[f] - im.rowsumI[f]) -
                          2.0 * ui * im.cu[f] + ui * im.cuI[f]));
    }
    Kahan outer;
    for (size_t j = 0; j < im.field.size(); ++j) {
        double uj = im.field[j];
        outer.add(im.h2n * uj * uj * im.rowsumI[j]);
    }
    double E = acc.sum + outer.sum;
    Kahan rest;
    for (size_t a = 0; a < inodes_.size(); ++a) {
        double ui = im.field[inodes_[a]];
        if (!im.tail.empty()) rest.add(2.0 * im.hn * im.tail.energy(im.k, ui, a));
        rest.add(eval_W(im.pot, ui) * im.hn);
    }
    E += rest.sum;

    if (grad) {
        grad->resize(inodes_.size());
        for (size_t a = 0; a < inodes_.size(); ++a) {
            size_t f = inodes_[a];
            double ui = im.field[f];
            // dF/dt = t w for p = 2; both pair orderings double the term
            double g = 2.0 * im.h2n * (ui * im.rowsum[f] - im.cu[f]);
            if (!im.tail.empty())
                g += 2.0 * im.hn * im.tail.denergy(im.k, ui, a);
            g += im.hn * eval_dW(im.pot, ui);
            (*grad)[a] = g;
        }
    }
    return E;
}

EnergyBreakdown FastEnergy::breakdown(const std::vector<double>& v) {
    Impl& im = *impl_;
    eval(v, nullptr);  // refreshes convolutions for the assembled field
    EnergyBreakdown b;
    Kahan aii, aie, apot;
    for (size_t a = 0; a < inodes_.size(); ++a) {
        size_t f = inodes_[a];
        double ui = im.field[f];
        // B_i = sum over interior partners; A_i - B_i = exterior partners
        double B = 2.0 * (ui * ui * im.rowsumI[f] - ui * im.cuI[f]);
        aii.add(0.5 * im.h2n * B);
        if (!im.tail.empty())
            aie.add(2.0 * im.hn * im.tail.energy(im.k, ui, a));
        apot.add(eval_W(im.pot, ui) * im.hn);
    }
    // sum_int (A_i - B_i) via the same row-sum identities, without per-i A_i
    Kahan ab;
    for (size_t f : inodes_) {
        double ui = im.field[f];
        ab.add(im.h2n * (ui * ui * (im.rowsum[f] - 2.0 * im.rowsumI[f]) -
                         2.0 * ui * (im.cu[f] - im.cuI[f])));
    }
    for (size_t j = 0; j < im.field.size(); ++j) {
        double uj = im.field[j];
        ab.add(im.h2n * uj * uj * im.rowsumI[j]);
    }
    b.interior_interior = aii.sum;
    b.interior_exterior = aie.sum + ab.sum;
    b.potential = apot.sum;
    b.total = b.interior_interior + b.interior_exterior + b.potential;
    return b;
}

}  // namespace nle
