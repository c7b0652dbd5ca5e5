#include "grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "util.hpp"

namespace nle {

void Domain::validate() const {
    if (n != 1 && n != 2) throw std::invalid_argument("domain: n must be 1 or 2");
    if (!(R > 0.0) || !(h > 0.0)) throw std::invalid_argument("domain: R, h must be positive");
    if (R_box < 2.0 * R - 1e-12)
        throw std::invalid_argument("domain: R_box must be >= 2R");
    if (h > R / 4.0 + 1e-12)
        throw std::invalid_argument("domain: h must be <= R/4");
}

int Domain::cells_per_axis() const {
    return 2 * static_cast<int>(std::lround(R_box / h));
}

double Domain::effective_R() const {
    // nudge R if a cell center sits numerically on the ball boundary, so strict
    // membership |x| < R never ties
    int N = cells_per_axis();
    double best = 1e300;
    if (n == 1) {
        for (int i = 0; i < N; ++i)
            best = std::min(best, std::fabs(std::fabs(coord(i)) - R));
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double r = std::hypot(coord(i), coord(j));
                best = std::min(best, std::fabs(r - R));
            }
    }
    return best < 1e-12 ? R + h / 1000.0 : R;
}

double FarField::eval(double t) const {
    switch (kind) {
        case FarFieldKind::none:
            throw std::logic_error("far field 'none' is not evaluable");
        case FarFieldKind::constant:
            return value;
        case FarFieldKind::profile1d:
            switch (profile) {
                case FarProfile::ramp:
                    return std::fmin(1.0, std::fmax(-1.0, t));
                case FarProfile::tanh_layer:
                    return std::tanh(t / width);
                case FarProfile::sign_layer:
                    return t >= 0.0 ? 1.0 : -1.0;
                case FarProfile::custom:
                    if (!u0) throw std::logic_error("custom far field without callable");
                    return u0(t);
            }
    }
    return 0.0;
}

double& GridFunction::at(const std::vector<int>& idx) {
    int N = dom.cells_per_axis();
    size_t flat = 0;
    for (int d = 0; d < dom.n; ++d) flat = flat * N + idx[d];
    return values[flat];
}

double GridFunction::at(const std::vector<int>& idx) const {
    return const_cast<GridFunction*>(this)->at(idx);
}

std::vector<double> GridFunction::node(size_t flat) const {
    int N = dom.cells_per_axis();
    std::vector<double> x(dom.n);
    for (int d = dom.n - 1; d >= 0; --d) {
        x[d] = dom.coord(static_cast<int>(flat % N));
        flat /= N;
    }
    return x;
}

double GridFunction::radius(size_t flat) const {
    auto x = node(flat);
    double q = 0.0;
    for (double v : x) q += v * v;
    return std::sqrt(q);
}

bool GridFunction::interior(size_t flat) const {
    return radius(flat) < dom.effective_R();
}

Profile Profile::make_constant(double c) {
    Profile p; p.kind = constant; p.c = c; return p;
}
Profile Profile::make_ramp(std::array<double, 2> omega) {
    Profile p; p.kind = ramp; p.omega = omega; return p;
}
Profile Profile::make_layer_tanh(std::array<double, 2> omega, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("layer_tanh: width > 0");
    Profile p; p.kind = layer_tanh; p.omega = omega; p.width = width; return p;
}
Profile Profile::make_psi_aux(double R) {
    Profile p; p.kind = psi_aux; p.R = R; return p;
}
Profile Profile::make_dist_aux(double R) {
    Profile p; p.kind = dist_aux; p.R = R; return p;
}
Profile Profile::make_custom(std::function<double(const std::vector<double>&)> fn) {
    if (!fn) throw std::invalid_argument("custom profile needs a callable");
    Profile p; p.kind = custom; p.fn = std::move(fn); return p;
}

double Profile::eval(const std::vector<double>& x) const {
    double r = 0.0;
    for (double v : x) r += v * v;
    r = std::sqrt(r);
    double t = omega[0] * x[0] + (x.size() > 1 ? omega[1] * x[1] : 0.0);
    switch (kind) {
        case constant: return c;
        case ramp: return std::fmin(1.0, std::fmax(-1.0, t));
        case layer_tanh: return std::tanh(t / width);
        case psi_aux:  // -1 + 2 min{(|x| - R - 1)_+, 1}
            return -1.0 + 2.0 * std::fmin(std::fmax(r - R - 1.0, 0.0), 1.0);
        case dist_aux:  // max{R + 1 - |x|, 1}
            return std::fmax(R + 1.0 - r, 1.0);
        case custom: return fn(x);
    }
    return 0.0;
}

GridFunction sample_profile(const Domain& dom, const Profile& profile,
                            FarField farfield) {
    dom.validate();
    GridFunction u;
    u.dom = dom;
    u.farfield = farfield;
    int N = dom.cells_per_axis();
    size_t total = dom.n == 1 ? N : static_cast<size_t>(N) * N;
    u.values.resize(total);
    std::vector<double> x(dom.n);
    for (size_t f = 0; f < total; ++f) {
        size_t rem = f;
        for (int d = dom.n - 1; d >= 0; --d) {
            x[d] = dom.coord(static_cast<int>(rem % N));
            rem /= N;
        }
        u.values[f] = profile.eval(x);
    }
    return u;
}

std::pair<GridFunction, GridFunction> min_max_combine(const GridFunction& u,
                                                      const GridFunction& v) {
    if (!u.dom.same_as(v.dom))
        throw std::invalid_argument("min_max_combine: mismatched domains");
    GridFunction m = u, M = u;
    for (size_t i = 0; i < u.values.size(); ++i) {
        m.values[i] = std::fmin(u.values[i], v.values[i]);
        M.values[i] = std::fmax(u.values[i], v.values[i]);
    }
    // combine far fields pointwise where both are evaluable
    if (u.farfield.kind == FarFieldKind::constant &&
        v.farfield.kind == FarFieldKind::constant) {
        m.farfield = FarField::constant(
            std::fmin(u.farfield.value, v.farfield.value));
        M.farfield = FarField::constant(
            std::fmax(u.farfield.value, v.farfield.value));
    } else if (u.farfield.kind == FarFieldKind::none ||
               v.farfield.kind == FarFieldKind::none) {
        m.farfield = FarField::none();
        M.farfield = FarField::none();
    } else {
        // general pair: keep a custom pointwise combination along a shared direction
        if (u.farfield.kind == FarFieldKind::profile1d &&
            v.farfield.kind == FarFieldKind::profile1d &&
            (u.farfield.omega != v.farfield.omega))
            throw std::invalid_argument(
                "min_max_combine: incompatible far-field directions");
        FarField fu = u.farfield, fv = v.farfield;
        FarField fm, fM;
        fm.kind = fM.kind = FarFieldKind::profile1d;
        fm.omega = fM.omega =
            fu.kind == FarFieldKind::profile1d ? fu.omega : fv.omega;
        fm.profile = fM.profile = FarProfile::custom;
        fm.u0 = [fu, fv](double t) { return std::fmin(fu.eval(t), fv.eval(t)); };
        fM.u0 = [fu, fv](double t) { return std::fmax(fu.eval(t), fv.eval(t)); };
        m.farfield = fm;
        M.farfield = fM;
    }
    return {m, M};
}

GridFunction translate(const GridFunction& u, const std::vector<double>& shift) {
    const Domain& dom = u.dom;
    std::vector<int> steps(dom.n);
    for (int d = 0; d < dom.n; ++d) {
        double k = shift[d] / dom.h;
        double kr = std::round(k);
        if (std::fabs(k - kr) > 1e-9)
            throw std::invalid_argument("translate: shift must be a lattice multiple of h");
        steps[d] = static_cast<int>(kr);
    }
    if (!u.farfield.evaluable()) {
        bool leaves = false;
        for (int d = 0; d < dom.n; ++d) leaves |= steps[d] != 0;
        if (leaves)
            throw std::invalid_argument("translate: needs an evaluable far field");
    }
    GridFunction out = u;
    int N = dom.cells_per_axis();
    auto farfield_at = [&](const std::vector<double>& x) {
        if (u.farfield.kind == FarFieldKind::constant) return u.farfield.value;
        double t = u.farfield.omega[0] * x[0] +
                   (dom.n > 1 ? u.farfield.omega[1] * x[1] : 0.0);
        return u.farfield.eval(t);
    };
    std::vector<int> idx(dom.n), src(dom.n);
    std::vector<double> xsrc(dom.n);
    size_t total = u.values.size();
    for (size_t f = 0; f < total; ++f) {
        size_t rem = f;
        for (int d = dom.n - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rem % N);
            rem /= N;
        }
        bool inside = true;
        for (int d = 0; d < dom.n; ++d) {
            src[d] = idx[d] - steps[d];
            if (src[d] < 0 || src[d] >= N) inside = false;
            xsrc[d] = dom.coord(idx[d]) - shift[d];
        }
        if (inside) {
            size_t sf = 0;
            for (int d = 0; d < dom.n; ++d) sf = sf * N + src[d];
            out.values[f] = u.values[sf];
        } else {
            out.values[f] = farfield_at(xsrc);
        }
    }
    return out;
}

std::string GridFunction::serialize() const {
    std::ostringstream os;
    os << dom.n << " " << format_sig17(dom.R) << " " << format_sig17(dom.R_box)
       << " " << format_sig17(dom.h) << " ";
    switch (farfield.kind) {
        case FarFieldKind::none: os << "none"; break;
        case FarFieldKind::constant:
            os << "constant " << format_sig17(farfield.value);
            break;
        case FarFieldKind::profile1d:
            os << "profile1d " << format_sig17(farfield.omega[0]) << " "
               << format_sig17(farfield.omega[1]) << " ";
            switch (farfield.profile) {
                case FarProfile::ramp: os << "ramp"; break;
                case FarProfile::sign_layer: os << "sign"; break;
                case FarProfile::tanh_layer:
                    os << "tanh " << format_sig17(farfield.width);
                    break;
                case FarProfile::custom:
                    throw std::invalid_argument(
                        "serialize: custom far-field callables are not serializable");
            }
            break;
    }
    os << "\n";
    for (double v : values) os << format_sig17(v) << "\n";
    return os.str();
}

GridFunction GridFunction::deserialize(const std::string& text) {
    std::istringstream is(text);
    GridFunction u;
    std::string kind;
    if (!(is >> u.dom.n >> u.dom.R >> u.dom.R_box >> u.dom.h >> kind))
        throw std::invalid_argument("grid deserialize: bad header");
    if (kind == "none") {
        u.farfield = FarField::none();
    } else if (kind == "constant") {
        double c;
        if (!(is >> c)) throw std::invalid_argument("grid deserialize: bad constant");
        u.farfield = FarField::constant(c);
    } else if (kind == "profile1d") {
        double wx, wy;
        std::string prof;
        if (!(is >> wx >> wy >> prof))
            throw std::invalid_argument("grid deserialize: bad profile1d");
        u.farfield.kind = FarFieldKind::profile1d;
        u.farfield.omega = {wx, wy};
        if (prof == "ramp") u.farfield.profile = FarProfile::ramp;
        else if (prof == "sign") u.farfield.profile = FarProfile::sign_layer;
        else if (prof == "tanh") {
            u.farfield.profile = FarProfile::tanh_layer;
            if (!(is >> u.farfield.width))
                throw std::invalid_argument("grid deserialize: bad tanh width");
        } else throw std::invalid_argument("grid deserialize: unknown profile");
    } else {
        throw std::invalid_argument("grid deserialize: unknown far field");
    }
    u.dom.validate();
    int N = u.dom.cells_per_axis();
    size_t total = u.dom.n == 1 ? N : static_cast<size_t>(N) * N;
    u.values.resize(total);
    for (size_t i = 0; i < total; ++i)
        if (!(is >> u.values[i]))
            throw std::invalid_argument("grid deserialize: short value list");
    return u;
}

}  // namespace nle
