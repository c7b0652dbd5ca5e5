#pragma once
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace nle {

struct Domain {
    int n = 1;            // dimension, 1 or 2
    double R = 1.0;       // minimization ball radius
    double R_box = 2.0;   // lattice truncation radius, >= 2R
    double h = 0.25;      // grid spacing

    void validate() const;       // throws std::invalid_argument
    int cells_per_axis() const;  // 2 * round(R_box / h)
    // cell-center coordinate along one axis, i in [0, cells_per_axis)
    double coord(int i) const {
        return (i - 0.5 * cells_per_axis() + 0.5) * h;
    }
    // effective ball radius after the tie-breaking nudge (see ball_radius.cpp note)
    double effective_R() const;
    bool same_as(const Domain& o) const {
        return n == o.n && R == o.R && R_box == o.R_box && h == o.h;
    }
};

enum class FarFieldKind { constant, profile1d, none };
// profile shape along omega for profile1d far fields
enum class FarProfile { ramp, tanh_layer, sign_layer, custom };

struct FarField {
    FarFieldKind kind = FarFieldKind::none;
    double value = 0.0;                      // constant
    std::array<double, 2> omega = {1.0, 0.0};
    FarProfile profile = FarProfile::ramp;
    double width = 1.0;                      // tanh_layer
    std::function<double(double)> u0;        // custom profile along omega

    static FarField none() { return {}; }
    static FarField constant(double c) {
        FarField f; f.kind = FarFieldKind::constant; f.value = c; return f;
    }
    static FarField ramp(std::array<double, 2> omega) {
        FarField f; f.kind = FarFieldKind::profile1d; f.omega = omega;
        f.profile = FarProfile::ramp; return f;
    }
    static FarField sign_layer(std::array<double, 2> omega) {
        FarField f; f.kind = FarFieldKind::profile1d; f.omega = omega;
        f.profile = FarProfile::sign_layer; return f;
    }
    // value at coordinate t = omega . x (profile1d) or anywhere (constant)
    double eval(double t) const;
    bool evaluable() const { return kind != FarFieldKind::none; }
};

struct GridFunction {
    Domain dom;
    std::vector<double> values;  // row-major over the lattice
    FarField farfield;

    size_t size() const { return values.size(); }
    double& at(const std::vector<int>& idx);
    double at(const std::vector<int>& idx) const;
    std::vector<double> node(size_t flat) const;  // coordinates of flat index
    double radius(size_t flat) const;
    bool interior(size_t flat) const;  // |x| < R (strict, after nudge)

    std::string serialize() const;               // text format, 17 sig digits
    static GridFunction deserialize(const std::string& text);
};

struct Profile {
    enum Kind { constant, ramp, layer_tanh, psi_aux, dist_aux, custom } kind;
    double c = 0.0;                           // constant
    std::array<double, 2> omega = {1.0, 0.0}; // ramp / layer_tanh
    double width = 1.0;                       // layer_tanh
    double R = 1.0;                           // psi_aux / dist_aux
    std::function<double(const std::vector<double>&)> fn;  // custom

    static Profile make_constant(double c);
    static Profile make_ramp(std::array<double, 2> omega);
    static Profile make_layer_tanh(std::array<double, 2> omega, double width);
    static Profile make_psi_aux(double R);
    static Profile make_dist_aux(double R);
    static Profile make_custom(std::function<double(const std::vector<double>&)> fn);
    double eval(const std::vector<double>& x) const;
};

GridFunction sample_profile(const Domain& dom, const Profile& profile,
                            FarField farfield = FarField::none());

// pointwise min / max pair (Lemma-10 style combination)
std::pair<GridFunction, GridFunction> min_max_combine(const GridFunction& u,
                                                      const GridFunction& v);

// exact lattice translation; shift must be an integer multiple of h per axis
GridFunction translate(const GridFunction& u, const std::vector<double>& shift);

}  // namespace nle
