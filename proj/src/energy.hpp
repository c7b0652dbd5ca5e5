#pragma once
#include <utility>
#include <vector>

#include "grid.hpp"
#include "kernels.hpp"
#include "potentials.hpp"

namespace nle {

enum class SelfPairPolicy { exclude, midpoint_correction };
enum class TailPolicy { analytic_constant, quadrature_1d, none };
enum class Summation { fixed_order, compensated };

struct QuadratureConfig {
    SelfPairPolicy self_pair = SelfPairPolicy::exclude;
    TailPolicy tail = TailPolicy::analytic_constant;
    Summation summation = Summation::compensated;
};

struct EnergyBreakdown {
    double interior_interior = 0.0;  // u(B_R, B_R)
    double interior_exterior = 0.0;  // 2 u(B_R, CB_R), incl. tail beyond R_box
    double potential = 0.0;
    double total = 0.0;
    std::string csv_row(double R, double h) const;
};

// Far-field tail beyond R_box, reduced to per-node (weight, value) terms:
// tail energy at node i = sum_k F_env(u_i - value_k) with weight_k carrying the
// integrated kernel measure. For pLaplacian under quadrature_1d this is the
// exact kernel integral; analytic_constant uses the |x-y| >= |y|/2 envelope.
struct TailTerms {
    // regions.size() values; weights[node * regions.size() + k]
    std::vector<double> region_values;
    std::vector<double> weights;     // per interior node x region
    double energy(const KernelParams& k, double ui, size_t node) const;
    double denergy(const KernelParams& k, double ui, size_t node) const;
    bool empty() const { return region_values.empty(); }
};

// interior node list (flat lattice indices), shared by energy and gradient
std::vector<size_t> interior_nodes(const GridFunction& u);

TailTerms build_tail(const GridFunction& u, const KernelParams& k,
                     const QuadratureConfig& q);

EnergyBreakdown total_energy(const GridFunction& u, const KernelParams& k,
                             const Potential& pot, const QuadratureConfig& q = {});

double gagliardo_seminorm(const GridFunction& u, double region_R,
                          const KernelParams& k);

double exterior_seminorm(const GridFunction& u, const KernelParams& k);

// first-variation vector, one component per interior node (in interior_nodes order)
std::vector<double> gradient(const GridFunction& u, const KernelParams& k,
                             const Potential& pot, const QuadratureConfig& q = {});

}  // namespace nle
