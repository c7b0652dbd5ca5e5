#pragma once
#include <string>
#include <vector>

#include "energy.hpp"
#include "grid.hpp"

namespace nle {

struct MinimizeConfig {
    int max_iters = 20000;
    double grad_tol = -1.0;  // <= 0 means default 1e-8 * h^n
    double step0 = 1.0;
    double backtrack_factor = 0.5;
    double armijo_c = 1e-4;
    bool use_box = true;
    double box_lo = -1.0, box_hi = 1.0;

    void validate() const;
    double resolved_tol(const Domain& dom) const;
};

struct TraceEntry {
    int iter;
    double energy;
    double grad_norm;  // projected-gradient sup norm
    double step;
};

enum class SolveStatus { converged, max_iters, stalled };

struct MinimizeResult {
    GridFunction u;
    std::vector<TraceEntry> trace;
    SolveStatus status = SolveStatus::converged;
    double energy = 0.0;
    int evals = 0;
};

// projected gradient descent (Barzilai-Borwein step with monotone Armijo
// backtracking) over interior nodes; exterior data fixed bit-for-bit
MinimizeResult minimize(const GridFunction& u0, const KernelParams& k,
                        const Potential& pot, const MinimizeConfig& cfg = {},
                        const QuadratureConfig& q = {});

std::string trace_csv(const std::vector<TraceEntry>& trace);

// [E(min) + E(max)] - [E(u) + E(v)]; <= quadrature slack under convexity
double submodularity_gap(const GridFunction& u, const GridFunction& v,
                         const KernelParams& k, const Potential& pot,
                         const QuadratureConfig& q = {});

struct ComparisonReport {
    double min_difference = 0.0;     // min over nodes of u1* - u2*
    double violation_measure = 0.0;  // lattice measure where u2* - u1* > tol
    double tol = 1e-6;
    MinimizeResult r1, r2;
};

// phi1 >= phi2 pointwise outside the ball; minimizes from both and compares
ComparisonReport ordered_data_comparison(const GridFunction& phi1,
                                         const GridFunction& phi2,
                                         const KernelParams& k,
                                         const Potential& pot,
                                         const MinimizeConfig& cfg = {},
                                         const QuadratureConfig& q = {});

}  // namespace nle
