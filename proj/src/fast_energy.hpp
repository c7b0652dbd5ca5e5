#pragma once
#include <memory>
#include <vector>

#include "energy.hpp"

namespace nle {

// Convolution-based energy/gradient evaluator for the p = 2 pLaplacian kernel
// (quadratic in u, so the pair sums reduce to lattice convolutions done with
// FFTs). Falls back is the direct O(N^2) path in energy.cpp.
class FastEnergy {
public:
    static bool applicable(const KernelParams& k, const QuadratureConfig& q);

    FastEnergy(const GridFunction& u0, const KernelParams& k,
               const Potential& pot, const QuadratureConfig& q);
    ~FastEnergy();
    FastEnergy(const FastEnergy&) = delete;
    FastEnergy& operator=(const FastEnergy&) = delete;

    const std::vector<size_t>& interior() const { return inodes_; }
    // v holds interior values in interior() order; exterior stays fixed at u0
    double eval(const std::vector<double>& v, std::vector<double>* grad);
    EnergyBreakdown breakdown(const std::vector<double>& v);
    GridFunction assemble(const std::vector<double>& v) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<size_t> inodes_;
};

}  // namespace nle
