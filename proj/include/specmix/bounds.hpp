#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "specmix/coupling.hpp"
#include "specmix/optimize.hpp"

namespace specmix {

// K^{mn}_{ij} = max{ i sqrt(sum_kl A^2), j sqrt(sum_kl B^2) }, keyed (i,j,m,n).
std::map<std::array<int, 4>, double> per_index_K(const CouplingTensors& tensors);

// K = max over indices of K^{mn}_{ij}; with the L2 velocity normalization
// every advection-matrix entry obeys |entry| <= 8 sqrt(2) pi K.
double compute_K(const CouplingTensors& tensors);

// K-hat variant with (k^2+l^2)^{-1} weights inside the sums (the H1
// normalization analogue).
double compute_K_hat(const CouplingTensors& tensors);
std::map<std::array<int, 4>, double> per_index_K_hat(const CouplingTensors& tensors);

// Standard-normal alpha over the M x M modes, beta by linkage, radially
// rescaled onto the constraint ellipsoid.
VelocityCoefficients random_feasible(int max_mode, NormConstraint constraint,
                                     std::uint64_t seed);

struct EntryBoundCheck {
    int trials = 0;
    int violations = 0;
    double observed_max_entry = 0.0;
    double bound = 0.0;          // 8 sqrt(2) pi K (or K-hat)
    double max_ratio = 0.0;      // observed/bound tightness
    std::uint64_t seed = 0;
};

// Assembles A(t) for `trials` random feasible controls and checks every
// entry against the theoretical bound. Violations indicate an
// implementation bug, never an expected outcome.
EntryBoundCheck verify_entry_bounds(const CouplingTensors& tensors, int trials,
                                    NormConstraint constraint, std::uint64_t seed);

struct BoundReport {
    int scalar_modes = 0;
    int velocity_modes = 0;
    double K = 0.0;
    double K_hat = 0.0;
    double bound_l2 = 0.0;   // 8 sqrt(2) pi K
    double bound_h1 = 0.0;   // 8 sqrt(2) pi K_hat
    double observed_max_entry = 0.0;
    std::vector<std::pair<int, double>> growth_samples;      // (N, K(N))
    std::vector<std::pair<int, double>> growth_samples_hat;  // (N, K_hat(N))
    double gamma_fit = 0.0;      // max_N K(N)/N
    double gamma_hat_fit = 0.0;  // max_N K_hat(N)
    std::uint64_t seed = 0;
    int violations = 0;
    std::map<std::array<int, 4>, double> per_index;
};

// Full report: K quantities, entry-bound trials under both constraints, and
// growth samples over growth_N (tensors rebuilt per sample with the same M).
BoundReport make_bound_report(int scalar_modes, int velocity_modes, int trials,
                              std::uint64_t seed,
                              const std::vector<int>& growth_N = {2, 4, 8, 12});

// CSV rows quantity,value.
void write_bounds_csv(std::ostream& os, const BoundReport& report);

}  // namespace specmix
