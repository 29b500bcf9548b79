#include "specmix/bounds.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "specmix/csv.hpp"
#include "specmix/errors.hpp"
#include "specmix/operator.hpp"

namespace specmix {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Per-trial stream seeds derived from the master seed (splitmix64), so trial
// order never matters.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// sum_kl of value^2, optionally weighted by (k^2+l^2)^{-1}, grouped by the
// outer indices (i,j,m,n).
std::map<std::array<int, 4>, double> grouped_square_sums(
    const std::map<TensorIndex, double>& entries, bool inverse_weight) {
    std::map<std::array<int, 4>, double> sums;
    for (const auto& [key, value] : entries) {
        const auto [m, n, k, l, i, j] = key;
        const double w =
            inverse_weight ? 1.0 / (static_cast<double>(k) * k + static_cast<double>(l) * l) : 1.0;
        sums[{i, j, m, n}] += w * value * value;
    }
    return sums;
}

std::map<std::array<int, 4>, double> per_index_max(const CouplingTensors& tensors,
                                                   bool inverse_weight) {
    const auto a_sums = grouped_square_sums(tensors.A(), inverse_weight);
    const auto b_sums = grouped_square_sums(tensors.B(), inverse_weight);
    std::map<std::array<int, 4>, double> result;
    const int N = tensors.scalar_modes();
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int m = 1; m <= N; ++m)
                for (int n = 1; n <= N; ++n) {
                    const std::array<int, 4> key{i, j, m, n};
                    const auto a_it = a_sums.find(key);
                    const auto b_it = b_sums.find(key);
                    const double fa = a_it == a_sums.end() ? 0.0 : i * std::sqrt(a_it->second);
                    const double fb = b_it == b_sums.end() ? 0.0 : j * std::sqrt(b_it->second);
                    result[key] = std::max(fa, fb);
                }
    return result;
}

double max_over(const std::map<std::array<int, 4>, double>& values) {
    double worst = 0.0;
    for (const auto& [key, value] : values) worst = std::max(worst, value);
    return worst;
}

}  // namespace

std::map<std::array<int, 4>, double> per_index_K(const CouplingTensors& tensors) {
    return per_index_max(tensors, false);
}

std::map<std::array<int, 4>, double> per_index_K_hat(const CouplingTensors& tensors) {
    return per_index_max(tensors, true);
}

double compute_K(const CouplingTensors& tensors) { return max_over(per_index_K(tensors)); }

double compute_K_hat(const CouplingTensors& tensors) { return max_over(per_index_K_hat(tensors)); }

VelocityCoefficients random_feasible(int max_mode, NormConstraint constraint,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd alpha(max_mode * max_mode);
    double value = 0.0;
    do {
        for (Eigen::Index c = 0; c < alpha.size(); ++c) alpha(c) = normal(rng);
        value = alpha.squaredNorm();
    } while (value == 0.0);
    return project_feasible(alpha, max_mode, constraint);
}

EntryBoundCheck verify_entry_bounds(const CouplingTensors& tensors, int trials,
                                    NormConstraint constraint, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("verify_entry_bounds: trials must be >= 1");
    const double K = constraint == NormConstraint::L2Unit ? compute_K(tensors)
                                                          : compute_K_hat(tensors);
    EntryBoundCheck check;
    check.trials = trials;
    check.seed = seed;
    check.bound = 8.0 * std::sqrt(2.0) * kPi * K;
    for (int trial = 0; trial < trials; ++trial) {
        const VelocityCoefficients vel =
            random_feasible(tensors.velocity_modes(), constraint, seed + trial);
        const Eigen::MatrixXd advection = assemble_advection(tensors, vel);
        const double max_entry = advection.cwiseAbs().maxCoeff();
        check.observed_max_entry = std::max(check.observed_max_entry, max_entry);
        if (max_entry > check.bound) ++check.violations;
    }
    check.max_ratio = check.bound > 0.0 ? check.observed_max_entry / check.bound : 0.0;
    return check;
}

BoundReport make_bound_report(int scalar_modes, int velocity_modes, int trials,
                              std::uint64_t seed, const std::vector<int>& growth_N) {
    const CouplingTensors tensors = build_coupling_tensors(scalar_modes, velocity_modes);
    BoundReport report;
    report.scalar_modes = scalar_modes;
    report.velocity_modes = velocity_modes;
    report.seed = seed;
    report.per_index = per_index_K(tensors);
    report.K = max_over(report.per_index);
    report.K_hat = compute_K_hat(tensors);
    report.bound_l2 = 8.0 * std::sqrt(2.0) * kPi * report.K;
    report.bound_h1 = 8.0 * std::sqrt(2.0) * kPi * report.K_hat;

    const EntryBoundCheck l2 = verify_entry_bounds(tensors, trials, NormConstraint::L2Unit, seed);
    const EntryBoundCheck h1 =
        verify_entry_bounds(tensors, trials, NormConstraint::H1Unit, splitmix64(seed ^ 0x5a5a));
    report.observed_max_entry = std::max(l2.observed_max_entry, h1.observed_max_entry);
    report.violations = l2.violations + h1.violations;

    for (const int n : growth_N) {
        const CouplingTensors t = build_coupling_tensors(n, velocity_modes);
        const double K = compute_K(t);
        const double K_hat = compute_K_hat(t);
        report.growth_samples.emplace_back(n, K);
        report.growth_samples_hat.emplace_back(n, K_hat);
        report.gamma_fit = std::max(report.gamma_fit, K / n);
        report.gamma_hat_fit = std::max(report.gamma_hat_fit, K_hat);
    }
    return report;
}

void write_bounds_csv(std::ostream& os, const BoundReport& report) {
    os << "quantity,value\n";
    os << "K," << format_double(report.K) << '\n';
    os << "K_hat," << format_double(report.K_hat) << '\n';
    os << "bound_l2," << format_double(report.bound_l2) << '\n';
    os << "bound_h1," << format_double(report.bound_h1) << '\n';
    os << "observed_max_entry," << format_double(report.observed_max_entry) << '\n';
    os << "gamma_fit," << format_double(report.gamma_fit) << '\n';
    os << "gamma_hat_fit," << format_double(report.gamma_hat_fit) << '\n';
    os << "violations," << report.violations << '\n';
    os << "seed," << report.seed << '\n';
    for (const auto& [n, K] : report.growth_samples) os << "K_N" << n << ',' << format_double(K) << '\n';
    for (const auto& [n, K] : report.growth_samples_hat)
        os << "K_hat_N" << n << ',' << format_double(K) << '\n';
}

}  // namespace specmix
