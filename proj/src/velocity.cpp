#include "specmix/velocity.hpp"

#include <cmath>

#include "specmix/errors.hpp"

namespace specmix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

VelocityCoefficients VelocityCoefficients::linked_from_alpha(const Eigen::MatrixXd& alpha) {
    if (alpha.rows() != alpha.cols())
        throw DimensionMismatch("VelocityCoefficients: alpha must be square");
    VelocityCoefficients vel(static_cast<int>(alpha.rows()));
    vel.alpha_ = alpha;
    for (int k = 1; k <= vel.max_mode(); ++k)
        for (int l = 1; l <= vel.max_mode(); ++l)
            vel.beta_(k - 1, l - 1) = -(static_cast<double>(k) / l) * alpha(k - 1, l - 1);
    return vel;
}

VelocityCoefficients VelocityCoefficients::from_packed_alpha(const Eigen::VectorXd& packed,
                                                             int max_mode) {
    if (packed.size() != static_cast<Eigen::Index>(max_mode) * max_mode)
        throw DimensionMismatch("VelocityCoefficients: packed alpha has wrong length");
    Eigen::MatrixXd alpha(max_mode, max_mode);
    for (int k = 0; k < max_mode; ++k)
        for (int l = 0; l < max_mode; ++l) alpha(k, l) = packed(k * max_mode + l);
    return linked_from_alpha(alpha);
}

Eigen::VectorXd VelocityCoefficients::packed_alpha() const {
    const int M = max_mode();
    Eigen::VectorXd packed(M * M);
    for (int k = 0; k < M; ++k)
        for (int l = 0; l < M; ++l) packed(k * M + l) = alpha_(k, l);
    return packed;
}

double VelocityCoefficients::linkage_residual() const {
    double worst = 0.0;
    for (int k = 1; k <= max_mode(); ++k)
        for (int l = 1; l <= max_mode(); ++l)
            worst = std::max(worst, std::abs(k * alpha(k, l) + l * beta(k, l)));
    return worst;
}

double VelocityCoefficients::evaluate_v1(double x, double y) const {
    double v = 0.0;
    for (int k = 1; k <= max_mode(); ++k)
        for (int l = 1; l <= max_mode(); ++l)
            v += alpha(k, l) * std::sin(k * kPi * x) * std::cos(l * kPi * y);
    return v;
}

double VelocityCoefficients::evaluate_v2(double x, double y) const {
    double v = 0.0;
    for (int k = 1; k <= max_mode(); ++k)
        for (int l = 1; l <= max_mode(); ++l)
            v += beta(k, l) * std::cos(k * kPi * x) * std::sin(l * kPi * y);
    return v;
}

VelocityNorms velocity_norms(const VelocityCoefficients& vel) {
    double l2 = 0.0;
    double h1 = 0.0;
    for (int k = 1; k <= vel.max_mode(); ++k)
        for (int l = 1; l <= vel.max_mode(); ++l) {
            const double sq = vel.alpha(k, l) * vel.alpha(k, l) + vel.beta(k, l) * vel.beta(k, l);
            l2 += sq;
            h1 += (static_cast<double>(k) * k + static_cast<double>(l) * l) * sq;
        }
    return {0.25 * l2, 0.25 * kPi * kPi * h1};
}

}  // namespace specmix
