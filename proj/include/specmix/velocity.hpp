#pragma once

#include <Eigen/Core>

namespace specmix {

// Incompressible velocity expansion on [0,1]^2:
//   v1 = sum alpha_kl sin(k pi x) cos(l pi y)
//   v2 = sum beta_kl  cos(k pi x) sin(l pi y),   k,l in [1,M].
// The stream-function linkage k alpha_kl + l beta_kl = 0 makes the field
// divergence-free; both components satisfy v.n = 0 on the boundary.
// Modes with k = 0 or l = 0 are excluded: their basis functions either
// vanish identically or are forced to zero by the linkage.
class VelocityCoefficients {
  public:
    explicit VelocityCoefficients(int max_mode)
        : alpha_(Eigen::MatrixXd::Zero(max_mode, max_mode)),
          beta_(Eigen::MatrixXd::Zero(max_mode, max_mode)) {}

    // beta derived from alpha through the linkage.
    static VelocityCoefficients linked_from_alpha(const Eigen::MatrixXd& alpha);
    static VelocityCoefficients from_packed_alpha(const Eigen::VectorXd& alpha_packed,
                                                  int max_mode);

    int max_mode() const { return static_cast<int>(alpha_.rows()); }

    double alpha(int k, int l) const { return alpha_(k - 1, l - 1); }
    double beta(int k, int l) const { return beta_(k - 1, l - 1); }
    double& alpha(int k, int l) { return alpha_(k - 1, l - 1); }
    double& beta(int k, int l) { return beta_(k - 1, l - 1); }

    const Eigen::MatrixXd& alpha_matrix() const { return alpha_; }
    const Eigen::MatrixXd& beta_matrix() const { return beta_; }

    // alpha flattened row-major (k outer), matching the packed ODE order.
    Eigen::VectorXd packed_alpha() const;

    // max_kl |k alpha_kl + l beta_kl|
    double linkage_residual() const;

    double evaluate_v1(double x, double y) const;
    double evaluate_v2(double x, double y) const;

  private:
    Eigen::MatrixXd alpha_;
    Eigen::MatrixXd beta_;
};

struct VelocityNorms {
    double l2;  // ||v||^2      = (1/4) sum alpha^2 + beta^2
    double h1;  // ||grad v||^2 = (pi^2/4) sum (k^2+l^2)(alpha^2 + beta^2)
};

VelocityNorms velocity_norms(const VelocityCoefficients& vel);

}  // namespace specmix
