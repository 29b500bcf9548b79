#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "specmix/basis.hpp"
#include "specmix/coupling.hpp"
#include "specmix/field.hpp"
#include "specmix/velocity.hpp"

namespace specmix {

// Galerkin ODE da/dt = -(A(t) + D) a. D is the diffusion diagonal
// kappa pi^2 (m^2 + n^2); A(t) comes either from the coupling tensors and a
// velocity (control-driven scenarios) or from a prescribed matrix (the
// worked examples with fixed flows).
struct OdeOperator {
    ModeSpace space;
    double kappa;
    Eigen::VectorXd diffusion;             // packed in ModeSpace order
    const CouplingTensors* tensors = nullptr;
    Eigen::MatrixXd prescribed_advection;  // 0x0 when unused

    OdeOperator(ModeSpace s, double kappa_, const CouplingTensors* t = nullptr);
};

// Dense advection matrix A with entries
//   A[(mn),(ij)] = 4 pi sum_kl (i A^{mn}_{klij} alpha_kl + j B^{mn}_{klij} beta_kl)
// so that the advection contribution to da_mn/dt is -(A a)_mn.
// Throws DimensionMismatch when vel.max_mode() != tensors.velocity_modes().
Eigen::MatrixXd assemble_advection(const CouplingTensors& tensors,
                                   const VelocityCoefficients& vel);

// rhs = -A a - D a with A assembled from vel (or from op.prescribed_advection
// in the matrix overload).
Eigen::VectorXd assemble_rhs(const OdeOperator& op, const VelocityCoefficients& vel,
                             const Eigen::VectorXd& a);
Eigen::VectorXd assemble_rhs(const OdeOperator& op, const Eigen::MatrixXd& advection,
                             const Eigen::VectorXd& a);

// dQ/dt along the flow, Q the gradient energy: 2 sum w_p a_p (da_p/dt).
// Negative while the gradient energy decays.
double decay_rate_P(const OdeOperator& op, const VelocityCoefficients& vel,
                    const SpectralField& a);
double decay_rate_P(const OdeOperator& op, const Eigen::MatrixXd& advection,
                    const SpectralField& a);

// Bilinear (Kronecker) form of the same system with beta eliminated through
// the linkage: da_mn/dt = -D a - alpha^T C^{mn} a,
//   C^{mn}[(kl),(ij)] = 4 pi (i A^{mn}_{klij} - j (k/l) B^{mn}_{klij}).
struct BilinearForm {
    Eigen::VectorXd Q_diag;  // (pi^2/4)(i^2+j^2)
    Eigen::VectorXd Z_diag;  // 1 + k^2/l^2
    std::vector<Eigen::SparseMatrix<double>> C_blocks;  // one M^2 x N^2 block per (m,n)
    int scalar_modes = 0;
    int velocity_modes = 0;
};

BilinearForm build_bilinear_form(const CouplingTensors& tensors);

// Advection part of the Kronecker evaluation: out_mn = alpha^T C^{mn} a.
// Equals assemble_advection(tensors, linked vel) * a.
Eigen::VectorXd bilinear_advection_apply(const BilinearForm& form,
                                         const Eigen::VectorXd& alpha_packed,
                                         const Eigen::VectorXd& a);

// Conservative RK4 step-size budget 1 / (kappa pi^2 2N^2 + ||A||).
double stability_budget(const OdeOperator& op, double advection_norm, double c_stab = 1.0);

// CSV dump row,col,value of a dense matrix (or of the diffusion diagonal).
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& matrix);
void write_diagonal_csv(std::ostream& os, const Eigen::VectorXd& diagonal);

}  // namespace specmix
