#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "specmix/simulate.hpp"

namespace specmix {

// Feasible set: stream-function linkage plus one normalization ellipsoid.
// L2Unit:  ||v||^2 = 1       <=> alpha^T diag{1 + k^2/l^2} alpha = 4
// H1Unit:  ||grad v||^2 = 1  <=> alpha^T diag{(k^2+l^2)(1 + k^2/l^2)} alpha = 4/pi^2
enum class NormConstraint { L2Unit, H1Unit };

// Diagonal metric W and right-hand side r of alpha^T W alpha = r.
Eigen::VectorXd constraint_metric(NormConstraint constraint, int max_mode);
double constraint_rhs(NormConstraint constraint);

// alpha^T W alpha for a linked velocity.
double constraint_value(const VelocityCoefficients& vel, NormConstraint constraint);

// Rescales alpha radially onto the ellipsoid.
VelocityCoefficients project_feasible(const Eigen::VectorXd& alpha_packed, int max_mode,
                                      NormConstraint constraint);

struct GreedyControl {
    VelocityCoefficients control;
    bool degenerate = false;  // zero objective gradient; control is an
                              // arbitrary feasible point
    double decay_gradient_norm = 0.0;
};

// Closed-form maximizer of the instantaneous decay -dQ/dt over the
// constraint ellipsoid. -dQ/dt is linear in alpha for fixed a, so the argmax
// is the supported point alpha* = sqrt(r) W^{-1} g / sqrt(g^T W^{-1} g).
GreedyControl greedy_instantaneous(const OdeOperator& op, const SpectralField& a,
                                   NormConstraint constraint);

// Gradient g of -dQ/dt with respect to alpha (beta eliminated).
Eigen::VectorXd decay_gradient(const OdeOperator& op, const SpectralField& a);

struct ControlProblem {
    const OdeOperator* op = nullptr;
    SpectralField a0;
    TimeGrid horizon;
    NormConstraint constraint = NormConstraint::L2Unit;
    int segments = 1;
};

struct ControlSolution {
    std::vector<VelocityCoefficients> controls;  // one per segment
    double objective_value = 0.0;
    int iterations = 0;
    std::vector<double> objective_history;  // value after each accepted iterate
    bool degenerate = false;
};

// Final-time gradient energy reached by simulating the piecewise-constant
// controls over the horizon.
double evaluate_objective(const ControlProblem& problem, const ControlSolution& solution);

// Projected-gradient direct shooting with central finite-difference
// sensitivities (relative step 1e-6). Objective sequence is non-increasing;
// iterates stay on the ellipsoid by radial scaling. Throws InfeasibleInit
// when init violates the constraints beyond 1e-8.
ControlSolution optimize_horizon(const ControlProblem& problem, const ControlSolution& init,
                                 int max_iter, double tol);

// Closed-loop greedy: re-maximize the instantaneous decay every
// resample_every steps, integrating with the control held constant between
// resamples.
std::pair<ControlSolution, Trajectory> greedy_schedule(const OdeOperator& op,
                                                       const SpectralField& a0,
                                                       const TimeGrid& grid,
                                                       NormConstraint constraint,
                                                       int resample_every = 1);

// Solution CSV: per-segment rows with alpha_k_l / beta_k_l columns, then a
// commented summary with the objective value and iteration count.
void write_solution_csv(std::ostream& os, const ControlSolution& solution,
                        const TimeGrid& horizon, int segments);

}  // namespace specmix
