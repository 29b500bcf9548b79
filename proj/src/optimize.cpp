#include "specmix/optimize.hpp"

#include <cmath>
#include <memory>
#include <ostream>

#include "specmix/csv.hpp"
#include "specmix/errors.hpp"

namespace specmix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Eigen::VectorXd constraint_metric(NormConstraint constraint, int max_mode) {
    const int M = max_mode;
    Eigen::VectorXd w(M * M);
    for (int k = 1; k <= M; ++k)
        for (int l = 1; l <= M; ++l) {
            const double z = 1.0 + (static_cast<double>(k) * k) / (static_cast<double>(l) * l);
            const double kl2 = static_cast<double>(k) * k + static_cast<double>(l) * l;
            w((k - 1) * M + (l - 1)) = constraint == NormConstraint::L2Unit ? z : kl2 * z;
        }
    return w;
}

double constraint_rhs(NormConstraint constraint) {
    return constraint == NormConstraint::L2Unit ? 4.0 : 4.0 / (kPi * kPi);
}

double constraint_value(const VelocityCoefficients& vel, NormConstraint constraint) {
    const Eigen::VectorXd w = constraint_metric(constraint, vel.max_mode());
    const Eigen::VectorXd alpha = vel.packed_alpha();
    return alpha.dot(w.cwiseProduct(alpha));
}

VelocityCoefficients project_feasible(const Eigen::VectorXd& alpha_packed, int max_mode,
                                      NormConstraint constraint) {
    const Eigen::VectorXd w = constraint_metric(constraint, max_mode);
    const double value = alpha_packed.dot(w.cwiseProduct(alpha_packed));
    if (!(value > 0.0))
        throw ValidationError("project_feasible: zero control cannot be scaled onto the ellipsoid");
    const double scale = std::sqrt(constraint_rhs(constraint) / value);
    return VelocityCoefficients::from_packed_alpha(scale * alpha_packed, max_mode);
}

Eigen::VectorXd decay_gradient(const OdeOperator& op, const SpectralField& a) {
    if (!op.tensors) throw ValidationError("decay_gradient: operator has no coupling tensors");
    if (op.space.basis() != BasisKind::SineSine)
        throw BasisMismatch("decay_gradient: coupling tensors are sine-basis");
    const CouplingTensors& tensors = *op.tensors;
    const int M = tensors.velocity_modes();
    const Eigen::VectorXd wa = gradient_energy_weights(op.space).cwiseProduct(a.coeffs);

    // -dQ/dt = 2 (w a)^T (A(alpha) a + D a); the alpha gradient picks up
    // dA/d alpha_kl = 4 pi (i A^{mn}_{klij} - j (k/l) B^{mn}_{klij}).
    Eigen::VectorXd g = Eigen::VectorXd::Zero(M * M);
    for (const auto& [key, value] : tensors.A()) {
        const auto [m, n, k, l, i, j] = key;
        g((k - 1) * M + (l - 1)) += 8.0 * kPi * i * value *
                                    wa(op.space.index(m, n)) * a.coeffs(op.space.index(i, j));
    }
    for (const auto& [key, value] : tensors.B()) {
        const auto [m, n, k, l, i, j] = key;
        g((k - 1) * M + (l - 1)) -= 8.0 * kPi * j * (static_cast<double>(k) / l) * value *
                                    wa(op.space.index(m, n)) * a.coeffs(op.space.index(i, j));
    }
    return g;
}

GreedyControl greedy_instantaneous(const OdeOperator& op, const SpectralField& a,
                                   NormConstraint constraint) {
    if (!op.tensors) throw ValidationError("greedy_instantaneous: operator has no tensors");
    const int M = op.tensors->velocity_modes();
    const Eigen::VectorXd g = decay_gradient(op, a);
    const Eigen::VectorXd W = constraint_metric(constraint, M);
    const double r = constraint_rhs(constraint);

    GreedyControl result{VelocityCoefficients(M), false, g.norm()};
    const double scale = 1.0 + gradient_energy_weights(op.space).cwiseProduct(a.coeffs).norm() *
                                   a.coeffs.norm();
    if (g.lpNorm<Eigen::Infinity>() <= 1e-14 * scale) {
        // State invariant under every feasible advection; hand back the
        // normalized first basis control, flagged.
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(M * M);
        alpha(0) = std::sqrt(r / W(0));
        result.control = VelocityCoefficients::from_packed_alpha(alpha, M);
        result.degenerate = true;
        return result;
    }
    const Eigen::VectorXd y = g.cwiseQuotient(W);  // W^{-1} g
    const double s = g.dot(y);
    result.control = VelocityCoefficients::from_packed_alpha(std::sqrt(r / s) * y, M);
    return result;
}

namespace {

// Piecewise-constant schedule from per-segment controls; segment boundaries
// land on step boundaries.
std::unique_ptr<PiecewiseConstantSchedule> segment_schedule(
    const OdeOperator& op, const std::vector<VelocityCoefficients>& controls,
    const TimeGrid& grid) {
    const int segments = static_cast<int>(controls.size());
    if (grid.steps % segments != 0)
        throw ValidationError("segment_schedule: segments must divide the step count");
    const int per = grid.steps / segments;
    std::vector<double> starts(segments);
    std::vector<Eigen::MatrixXd> mats(segments);
    for (int s = 0; s < segments; ++s) {
        starts[s] = grid.time_at(s * per);
        mats[s] = assemble_advection(*op.tensors, controls[s]);
    }
    return std::make_unique<PiecewiseConstantSchedule>(std::move(starts), std::move(mats));
}

}  // namespace

double evaluate_objective(const ControlProblem& problem, const ControlSolution& solution) {
    const auto schedule = segment_schedule(*problem.op, solution.controls, problem.horizon);
    const Trajectory traj = simulate(*problem.op, *schedule, problem.a0, problem.horizon);
    return traj.Q(traj.samples() - 1);
}

ControlSolution optimize_horizon(const ControlProblem& problem, const ControlSolution& init,
                                 int max_iter, double tol) {
    if (!problem.op || !problem.op->tensors)
        throw ValidationError("optimize_horizon: problem needs a tensor-backed operator");
    if (static_cast<int>(init.controls.size()) != problem.segments)
        throw InfeasibleInit("optimize_horizon: init segment count mismatch");
    const int M = problem.op->tensors->velocity_modes();
    for (const auto& control : init.controls) {
        if (control.max_mode() != M)
            throw InfeasibleInit("optimize_horizon: init control mode count mismatch");
        if (control.linkage_residual() > 1e-8)
            throw InfeasibleInit("optimize_horizon: init violates the stream-function linkage");
        if (std::abs(constraint_value(control, problem.constraint) -
                     constraint_rhs(problem.constraint)) > 1e-8)
            throw InfeasibleInit("optimize_horizon: init violates the norm constraint");
    }

    const int dim = M * M;
    const int segments = problem.segments;

    const auto unpack = [&](const Eigen::VectorXd& x) {
        ControlSolution sol;
        sol.controls.reserve(segments);
        for (int s = 0; s < segments; ++s) {
            const Eigen::VectorXd alpha = x.segment(s * dim, dim);
            sol.controls.push_back(project_feasible(alpha, M, problem.constraint));
        }
        return sol;
    };

    Eigen::VectorXd x(segments * dim);
    for (int s = 0; s < segments; ++s) x.segment(s * dim, dim) = init.controls[s].packed_alpha();

    ControlSolution best = init;
    best.objective_value = evaluate_objective(problem, init);
    best.iterations = 0;
    best.objective_history = {best.objective_value};

    const auto eval_raw = [&](const Eigen::VectorXd& xt) {
        return evaluate_objective(problem, unpack(xt));
    };

    double step = 0.1;
    for (int iter = 0; iter < max_iter; ++iter) {
        // Central-difference sensitivities of the shooting objective.
        Eigen::VectorXd grad(segments * dim);
        for (int c = 0; c < segments * dim; ++c) {
            const double h = 1e-6 * std::max(1.0, std::abs(x(c)));
            Eigen::VectorXd xp = x;
            Eigen::VectorXd xm = x;
            xp(c) += h;
            xm(c) -= h;
            grad(c) = (eval_raw(xp) - eval_raw(xm)) / (2.0 * h);
        }
        const double gnorm = grad.norm();
        if (gnorm == 0.0) break;

        bool accepted = false;
        for (int bt = 0; bt < 40 && !accepted; ++bt) {
            const Eigen::VectorXd trial_x = x - (step / gnorm) * grad;
            double trial_J;
            ControlSolution trial;
            try {
                trial = unpack(trial_x);
                trial_J = evaluate_objective(problem, trial);
            } catch (const ValidationError&) {
                step *= 0.5;  // projection degenerated; shorten the step
                continue;
            }
            if (trial_J < best.objective_value) {
                // keep the projected iterate so the stored controls stay feasible
                Eigen::VectorXd projected(segments * dim);
                for (int s = 0; s < segments; ++s)
                    projected.segment(s * dim, dim) = trial.controls[s].packed_alpha();
                x = projected;
                const double improvement =
                    (best.objective_value - trial_J) / std::max(1.0, std::abs(best.objective_value));
                best.controls = trial.controls;
                best.objective_value = trial_J;
                best.iterations = iter + 1;
                best.objective_history.push_back(trial_J);
                accepted = true;
                step *= 1.5;
                if (improvement < tol) return best;
            } else {
                step *= 0.5;
            }
        }
        if (!accepted) break;  // no descent direction at resolvable step sizes
    }
    return best;
}

std::pair<ControlSolution, Trajectory> greedy_schedule(const OdeOperator& op,
                                                       const SpectralField& a0,
                                                       const TimeGrid& grid,
                                                       NormConstraint constraint,
                                                       int resample_every) {
    if (!op.tensors) throw ValidationError("greedy_schedule: operator has no tensors");
    if (resample_every < 1) throw ValidationError("greedy_schedule: resample_every must be >= 1");

    Trajectory traj(op.space);
    const int samples = grid.steps + 1;
    traj.times.resize(samples);
    traj.states.resize(samples, op.space.dim());
    traj.Q.resize(samples);
    traj.norm2.resize(samples);
    traj.V.resize(samples);

    ControlSolution sol;
    const double mean0 = field_integral(a0);
    const Eigen::VectorXd w = gradient_energy_weights(op.space);

    Eigen::VectorXd a = a0.coeffs;
    Eigen::MatrixXd advection;
    bool all_degenerate = true;
    for (int s = 0; s <= grid.steps; ++s) {
        traj.times(s) = grid.time_at(s);
        traj.states.row(s) = a.transpose();
        const SpectralField snapshot(op.space, a);
        traj.Q(s) = w.dot(a.cwiseAbs2());
        traj.norm2(s) = field_norm_sq(snapshot);
        traj.V(s) = variance_about(snapshot, mean0);
        if (s == grid.steps) break;
        if (s % resample_every == 0) {
            const GreedyControl greedy = greedy_instantaneous(op, snapshot, constraint);
            sol.controls.push_back(greedy.control);
            all_degenerate = all_degenerate && greedy.degenerate;
            advection = assemble_advection(*op.tensors, greedy.control);
        }
        const ConstantSchedule held(advection);
        a = step_rk4(op, held, a, traj.times(s), grid.dt);
    }
    sol.objective_value = traj.Q(grid.steps);
    sol.iterations = static_cast<int>(sol.controls.size());
    sol.degenerate = all_degenerate;
    return {std::move(sol), std::move(traj)};
}

void write_solution_csv(std::ostream& os, const ControlSolution& solution,
                        const TimeGrid& horizon, int segments) {
    if (solution.controls.empty()) throw ValidationError("write_solution_csv: empty solution");
    const int M = solution.controls.front().max_mode();
    os << "segment,t_start,t_end";
    for (int k = 1; k <= M; ++k)
        for (int l = 1; l <= M; ++l) os << ",alpha_" << k << '_' << l;
    for (int k = 1; k <= M; ++k)
        for (int l = 1; l <= M; ++l) os << ",beta_" << k << '_' << l;
    os << '\n';
    const double seg_span = (horizon.t_final - horizon.t0) / segments;
    for (int s = 0; s < static_cast<int>(solution.controls.size()); ++s) {
        const auto& control = solution.controls[s];
        os << s << ',' << format_double(horizon.t0 + s * seg_span) << ','
           << format_double(horizon.t0 + (s + 1) * seg_span);
        for (int k = 1; k <= M; ++k)
            for (int l = 1; l <= M; ++l) os << ',' << format_double(control.alpha(k, l));
        for (int k = 1; k <= M; ++k)
            for (int l = 1; l <= M; ++l) os << ',' << format_double(control.beta(k, l));
        os << '\n';
    }
    os << "# objective=" << format_double(solution.objective_value)
       << " iterations=" << solution.iterations << '\n';
}

}  // namespace specmix
