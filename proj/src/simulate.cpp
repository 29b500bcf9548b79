#include "specmix/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "specmix/csv.hpp"
#include "specmix/errors.hpp"

namespace specmix {

TimeGrid TimeGrid::from_step(double t0, double t_final, double dt) {
    if (!(dt > 0.0)) throw ValidationError("TimeGrid: dt must be positive");
    const double span = t_final - t0;
    if (!(span > 0.0)) throw ValidationError("TimeGrid: t_final must exceed t0");
    const int steps = static_cast<int>(std::llround(span / dt));
    const double err = std::abs(steps * dt - span);
    if (steps < 1 || err > 32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, span))
        throw ValidationError("TimeGrid: dt does not divide the time span");
    return {t0, t_final, dt, steps};
}

PiecewiseConstantSchedule::PiecewiseConstantSchedule(std::vector<double> start_times,
                                                     std::vector<Eigen::MatrixXd> matrices)
    : start_times_(std::move(start_times)), matrices_(std::move(matrices)) {
    if (start_times_.empty() || start_times_.size() != matrices_.size())
        throw ValidationError("PiecewiseConstantSchedule: breakpoints/matrices mismatch");
    if (!std::is_sorted(start_times_.begin(), start_times_.end()))
        throw ValidationError("PiecewiseConstantSchedule: breakpoints must be sorted");
}

const Eigen::MatrixXd& PiecewiseConstantSchedule::at(double t) const {
    auto it = std::upper_bound(start_times_.begin(), start_times_.end(), t);
    const auto seg = it == start_times_.begin()
                         ? std::size_t{0}
                         : static_cast<std::size_t>(it - start_times_.begin() - 1);
    return matrices_[seg];
}

ConstantSchedule zero_schedule(const ModeSpace& space) {
    return ConstantSchedule(Eigen::MatrixXd::Zero(space.dim(), space.dim()));
}

SpectralField Trajectory::field_at(int idx) const {
    return SpectralField(space, states.row(idx).transpose());
}

namespace {

void check_stable(const Eigen::VectorXd& a) {
    if (!a.allFinite() || a.cwiseAbs().maxCoeff() > 1e12)
        throw UnstableIntegration("step_rk4: coefficients exceeded 1e12");
}

}  // namespace

Eigen::VectorXd step_rk4(const OdeOperator& op, const AdvectionSchedule& schedule,
                         const Eigen::VectorXd& a, double t, double dt) {
    const auto rhs = [&](double tau, const Eigen::VectorXd& state) {
        return assemble_rhs(op, schedule.at(tau), state);
    };
    const Eigen::VectorXd k1 = rhs(t, a);
    const Eigen::VectorXd k2 = rhs(t + 0.5 * dt, a + (0.5 * dt) * k1);
    const Eigen::VectorXd k3 = rhs(t + 0.5 * dt, a + (0.5 * dt) * k2);
    const Eigen::VectorXd k4 = rhs(t + dt, a + dt * k3);
    Eigen::VectorXd next = a + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_stable(next);
    return next;
}

Trajectory simulate(const OdeOperator& op, const AdvectionSchedule& schedule,
                    const SpectralField& a0, const TimeGrid& grid) {
    if (!(a0.space == op.space)) throw DimensionMismatch("simulate: state/operator space mismatch");
    Trajectory traj(op.space);
    const int samples = grid.steps + 1;
    traj.times.resize(samples);
    traj.states.resize(samples, op.space.dim());
    traj.Q.resize(samples);
    traj.norm2.resize(samples);
    traj.V.resize(samples);

    const double mean0 = field_integral(a0);
    const Eigen::VectorXd w = gradient_energy_weights(op.space);

    Eigen::VectorXd a = a0.coeffs;
    for (int s = 0; s <= grid.steps; ++s) {
        const double t = grid.time_at(s);
        traj.times(s) = t;
        traj.states.row(s) = a.transpose();
        const SpectralField snapshot(op.space, a);
        traj.Q(s) = w.dot(a.cwiseAbs2());
        traj.norm2(s) = field_norm_sq(snapshot);
        traj.V(s) = variance_about(snapshot, mean0);
        if (s < grid.steps) a = step_rk4(op, schedule, a, t, grid.dt);
    }
    return traj;
}

double check_energy_identity(const Trajectory& traj, double kappa) {
    if (traj.samples() < 3)
        throw ValidationError("check_energy_identity: need at least 3 samples");
    double worst = 0.0;
    for (int s = 1; s + 1 < traj.samples(); ++s) {
        const double dt_c = traj.times(s + 1) - traj.times(s - 1);
        const double deriv = (traj.norm2(s + 1) - traj.norm2(s - 1)) / dt_c;
        const double residual = std::abs(deriv + 2.0 * kappa * traj.Q(s));
        worst = std::max(worst, residual / std::max(1.0, traj.Q(s)));
    }
    return worst;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, bool dump_modes, int thin) {
    if (thin < 1) thin = 1;
    os << "t,Q,norm2,V";
    if (dump_modes) {
        for (int idx = 0; idx < traj.space.dim(); ++idx) {
            const auto [m, n] = traj.space.mode_of(idx);
            os << ",a_" << m << '_' << n;
        }
    }
    os << '\n';
    for (int s = 0; s < traj.samples(); ++s) {
        if (s % thin != 0 && s != traj.samples() - 1) continue;
        os << format_double(traj.times(s)) << ',' << format_double(traj.Q(s)) << ','
           << format_double(traj.norm2(s)) << ',' << format_double(traj.V(s));
        if (dump_modes)
            for (int idx = 0; idx < traj.space.dim(); ++idx)
                os << ',' << format_double(traj.states(s, idx));
        os << '\n';
    }
}

void write_field_csv(std::ostream& os, const SpectralField& field, int resolution) {
    const Eigen::MatrixXd grid = reconstruct_grid(field, resolution);
    os << "x,y,phi\n";
    for (int r = 0; r < resolution; ++r)
        for (int c = 0; c < resolution; ++c) {
            const double x = static_cast<double>(r) / (resolution - 1);
            const double y = static_cast<double>(c) / (resolution - 1);
            os << format_double(x) << ',' << format_double(y) << ','
               << format_double(grid(r, c)) << '\n';
        }
}

}  // namespace specmix
