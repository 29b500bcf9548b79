#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "specmix/operator.hpp"

namespace specmix {

// Fixed-step time grid; steps * dt must reproduce t_final - t0 to an
// ulp-scaled tolerance.
struct TimeGrid {
    double t0 = 0.0;
    double t_final = 1.0;
    double dt = 1e-3;
    int steps = 1000;

    static TimeGrid from_step(double t0, double t_final, double dt);
    double time_at(int step) const { return t0 + step * dt; }
};

// Piecewise-constant-in-time advection matrix. Segment s covers
// [start_times[s], start_times[s+1]) half-open; lookups beyond the last
// breakpoint return the last matrix.
class AdvectionSchedule {
  public:
    virtual ~AdvectionSchedule() = default;
    virtual const Eigen::MatrixXd& at(double t) const = 0;
};

class ConstantSchedule final : public AdvectionSchedule {
  public:
    explicit ConstantSchedule(Eigen::MatrixXd advection) : advection_(std::move(advection)) {}
    const Eigen::MatrixXd& at(double) const override { return advection_; }

  private:
    Eigen::MatrixXd advection_;
};

class PiecewiseConstantSchedule final : public AdvectionSchedule {
  public:
    PiecewiseConstantSchedule(std::vector<double> start_times,
                              std::vector<Eigen::MatrixXd> matrices);
    const Eigen::MatrixXd& at(double t) const override;

  private:
    std::vector<double> start_times_;
    std::vector<Eigen::MatrixXd> matrices_;
};

ConstantSchedule zero_schedule(const ModeSpace& space);

// Simulated states plus per-step diagnostics. Rows of states are packed
// coefficient vectors, one per recorded time.
struct Trajectory {
    ModeSpace space;
    Eigen::VectorXd times;
    Eigen::MatrixXd states;
    Eigen::VectorXd Q;       // gradient energy
    Eigen::VectorXd norm2;   // sigma-weighted ||phi||^2
    Eigen::VectorXd V;       // ||phi - <phi(.,0)>||^2

    explicit Trajectory(ModeSpace s) : space(s) {}
    SpectralField field_at(int idx) const;
    int samples() const { return static_cast<int>(times.size()); }
};

// Classical RK4 step; the schedule is sampled at the stage times. Throws
// UnstableIntegration when any coefficient exceeds 1e12.
Eigen::VectorXd step_rk4(const OdeOperator& op, const AdvectionSchedule& schedule,
                         const Eigen::VectorXd& a, double t, double dt);

Trajectory simulate(const OdeOperator& op, const AdvectionSchedule& schedule,
                    const SpectralField& a0, const TimeGrid& grid);

// Max over interior samples of
//   | centered-diff d||phi||^2/dt + 2 kappa Q | / max(1, Q),
// the Neumann/Dirichlet energy balance the truncated system satisfies up to
// time-discretization error.
double check_energy_identity(const Trajectory& traj, double kappa);

// Trajectory CSV: t,Q,norm2,V (plus per-mode columns a_m_n when requested).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, bool dump_modes = false,
                          int thin = 1);

// Field snapshot CSV x,y,phi on a uniform grid.
void write_field_csv(std::ostream& os, const SpectralField& field, int resolution);

}  // namespace specmix
