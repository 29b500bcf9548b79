#include "specmix/scenarios.hpp"

#include <cmath>

#include "specmix/errors.hpp"
#include "specmix/trig.hpp"

namespace specmix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SpectralField project_initial(const InitialCondition& ic, BasisKind basis, int max_mode) {
    const ModeSpace space(basis, max_mode);
    switch (ic.kind) {
        case InitialCondition::Kind::Modes: {
            SpectralField field = SpectralField::zero(space);
            for (const auto& [m, n, value] : ic.modes) field.coeffs(space.index(m, n)) += value;
            return field;
        }
        case InitialCondition::Kind::Step: {
            if (basis != BasisKind::CosineCosine)
                throw BasisMismatch("project_initial: STEP data needs the cosine basis");
            // phi0 = 1 on x <= 1/2: a_00 = 1/2, a_m0 = +-2/(m pi) for odd m
            // (sign by m mod 4), everything else zero.
            SpectralField field = SpectralField::zero(space);
            field.coeffs(space.index(0, 0)) = 0.5;
            for (int m = 1; m <= max_mode; ++m) {
                if (m % 4 == 1)
                    field.coeffs(space.index(m, 0)) = 2.0 / (m * kPi);
                else if (m % 4 == 3)
                    field.coeffs(space.index(m, 0)) = -2.0 / (m * kPi);
            }
            return field;
        }
        case InitialCondition::Kind::Projected:
            if (!ic.function) throw ValidationError("project_initial: PROJECTED needs a function");
            return project_function(ic.function, space);
    }
    throw ValidationError("project_initial: unknown initial kind");
}

OdeOperator build_fixed_flow_operator(int max_mode, double kappa) {
    const ModeSpace space(BasisKind::SineSine, max_mode);
    OdeOperator op(space, kappa);
    Eigen::MatrixXd advection(space.dim(), space.dim());
    for (int m = 1; m <= max_mode; ++m)
        for (int n = 1; n <= max_mode; ++n)
            for (int i = 1; i <= max_mode; ++i) {
                const double x_factor = integral_sin_cos(m, i);
                for (int j = 1; j <= max_mode; ++j) {
                    const double y_factor =
                        integral_triple({Trig::Sin, n}, {Trig::Sin, 2}, {Trig::Sin, j});
                    advection(space.index(m, n), space.index(i, j)) =
                        4.0 * i * kPi * x_factor * y_factor;
                }
            }
    op.prescribed_advection = std::move(advection);
    return op;
}

namespace switching_tables {

double A(int m, int i) {
    if (m == 0) return i == 1 ? 0.5 : 0.0;
    double v = 0.0;
    if (i == m + 1) v += 0.25;
    if (i == m - 1 && i > 0) v += -0.25;
    if (i == 1 - m && i > 0) v += 0.25;
    return v;
}

double B(int n, int j) {
    if (n == 0) return j == 1 ? 0.5 : 0.0;
    double v = 0.0;
    if (j == n + 1) v += 0.25;
    if (j == n - 1 && j > 0) v += 0.25;
    if (j == 1 - n && j > 0) v += 0.25;
    if (j == 0 && n == 1) v += 0.5;
    return v;
}

double C(int m, int i) { return B(m, i); }
double D(int n, int j) { return A(n, j); }

double At(int m, int i) {
    if (m == 0) return i == 2 ? 0.5 : 0.0;
    double v = 0.0;
    if (i == m + 2) v += 0.25;
    if (i == m - 2 && i > 0) v += -0.25;
    if (i == 2 - m && i > 0) v += 0.25;
    return v;
}

double Bt(int n, int j) { return B(n, j); }

double Ct(int m, int i) {
    if (m == 0) return i == 2 ? 0.5 : 0.0;
    double v = 0.0;
    if (i == m + 2) v += 0.25;
    if (i == m - 2 && i > 0) v += 0.25;
    if (i == 2 - m && i > 0) v += 0.25;
    if (i == 0 && m == 2) v += 0.5;
    return v;
}

double Dt(int n, int j) { return A(n, j); }

}  // namespace switching_tables

OdeOperator build_switching_flow_operator(int max_mode, double kappa, SwitchingPhase phase) {
    const ModeSpace space(BasisKind::CosineCosine, max_mode);
    OdeOperator op(space, kappa);
    Eigen::MatrixXd advection(space.dim(), space.dim());
    namespace st = switching_tables;
    for (int m = 0; m <= max_mode; ++m)
        for (int n = 0; n <= max_mode; ++n) {
            const double scale = kPi / (space.sigma(m) * space.sigma(n));
            for (int i = 0; i <= max_mode; ++i)
                for (int j = 0; j <= max_mode; ++j) {
                    const double entry =
                        phase == SwitchingPhase::Part1
                            ? -i * st::A(m, i) * st::B(n, j) + j * st::C(m, i) * st::D(n, j)
                            : i * st::At(m, i) * st::Bt(n, j) - 2.0 * j * st::Ct(m, i) * st::Dt(n, j);
                    advection(space.index(m, n), space.index(i, j)) = scale * entry;
                }
        }
    op.prescribed_advection = std::move(advection);
    return op;
}

std::unique_ptr<AdvectionSchedule> switching_schedule(const OdeOperator& part1,
                                                      const OdeOperator& part2,
                                                      const TimeGrid& grid) {
    if (grid.t0 != 0.0)
        throw ValidationError("switching_schedule: the 0.75/0.25 pattern starts at t = 0");
    const int per_quarter = static_cast<int>(std::llround(0.25 / grid.dt));
    if (per_quarter < 1 || std::abs(per_quarter * grid.dt - 0.25) > 1e-12)
        throw ValidationError("switching_schedule: dt must divide 0.25");
    std::vector<double> starts;
    std::vector<Eigen::MatrixXd> mats;
    starts.push_back(grid.t0);
    mats.push_back(part1.prescribed_advection);
    // Part1 on [n, n+0.75), Part2 on [n+0.75, n+1); breakpoints are computed
    // as step * dt so schedule lookups match simulated stage times bitwise.
    for (int step = per_quarter * 3; grid.time_at(step) < grid.t_final; step += per_quarter) {
        const bool part2_starts = ((step / per_quarter) % 4) == 3;
        const bool part1_starts = ((step / per_quarter) % 4) == 0;
        if (!part2_starts && !part1_starts) continue;
        starts.push_back(grid.time_at(step));
        mats.push_back(part2_starts ? part2.prescribed_advection : part1.prescribed_advection);
    }
    return std::make_unique<PiecewiseConstantSchedule>(std::move(starts), std::move(mats));
}

ScenarioSpec fixed_flow_scenario(int N, double kappa, double t_final, double dt) {
    ScenarioSpec spec;
    spec.name = ScenarioName::FixedFlow;
    spec.basis = BasisKind::SineSine;
    spec.N = N;
    spec.kappa = kappa;
    spec.t_final = t_final;
    spec.dt = dt;
    spec.initial.kind = InitialCondition::Kind::Modes;
    spec.initial.modes = {{1, 1, 1.0}, {2, 2, 0.5}, {1, 3, 0.25}};
    return spec;
}

ScenarioSpec switching_flow_scenario(int N, double kappa, double t_final, double dt) {
    ScenarioSpec spec;
    spec.name = ScenarioName::SwitchingFlow;
    spec.basis = BasisKind::CosineCosine;
    spec.N = N;
    spec.kappa = kappa;
    spec.t_final = t_final;
    spec.dt = dt;
    spec.initial.kind = InitialCondition::Kind::Step;
    return spec;
}

void validate(const ScenarioSpec& spec) {
    if (spec.N < 1) throw ValidationError("scenario: N must be >= 1");
    if (spec.M < 1) throw ValidationError("scenario: M must be >= 1");
    if (!(spec.dt > 0.0) || !(spec.t_final > 0.0))
        throw ValidationError("scenario: dt and t_final must be positive");
    if (spec.name == ScenarioName::SwitchingFlow) {
        if (spec.basis != BasisKind::CosineCosine)
            throw ValidationError("scenario: the switching benchmark uses the cosine basis");
        const int per_quarter = static_cast<int>(std::llround(0.25 / spec.dt));
        if (per_quarter < 1 || std::abs(per_quarter * spec.dt - 0.25) > 1e-12)
            throw ValidationError("scenario: dt must divide 0.25 for the switching benchmark");
    }
    if (spec.initial.kind == InitialCondition::Kind::Step &&
        spec.basis != BasisKind::CosineCosine)
        throw ValidationError("scenario: STEP initial data needs the cosine basis");
    if (spec.name == ScenarioName::FixedFlow && spec.basis != BasisKind::SineSine)
        throw ValidationError("scenario: the fixed flow example uses the sine basis");
    TimeGrid::from_step(0.0, spec.t_final, spec.dt);
}

}  // namespace specmix
