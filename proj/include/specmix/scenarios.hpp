#pragma once

#include <functional>
#include <memory>
#include <tuple>
#include <vector>

#include "specmix/optimize.hpp"
#include "specmix/simulate.hpp"

namespace specmix {

enum class ScenarioName { FixedFlow, SwitchingFlow, Custom };
enum class ControlMode { Prescribed, Greedy, Horizon };
enum class SwitchingPhase { Part1, Part2 };

// Initial data. Step is the half-domain indicator phi0 = 1 on x <= 1/2
// (cosine basis only); Projected samples an arbitrary function and projects
// it; Modes sets coefficients directly.
struct InitialCondition {
    enum class Kind { Modes, Step, Projected };
    Kind kind = Kind::Modes;
    std::vector<std::tuple<int, int, double>> modes;  // (m, n, value)
    std::function<double(double, double)> function;   // Projected only
};

SpectralField project_initial(const InitialCondition& ic, BasisKind basis, int max_mode);

// Sine-basis operator for the fixed flow v = (sin(2 pi y), 0):
//   A[(mn),(ij)] = 4 i pi [int sin(m) cos(i) dx][int sin(n) sin(2) sin(j) dy],
// stored as the prescribed advection matrix; diffusion as usual.
OdeOperator build_fixed_flow_operator(int max_mode, double kappa);

// Cosine-basis operator of the switching benchmark,
//   Part1: v = ( sin(pi x) cos(pi y), -cos(pi x) sin(pi y))
//   Part2: v = (-sin(2 pi x) cos(pi y), 2 cos(2 pi x) sin(pi y)),
// assembled from the closed-form coefficient tables
//   Part1: pi/(sigma_m sigma_n) [-i A_i B_j + j C_i D_j]
//   Part2: pi/(sigma_m sigma_n) [ i At_i Bt_j - 2 j Ct_i Dt_j].
OdeOperator build_switching_flow_operator(int max_mode, double kappa, SwitchingPhase phase);

// The 1-D coefficient tables behind the benchmark operator (exposed for the
// cross-checks against integral_triple).
namespace switching_tables {
double A(int m, int i);   // int cos(m pi x) sin(pi x)   sin(i pi x)
double B(int n, int j);   // int cos(n pi y) cos(pi y)   cos(j pi y)
double C(int m, int i);   // int cos(m pi x) cos(pi x)   cos(i pi x)
double D(int n, int j);   // int cos(n pi y) sin(pi y)   sin(j pi y)
double At(int m, int i);  // int cos(m pi x) sin(2 pi x) sin(i pi x)
double Bt(int n, int j);  // int cos(n pi y) cos(pi y)   cos(j pi y)
double Ct(int m, int i);  // int cos(m pi x) cos(2 pi x) cos(i pi x)
double Dt(int n, int j);  // int cos(n pi y) sin(pi y)   sin(j pi y)
}  // namespace switching_tables

// Piecewise schedule alternating Part1 on [n, n+0.75) and Part2 on
// [n+0.75, n+1); dt must divide 0.25 so switches land on step boundaries.
std::unique_ptr<AdvectionSchedule> switching_schedule(const OdeOperator& part1,
                                                      const OdeOperator& part2,
                                                      const TimeGrid& grid);

// Fully resolved scenario ready to run.
struct ScenarioSpec {
    ScenarioName name = ScenarioName::FixedFlow;
    BasisKind basis = BasisKind::SineSine;
    int N = 8;               // scalar modes
    int M = 4;               // velocity modes (control scenarios)
    double kappa = 0.01;
    double t_final = 1.0;
    double dt = 1e-3;
    InitialCondition initial;
    ControlMode control = ControlMode::Prescribed;
    NormConstraint constraint = NormConstraint::L2Unit;
    int segments = 1;
    std::vector<std::tuple<int, int, double>> alpha;  // Custom prescribed velocity
    std::vector<std::tuple<int, int, double>> beta;
};

ScenarioSpec fixed_flow_scenario(int N = 8, double kappa = 0.01, double t_final = 1.0,
                                 double dt = 1e-3);
ScenarioSpec switching_flow_scenario(int N = 8, double kappa = 0.001, double t_final = 5.0,
                                     double dt = 0.00125);

// Validates invariants (dt dividing 0.25 for the benchmark, basis/initial
// consistency); throws ValidationError.
void validate(const ScenarioSpec& spec);

}  // namespace specmix
