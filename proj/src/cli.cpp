#include "specmix/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specmix/bounds.hpp"
#include "specmix/config.hpp"
#include "specmix/csv.hpp"
#include "specmix/errors.hpp"
#include "specmix/scenarios.hpp"

namespace specmix {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open output file " + path.string());
    return os;
}

// Scenario options shared by simulate/optimize/benchmark/verify-energy.
// Values come from defaults, then the config file, then explicit flags.
struct ScenarioOptions {
    ScenarioConfig cli;
    std::string config_path;
    CLI::Option* scenario_opt = nullptr;
    std::vector<std::pair<CLI::Option*, std::function<void(ScenarioConfig&)>>> overrides;

    void add_common(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value config file ('#' comments)");
        auto track = [this](CLI::Option* opt, auto member) {
            overrides.emplace_back(opt, [this, member](ScenarioConfig& cfg) {
                cfg.*member = this->cli.*member;
            });
            return opt;
        };
        scenario_opt = track(
            cmd->add_option("--scenario", cli.scenario, "fixed | switching | custom"),
            &ScenarioConfig::scenario);
        track(cmd->add_option("--basis", cli.basis, "sine | cosine (custom scenarios)"),
              &ScenarioConfig::basis);
        track(cmd->add_option("--N", cli.N, "scalar modes per axis"), &ScenarioConfig::N);
        track(cmd->add_option("--M", cli.M, "velocity modes per axis"), &ScenarioConfig::M);
        track(cmd->add_option("--kappa", cli.kappa, "diffusivity (1/Pe)"), &ScenarioConfig::kappa);
        track(cmd->add_option("--t_final,--t-final", cli.t_final, "final time"),
              &ScenarioConfig::t_final);
        track(cmd->add_option("--dt", cli.dt, "time step"), &ScenarioConfig::dt);
        track(cmd->add_option("--control", cli.control, "prescribed | greedy | horizon"),
              &ScenarioConfig::control);
        track(cmd->add_option("--constraint", cli.constraint, "l2 | h1"),
              &ScenarioConfig::constraint);
        track(cmd->add_option("--seed", cli.seed, "RNG seed"), &ScenarioConfig::seed);
        track(cmd->add_option("--output_dir,--output-dir", cli.output_dir, "output directory"),
              &ScenarioConfig::output_dir);
        track(cmd->add_flag("--dump_modes,--dump-modes", cli.dump_modes,
                            "per-mode trajectory columns"),
              &ScenarioConfig::dump_modes);
        track(cmd->add_option("--segments", cli.segments, "piecewise-constant control segments"),
              &ScenarioConfig::segments);
        track(cmd->add_option("--trials", cli.trials, "random trials"), &ScenarioConfig::trials);
        track(cmd->add_option("--initial", cli.initial, "default | step | modes"),
              &ScenarioConfig::initial);
        track(cmd->add_option("--initial_modes,--initial-modes", cli.initial_modes,
                              "m:n:v;m:n:v;..."),
              &ScenarioConfig::initial_modes);
        track(cmd->add_option("--alpha", cli.alpha, "k:l:v;... (custom velocity)"),
              &ScenarioConfig::alpha);
        track(cmd->add_option("--beta", cli.beta, "k:l:v;... (custom velocity)"),
              &ScenarioConfig::beta);
    }

    ScenarioConfig resolve() const {
        ScenarioConfig cfg;
        if (!config_path.empty()) cfg = parse_config_file(config_path);
        for (const auto& [opt, apply] : overrides)
            if (opt->count() > 0) apply(cfg);
        return cfg;
    }

    bool scenario_given() const {
        return !config_path.empty() || (scenario_opt && scenario_opt->count() > 0);
    }
};

VelocityCoefficients custom_velocity(const ScenarioSpec& spec) {
    int max_mode = spec.M;
    for (const auto& [k, l, v] : spec.alpha) max_mode = std::max({max_mode, k, l});
    for (const auto& [k, l, v] : spec.beta) max_mode = std::max({max_mode, k, l});
    VelocityCoefficients vel(max_mode);
    for (const auto& [k, l, v] : spec.alpha) {
        if (k < 1 || l < 1) throw ValidationError("custom velocity: modes must be >= 1");
        vel.alpha(k, l) = v;
    }
    if (spec.beta.empty()) {
        vel = VelocityCoefficients::linked_from_alpha(vel.alpha_matrix());
    } else {
        for (const auto& [k, l, v] : spec.beta) {
            if (k < 1 || l < 1) throw ValidationError("custom velocity: modes must be >= 1");
            vel.beta(k, l) = v;
        }
        if (vel.linkage_residual() > 1e-10)
            throw ValidationError("custom velocity: k alpha + l beta = 0 violated");
    }
    return vel;
}

struct PreparedRun {
    OdeOperator op;
    std::unique_ptr<AdvectionSchedule> schedule;
    SpectralField a0;
    TimeGrid grid;
    std::unique_ptr<CouplingTensors> tensors;  // keeps op.tensors alive
};

PreparedRun prepare_prescribed(const ScenarioSpec& spec) {
    const TimeGrid grid = TimeGrid::from_step(0.0, spec.t_final, spec.dt);
    switch (spec.name) {
        case ScenarioName::FixedFlow: {
            OdeOperator op = build_fixed_flow_operator(spec.N, spec.kappa);
            auto schedule = std::make_unique<ConstantSchedule>(op.prescribed_advection);
            SpectralField a0 = project_initial(spec.initial, spec.basis, spec.N);
            return {std::move(op), std::move(schedule), std::move(a0), grid, nullptr};
        }
        case ScenarioName::SwitchingFlow: {
            OdeOperator part1 =
                build_switching_flow_operator(spec.N, spec.kappa, SwitchingPhase::Part1);
            const OdeOperator part2 =
                build_switching_flow_operator(spec.N, spec.kappa, SwitchingPhase::Part2);
            auto schedule = switching_schedule(part1, part2, grid);
            SpectralField a0 = project_initial(spec.initial, spec.basis, spec.N);
            return {std::move(part1), std::move(schedule), std::move(a0), grid, nullptr};
        }
        case ScenarioName::Custom: {
            if (spec.basis != BasisKind::SineSine)
                throw ValidationError(
                    "custom prescribed velocity requires the sine basis (coupling tensors)");
            const VelocityCoefficients vel = custom_velocity(spec);
            auto tensors =
                std::make_unique<CouplingTensors>(build_coupling_tensors(spec.N, vel.max_mode()));
            OdeOperator op(ModeSpace(spec.basis, spec.N), spec.kappa, tensors.get());
            auto schedule =
                std::make_unique<ConstantSchedule>(assemble_advection(*tensors, vel));
            SpectralField a0 = project_initial(spec.initial, spec.basis, spec.N);
            return {std::move(op), std::move(schedule), std::move(a0), grid, std::move(tensors)};
        }
    }
    throw ValidationError("unknown scenario");
}

void warn_stability(const PreparedRun& run) {
    const double norm = run.schedule->at(run.grid.t0).cwiseAbs().rowwise().sum().maxCoeff();
    const double budget = stability_budget(run.op, norm);
    if (run.grid.dt > budget)
        std::cerr << "warning: dt=" << run.grid.dt << " exceeds the stability budget "
                  << budget << '\n';
}

int cmd_tensors(int N, int M, std::size_t budget, const std::string& output_dir,
                const std::string& alpha_list, bool dump_operator) {
    const CouplingTensors tensors = build_coupling_tensors(N, M, budget);
    {
        auto os = open_output(output_dir, "tensors.csv");
        write_tensors_csv(os, tensors);
    }
    std::cout << "tensors.csv: " << tensors.A().size() << " A entries, " << tensors.B().size()
              << " B entries (N=" << N << ", M=" << M << ")\n";
    if (dump_operator) {
        if (alpha_list.empty())
            throw ValidationError("--dump-operator needs --alpha k:l:v;... to fix the velocity");
        VelocityCoefficients vel(M);
        for (const auto& [k, l, v] : parse_mode_list(alpha_list)) vel.alpha(k, l) = v;
        vel = VelocityCoefficients::linked_from_alpha(vel.alpha_matrix());
        const OdeOperator op(ModeSpace(BasisKind::SineSine, N), 1.0, &tensors);
        {
            auto os = open_output(output_dir, "operator_A.csv");
            write_matrix_csv(os, assemble_advection(tensors, vel));
        }
        {
            auto os = open_output(output_dir, "operator_D.csv");
            write_diagonal_csv(os, op.diffusion);
        }
        std::cout << "operator_A.csv / operator_D.csv written\n";
    }
    return 0;
}

int cmd_simulate(const ScenarioOptions& options) {
    if (!options.scenario_given())
        throw ValidationError("simulate: --scenario is required (or provide --config)");
    const ScenarioConfig cfg = options.resolve();
    const ScenarioSpec spec = resolve_scenario(cfg);

    if (spec.control == ControlMode::Prescribed) {
        PreparedRun run = prepare_prescribed(spec);
        warn_stability(run);
        const Trajectory traj = simulate(run.op, *run.schedule, run.a0, run.grid);
        auto os = open_output(cfg.output_dir, "trajectory.csv");
        write_trajectory_csv(os, traj, cfg.dump_modes);
        std::cout << "trajectory.csv: " << traj.samples() << " samples, Q(t_final)="
                  << format_double(traj.Q(traj.samples() - 1)) << '\n';
        return 0;
    }

    // Control-driven runs live on the sine basis through the coupling tensors.
    if (spec.basis != BasisKind::SineSine)
        throw ValidationError("simulate: greedy/horizon control requires the sine basis");
    const CouplingTensors tensors = build_coupling_tensors(spec.N, spec.M);
    const OdeOperator op(ModeSpace(spec.basis, spec.N), spec.kappa, &tensors);
    const SpectralField a0 = project_initial(spec.initial, spec.basis, spec.N);
    const TimeGrid grid = TimeGrid::from_step(0.0, spec.t_final, spec.dt);

    if (spec.control == ControlMode::Greedy) {
        auto [solution, traj] = greedy_schedule(op, a0, grid, spec.constraint);
        {
            auto os = open_output(cfg.output_dir, "trajectory.csv");
            write_trajectory_csv(os, traj, cfg.dump_modes);
        }
        auto os = open_output(cfg.output_dir, "solution.csv");
        write_solution_csv(os, solution, grid, grid.steps);
        std::cout << "greedy: Q(t_final)=" << format_double(solution.objective_value)
                  << (solution.degenerate ? " (all controls degenerate)" : "") << '\n';
        return 0;
    }

    // Horizon: optimize, then replay the optimal piecewise-constant controls.
    ControlProblem problem{&op, a0, grid, spec.constraint, spec.segments};
    ControlSolution init;
    const GreedyControl greedy0 = greedy_instantaneous(op, a0, spec.constraint);
    init.controls.assign(spec.segments, greedy0.control);
    const ControlSolution solution = optimize_horizon(problem, init, 100, 1e-8);
    {
        auto os = open_output(cfg.output_dir, "solution.csv");
        write_solution_csv(os, solution, grid, spec.segments);
    }
    std::cout << "horizon: objective=" << format_double(solution.objective_value)
              << " iterations=" << solution.iterations << '\n';
    return 0;
}

int cmd_optimize(const ScenarioOptions& options, int max_iter, double tol) {
    ScenarioConfig cfg = options.resolve();
    if (cfg.control == "prescribed") cfg.control = "greedy";
    const ScenarioSpec spec = resolve_scenario(cfg);
    if (spec.basis != BasisKind::SineSine)
        throw ValidationError("optimize: control requires the sine basis");

    const CouplingTensors tensors = build_coupling_tensors(spec.N, spec.M);
    const OdeOperator op(ModeSpace(spec.basis, spec.N), spec.kappa, &tensors);
    const SpectralField a0 = project_initial(spec.initial, spec.basis, spec.N);
    const TimeGrid grid = TimeGrid::from_step(0.0, spec.t_final, spec.dt);

    if (spec.control == ControlMode::Greedy) {
        auto [solution, traj] = greedy_schedule(op, a0, grid, spec.constraint);
        {
            auto os = open_output(cfg.output_dir, "solution.csv");
            write_solution_csv(os, solution, grid, grid.steps);
        }
        auto os = open_output(cfg.output_dir, "trajectory.csv");
        write_trajectory_csv(os, traj, cfg.dump_modes);
        std::cout << "greedy: Q(t_final)=" << format_double(solution.objective_value) << '\n';
        return 0;
    }

    ControlProblem problem{&op, a0, grid, spec.constraint, spec.segments};
    ControlSolution init;
    const GreedyControl greedy0 = greedy_instantaneous(op, a0, spec.constraint);
    init.controls.assign(spec.segments, greedy0.control);
    const ControlSolution solution = optimize_horizon(problem, init, max_iter, tol);
    auto os = open_output(cfg.output_dir, "solution.csv");
    write_solution_csv(os, solution, grid, spec.segments);
    std::cout << "horizon: objective=" << format_double(solution.objective_value)
              << " iterations=" << solution.iterations << '\n';
    return 0;
}

int cmd_verify_bounds(int N, int M, int trials, std::uint64_t seed,
                      const std::string& output_dir) {
    const BoundReport report = make_bound_report(N, M, trials, seed);
    auto os = open_output(output_dir, "bounds.csv");
    write_bounds_csv(os, report);
    std::cout << "K=" << format_double(report.K) << " K_hat=" << format_double(report.K_hat)
              << " bound_l2=" << format_double(report.bound_l2)
              << " observed_max=" << format_double(report.observed_max_entry)
              << " violations=" << report.violations << " (trials=" << trials
              << ", seed=" << seed << ")\n";
    if (report.violations > 0) {
        std::cerr << "entry bound violated: implementation bug\n";
        return 2;
    }
    return 0;
}

int cmd_benchmark(const ScenarioOptions& options) {
    ScenarioConfig cfg = options.resolve();
    cfg.scenario = "switching";
    if (cfg.kappa == ScenarioConfig{}.kappa) cfg.kappa = 0.001;
    const ScenarioSpec spec = resolve_scenario(cfg);

    PreparedRun switching = prepare_prescribed(spec);
    const Trajectory traj_switch =
        simulate(switching.op, *switching.schedule, switching.a0, switching.grid);
    const ConstantSchedule still = zero_schedule(switching.op.space);
    const Trajectory traj_diff = simulate(switching.op, still, switching.a0, switching.grid);

    {
        auto os = open_output(cfg.output_dir, "trajectory.csv");
        write_trajectory_csv(os, traj_switch, cfg.dump_modes);
    }
    {
        auto os = open_output(cfg.output_dir, "trajectory_diffusion.csv");
        write_trajectory_csv(os, traj_diff, cfg.dump_modes);
    }
    const int last = traj_switch.samples() - 1;
    std::cout << "V_switching(t_final)=" << format_double(traj_switch.V(last))
              << " V_diffusion(t_final)=" << format_double(traj_diff.V(last)) << '\n';
    std::cout << (traj_switch.V(last) < traj_diff.V(last)
                      ? "mixing enhancement: switching beats diffusion-only\n"
                      : "no mixing enhancement observed\n");
    return 0;
}

int cmd_verify_energy(const ScenarioOptions& options, double tol) {
    if (!options.scenario_given())
        throw ValidationError("verify-energy: --scenario is required (or provide --config)");
    const ScenarioConfig cfg = options.resolve();
    const ScenarioSpec spec = resolve_scenario(cfg);
    PreparedRun run = prepare_prescribed(spec);
    const Trajectory traj = simulate(run.op, *run.schedule, run.a0, run.grid);
    const double residual = check_energy_identity(traj, spec.kappa);
    std::cout << "max normalized energy-identity residual: " << format_double(residual)
              << " (tol " << format_double(tol) << ")\n";
    if (!(residual <= tol)) {
        std::cerr << "energy identity residual exceeds tolerance\n";
        return 2;
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"spectral Galerkin toolkit for advection-diffusion mixing"};
    app.require_subcommand(1);

    // tensors
    auto* tensors_cmd = app.add_subcommand("tensors", "build and dump the coupling tensors");
    int t_N = 0;
    int t_M = 0;
    std::size_t t_budget = std::size_t{1} << 26;
    std::string t_output = ".";
    std::string t_alpha;
    bool t_dump_op = false;
    tensors_cmd->add_option("--N", t_N, "scalar modes")->required();
    tensors_cmd->add_option("--M", t_M, "velocity modes")->required();
    tensors_cmd->add_option("--budget", t_budget, "entry budget (M^2 N^4 cap)");
    tensors_cmd->add_option("--output_dir,--output-dir", t_output, "output directory");
    tensors_cmd->add_option("--alpha", t_alpha, "k:l:v;... velocity for --dump-operator");
    tensors_cmd->add_flag("--dump_operator,--dump-operator", t_dump_op,
                          "also dump A(vel) and D as row,col,value CSVs");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "run a scenario, write trajectory.csv");
    ScenarioOptions sim_options;
    sim_options.add_common(simulate_cmd);

    // optimize
    auto* optimize_cmd =
        app.add_subcommand("optimize", "greedy or horizon control, write solution.csv");
    ScenarioOptions opt_options;
    opt_options.add_common(optimize_cmd);
    int opt_max_iter = 100;
    double opt_tol = 1e-8;
    optimize_cmd->add_option("--max_iter,--max-iter", opt_max_iter, "iteration cap");
    optimize_cmd->add_option("--tol", opt_tol, "relative improvement stop");

    // verify-bounds
    auto* bounds_cmd =
        app.add_subcommand("verify-bounds", "check the advection entry bounds, write bounds.csv");
    int b_N = 0;
    int b_M = 0;
    int b_trials = 0;
    std::uint64_t b_seed = 1;
    std::string b_output = ".";
    bounds_cmd->add_option("--N", b_N, "scalar modes")->required();
    bounds_cmd->add_option("--M", b_M, "velocity modes")->required();
    bounds_cmd->add_option("--trials", b_trials, "random feasible controls")->required();
    bounds_cmd->add_option("--seed", b_seed, "RNG seed");
    bounds_cmd->add_option("--output_dir,--output-dir", b_output, "output directory");

    // benchmark
    auto* benchmark_cmd = app.add_subcommand(
        "benchmark", "switching-flow benchmark against the diffusion-only baseline");
    ScenarioOptions bench_options;
    bench_options.add_common(benchmark_cmd);

    // verify-energy
    auto* energy_cmd =
        app.add_subcommand("verify-energy", "check the L2 energy decay identity on a run");
    ScenarioOptions energy_options;
    energy_options.add_common(energy_cmd);
    double e_tol = 1e-4;
    energy_cmd->add_option("--tol", e_tol, "max normalized residual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (tensors_cmd->parsed())
            return cmd_tensors(t_N, t_M, t_budget, t_output, t_alpha, t_dump_op);
        if (simulate_cmd->parsed()) return cmd_simulate(sim_options);
        if (optimize_cmd->parsed()) return cmd_optimize(opt_options, opt_max_iter, opt_tol);
        if (bounds_cmd->parsed()) return cmd_verify_bounds(b_N, b_M, b_trials, b_seed, b_output);
        if (benchmark_cmd->parsed()) return cmd_benchmark(bench_options);
        if (energy_cmd->parsed()) return cmd_verify_energy(energy_options, e_tol);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace specmix
