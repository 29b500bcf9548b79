#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "specmix/scenarios.hpp"

namespace specmix {

// Flat key=value configuration ('#' comments, keys equal to CLI flag
// names). CLI flags override file values. Negative numeric fields mean
// "scenario default" (8 modes; kappa/t_final/dt from the worked example the
// scenario reproduces).
struct ScenarioConfig {
    std::string scenario = "fixed";  // fixed | switching | custom
    std::string basis = "sine";      // sine | cosine
    int N = -1;
    int M = -1;
    double kappa = -1.0;
    double t_final = -1.0;
    double dt = -1.0;
    std::string control = "prescribed";  // prescribed | greedy | horizon
    std::string constraint = "l2";       // l2 | h1
    std::uint64_t seed = 1;
    std::string output_dir = ".";
    bool dump_modes = false;
    int segments = 1;
    int trials = 1000;
    std::string initial = "default";  // default | step | modes
    std::string initial_modes;        // "m:n:v;m:n:v;..."
    std::string alpha;                // "k:l:v;..." (custom velocity)
    std::string beta;                 // optional; linkage fills it when empty

    bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(std::istream& is);
ScenarioConfig parse_config_file(const std::string& path);
void write_config(std::ostream& os, const ScenarioConfig& config);

// Applies defaults per scenario (switching => cosine basis + step data) and
// resolves the enums; throws ValidationError for inconsistent settings.
ScenarioSpec resolve_scenario(const ScenarioConfig& config);

std::vector<std::tuple<int, int, double>> parse_mode_list(const std::string& text);
std::string format_mode_list(const std::vector<std::tuple<int, int, double>>& modes);

}  // namespace specmix
