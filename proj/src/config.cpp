#include "specmix/config.hpp"

#include <fstream>
#include <sstream>

#include "specmix/csv.hpp"
#include "specmix/errors.hpp"

namespace specmix {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config: bad integer for '" + key + "': " + value);
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config: bad number for '" + key + "': " + value);
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ValidationError("config: bad boolean for '" + key + "': " + value);
}

}  // namespace

std::vector<std::tuple<int, int, double>> parse_mode_list(const std::string& text) {
    std::vector<std::tuple<int, int, double>> modes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        int m = 0;
        int n = 0;
        double value = 0.0;
        char c1 = 0;
        char c2 = 0;
        std::stringstream fs(item);
        if (!(fs >> m >> c1 >> n >> c2 >> value) || c1 != ':' || c2 != ':')
            throw ValidationError("config: bad mode entry '" + item + "' (want m:n:value)");
        modes.emplace_back(m, n, value);
    }
    return modes;
}

std::string format_mode_list(const std::vector<std::tuple<int, int, double>>& modes) {
    std::string out;
    for (const auto& [m, n, value] : modes) {
        if (!out.empty()) out += ';';
        out += std::to_string(m) + ':' + std::to_string(n) + ':' + format_double(value);
    }
    return out;
}

ScenarioConfig parse_config(std::istream& is) {
    ScenarioConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: line " + std::to_string(line_no) +
                                  " is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "scenario")
            config.scenario = value;
        else if (key == "basis")
            config.basis = value;
        else if (key == "N")
            config.N = to_int(key, value);
        else if (key == "M")
            config.M = to_int(key, value);
        else if (key == "kappa")
            config.kappa = to_double(key, value);
        else if (key == "t_final")
            config.t_final = to_double(key, value);
        else if (key == "dt")
            config.dt = to_double(key, value);
        else if (key == "control")
            config.control = value;
        else if (key == "constraint")
            config.constraint = value;
        else if (key == "seed")
            config.seed = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "output_dir")
            config.output_dir = value;
        else if (key == "dump_modes")
            config.dump_modes = to_bool(key, value);
        else if (key == "segments")
            config.segments = to_int(key, value);
        else if (key == "trials")
            config.trials = to_int(key, value);
        else if (key == "initial")
            config.initial = value;
        else if (key == "initial_modes")
            config.initial_modes = value;
        else if (key == "alpha")
            config.alpha = value;
        else if (key == "beta")
            config.beta = value;
        else
            throw ValidationError("config: unknown key '" + key + "'");
    }
    return config;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("config: cannot open " + path);
    return parse_config(is);
}

void write_config(std::ostream& os, const ScenarioConfig& config) {
    os << "scenario=" << config.scenario << '\n';
    os << "basis=" << config.basis << '\n';
    os << "N=" << config.N << '\n';
    os << "M=" << config.M << '\n';
    os << "kappa=" << format_double(config.kappa) << '\n';
    os << "t_final=" << format_double(config.t_final) << '\n';
    os << "dt=" << format_double(config.dt) << '\n';
    os << "control=" << config.control << '\n';
    os << "constraint=" << config.constraint << '\n';
    os << "seed=" << config.seed << '\n';
    os << "output_dir=" << config.output_dir << '\n';
    os << "dump_modes=" << (config.dump_modes ? "true" : "false") << '\n';
    os << "segments=" << config.segments << '\n';
    os << "trials=" << config.trials << '\n';
    os << "initial=" << config.initial << '\n';
    os << "initial_modes=" << config.initial_modes << '\n';
    os << "alpha=" << config.alpha << '\n';
    os << "beta=" << config.beta << '\n';
}

ScenarioSpec resolve_scenario(const ScenarioConfig& config) {
    const bool is_switching = config.scenario == "switching";
    const int N = config.N > 0 ? config.N : 8;
    const double kappa = config.kappa >= 0.0 ? config.kappa : (is_switching ? 0.001 : 0.01);
    const double t_final = config.t_final > 0.0 ? config.t_final : (is_switching ? 5.0 : 1.0);
    const double dt = config.dt > 0.0 ? config.dt : (is_switching ? 0.00125 : 1e-3);

    ScenarioSpec spec;
    if (config.scenario == "fixed")
        spec = fixed_flow_scenario(N, kappa, t_final, dt);
    else if (is_switching)
        spec = switching_flow_scenario(N, kappa, t_final, dt);
    else if (config.scenario == "custom")
        spec.name = ScenarioName::Custom;
    else
        throw ValidationError("config: unknown scenario '" + config.scenario + "'");

    if (spec.name == ScenarioName::Custom) {
        if (config.basis == "sine")
            spec.basis = BasisKind::SineSine;
        else if (config.basis == "cosine")
            spec.basis = BasisKind::CosineCosine;
        else
            throw ValidationError("config: unknown basis '" + config.basis + "'");
        spec.N = N;
        spec.kappa = kappa;
        spec.t_final = t_final;
        spec.dt = dt;
        spec.alpha = parse_mode_list(config.alpha);
        spec.beta = parse_mode_list(config.beta);
    }
    spec.M = config.M > 0 ? config.M : 4;
    spec.segments = config.segments;

    if (config.control == "prescribed")
        spec.control = ControlMode::Prescribed;
    else if (config.control == "greedy")
        spec.control = ControlMode::Greedy;
    else if (config.control == "horizon")
        spec.control = ControlMode::Horizon;
    else
        throw ValidationError("config: unknown control '" + config.control + "'");

    if (config.constraint == "l2")
        spec.constraint = NormConstraint::L2Unit;
    else if (config.constraint == "h1")
        spec.constraint = NormConstraint::H1Unit;
    else
        throw ValidationError("config: unknown constraint '" + config.constraint + "'");

    if (config.initial == "step") {
        spec.initial.kind = InitialCondition::Kind::Step;
        spec.initial.modes.clear();
    } else if (config.initial == "modes") {
        spec.initial.kind = InitialCondition::Kind::Modes;
        spec.initial.modes = parse_mode_list(config.initial_modes);
        if (spec.initial.modes.empty())
            throw ValidationError("config: initial=modes needs initial_modes");
    } else if (config.initial != "default") {
        throw ValidationError("config: unknown initial '" + config.initial + "'");
    } else if (spec.name == ScenarioName::Custom) {
        spec.initial.kind = InitialCondition::Kind::Modes;
        spec.initial.modes = config.initial_modes.empty()
                                 ? std::vector<std::tuple<int, int, double>>{{1, 1, 1.0}}
                                 : parse_mode_list(config.initial_modes);
    }
    validate(spec);
    return spec;
}

}  // namespace specmix
