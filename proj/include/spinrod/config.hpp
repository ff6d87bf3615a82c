#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinrod/csv.hpp"
#include "spinrod/record.hpp"

namespace spinrod {

/// Configuration problems map to the usage exit code in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& v, const std::string& key,
                           bool allow_inf = false) {
    if (allow_inf && (v == "inf" || v == "Inf" || v == "INF"))
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for key '" + key + "': " + v);
    }
}

inline int parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for key '" + key + "': " + v);
    }
}

}  // namespace detail

/// Applies one key = value pair; unknown keys are configuration errors.
inline void apply_config_value(RunConfig& cfg, const std::string& key,
                               const std::string& value) {
    using detail::parse_double;
    using detail::parse_int;
    if (key == "setup") cfg.setup = value;
    else if (key == "dim") cfg.dim = parse_int(value, key);
    else if (key == "Re") cfg.Re = parse_double(value, key);
    else if (key == "Rb") cfg.Rb = parse_double(value, key, true);
    else if (key == "Fr") cfg.Fr = parse_double(value, key, true);
    else if (key == "eps") cfg.eps = parse_double(value, key);
    else if (key == "ell") cfg.ell = parse_double(value, key);
    else if (key == "dsigma") cfg.dsigma = parse_double(value, key);
    else if (key == "ds") cfg.ds = parse_double(value, key);
    else if (key == "dt") cfg.dt = parse_double(value, key);
    else if (key == "t_end") cfg.t_end = parse_double(value, key);
    else if (key == "radau_stages") cfg.radau_stages = parse_int(value, key);
    else if (key == "snapshot_every") cfg.snapshot_every = parse_int(value, key);
    else if (key == "output") cfg.output = value;
    else if (key == "newton_tol") cfg.newton_tol = parse_double(value, key);
    else if (key == "newton_max_iterations") cfg.newton_max_iterations = parse_int(value, key);
    else if (key == "steady_threshold") cfg.steady_threshold = parse_double(value, key);
    else if (key == "converge_mode") cfg.converge_mode = value;
    else if (key == "converge_levels") cfg.converge_levels = parse_int(value, key);
    else if (key == "jobs") cfg.jobs = parse_int(value, key);
    else throw ConfigError("unknown config key: " + key);
}

/// Cheap structural validation beyond the domain checks in to_params().
inline void validate_config(const RunConfig& cfg) {
    if (cfg.setup != "a" && cfg.setup != "b")
        throw ConfigError("setup must be 'a' or 'b'");
    if (cfg.dim != 2 && cfg.dim != 3) throw ConfigError("dim must be 2 or 3");
    if (cfg.radau_stages != 1 && cfg.radau_stages != 2)
        throw ConfigError("radau_stages must be 1 or 2");
    if (!(cfg.t_end > 0)) throw ConfigError("t_end must be positive");
    if (cfg.dt < 0) throw ConfigError("dt must be positive");
    if (!(cfg.newton_tol > 0)) throw ConfigError("newton_tol must be positive");
    if (cfg.newton_max_iterations < 1) throw ConfigError("newton_max_iterations must be >= 1");
    if (cfg.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
    if (cfg.converge_mode != "time" && cfg.converge_mode != "space")
        throw ConfigError("converge_mode must be 'time' or 'space'");
    if (cfg.converge_levels < 3) throw ConfigError("converge_levels must be >= 3");
    try {
        cfg.to_params();
        cfg.cell_size();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

/// Parses a flat key = value file with '#' comments.
inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_config_value(cfg, detail::trim(line.substr(0, eq)),
                           detail::trim(line.substr(eq + 1)));
    }
    return cfg;
}

/// Sweep file: one `run = config-path` line per member, optional jobs key.
struct SweepConfig {
    std::vector<std::string> runs;
    int jobs = 0;
};

inline SweepConfig parse_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep file: " + path);
    SweepConfig sw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key == "run") sw.runs.push_back(value);
        else if (key == "jobs") sw.jobs = detail::parse_int(value, key);
        else throw ConfigError("unknown sweep key: " + key);
    }
    if (sw.runs.empty()) throw ConfigError("sweep file lists no runs");
    return sw;
}

}  // namespace spinrod
