#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinrod/csv.hpp"
#include "spinrod/models.hpp"

namespace spinrod {

/// Resolved batch-run configuration. Mirrors the flat key = value config file
/// one to one; unset step sizes are filled by the default rules in the runner.
struct RunConfig {
    std::string setup = "b";  ///< "a" (material, growing) or "b" (spatial, fixed)
    int dim = 2;
    double Re = 1;
    double Rb = std::numeric_limits<double>::infinity();  ///< "inf" = no rotation
    double Fr = std::numeric_limits<double>::infinity();  ///< "inf" = no gravity
    double eps = 0.1;
    double ell = 1;
    double dsigma = 0;  ///< material cell size (set-up a)
    double ds = 0;      ///< spatial cell size (set-up b)
    double dt = 0;      ///< 0 = default rule
    double t_end = 1;
    int radau_stages = 2;
    int snapshot_every = 0;  ///< steps between snapshots; 0 = first/last only
    std::string output;      ///< output directory; empty = no files
    double newton_tol = 1e-10;
    int newton_max_iterations = 25;
    double steady_threshold = 1e-8;
    std::string converge_mode = "time";  ///< "time" or "space"
    int converge_levels = 4;
    int jobs = 0;  ///< worker threads for sweep/converge; 0 = hardware

    DimensionlessParams to_params() const {
        DimensionlessParams p;
        p.Re = Re;
        if (!(Rb > 0)) throw std::domain_error("config: Rb must be positive or inf");
        if (!(Fr > 0)) throw std::domain_error("config: Fr must be positive or inf");
        p.Rb_inv = std::isinf(Rb) ? 0.0 : 1.0 / Rb;
        p.Fr_inv = std::isinf(Fr) ? 0.0 : 1.0 / Fr;
        p.eps = eps;
        p.ell = ell;
        p.dim = dim;
        if (setup == "a") p.setup = Setup::LagrangianInflow;
        else if (setup == "b") p.setup = Setup::EulerianInflowOutflow;
        else throw std::domain_error("config: setup must be 'a' or 'b'");
        p.validate();
        return p;
    }

    /// Cell size for the configured set-up. The spatial domain requires an
    /// integer number of cells.
    double cell_size() const {
        if (setup == "a") {
            if (!(dsigma > 0)) throw std::domain_error("config: dsigma must be positive");
            return dsigma;
        }
        if (!(ds > 0)) throw std::domain_error("config: ds must be positive");
        const double ratio = ell / ds;
        const long n = std::lround(ratio);
        if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
            throw std::domain_error("config: ell/ds must be an integer cell count");
        return ell / static_cast<double>(n);
    }

    /// Default step size: one activation per step for the growing set-up,
    /// 0.9 ds / u_in for the fixed one.
    double default_dt() const {
        if (dt > 0) return dt;
        return setup == "a" ? cell_size() : 0.9 * cell_size();
    }

    std::map<std::string, std::string> echo() const {
        std::map<std::string, std::string> m;
        m["setup"] = setup;
        m["dim"] = std::to_string(dim);
        m["Re"] = fp17(Re);
        m["Rb"] = std::isinf(Rb) ? "inf" : fp17(Rb);
        m["Fr"] = std::isinf(Fr) ? "inf" : fp17(Fr);
        m["eps"] = fp17(eps);
        m["ell"] = fp17(ell);
        if (dsigma > 0) m["dsigma"] = fp17(dsigma);
        if (ds > 0) m["ds"] = fp17(ds);
        m["dt"] = fp17(default_dt());
        m["t_end"] = fp17(t_end);
        m["radau_stages"] = std::to_string(radau_stages);
        m["snapshot_every"] = std::to_string(snapshot_every);
        m["newton_tol"] = fp17(newton_tol);
        m["newton_max_iterations"] = std::to_string(newton_max_iterations);
        return m;
    }
};

struct SolverStats {
    long steps = 0;
    long newton_iterations = 0;
    int newton_failures = 0;
    double max_step_residual = 0;        ///< worst accepted Newton residual
    double max_update_consistency = 0;   ///< worst b-weighted-update defect
    double max_quat_norm_defect = 0;     ///< after renormalization
    double mass_defect_accum = 0;        ///< sum of per-step area-balance defects
    double final_steady_residual = std::numeric_limits<double>::quiet_NaN();
    bool steady_reached = false;
    double steady_reached_time = std::numeric_limits<double>::quiet_NaN();
};

struct Snapshot {
    double t = 0;
    std::vector<double> data;        ///< n_cells x n_comp, row-major
    double mass_flux_integral = 0;   ///< cumulative (influx - outflux) dt
    int n_cells(int ncomp) const { return static_cast<int>(data.size()) / ncomp; }
};

/// Time-stamped record of a run: config echo, snapshots of all cell states,
/// solver statistics.
struct RunRecord {
    RunConfig config;
    int ncomp = 0;
    double cell_size = 0;
    std::vector<std::string> comp_names;
    std::vector<Snapshot> snapshots;
    SolverStats stats;
};

template <class Model>
std::vector<std::string> component_names();

template <>
inline std::vector<std::string> component_names<EulerianModel3D>() {
    return {"n1", "n2", "u", "r1", "r2", "r3", "q0", "q1", "q2", "q3",
            "k1", "k2", "k3", "A", "v1", "v2", "v3", "w1", "w2", "w3"};
}
template <>
inline std::vector<std::string> component_names<EulerianModel2D>() {
    return {"n1", "u", "r1", "r2", "alpha", "kappa", "A", "v1", "v2", "omega"};
}
template <>
inline std::vector<std::string> component_names<LagrangianModel3D>() {
    return {"n1", "n2", "e", "r1", "r2", "r3", "q0", "q1", "q2", "q3",
            "k1", "k2", "k3", "v1", "v2", "v3", "varpi1", "varpi2", "varpi3"};
}
template <>
inline std::vector<std::string> component_names<LagrangianModel2D>() {
    return {"n1", "e", "r1", "r2", "alpha", "kappa", "v1", "v2", "varpi"};
}

template <class Model>
std::vector<double> flatten(const std::vector<typename Model::State>& cells) {
    std::vector<double> out;
    out.reserve(cells.size() * Model::kComp);
    for (const auto& c : cells) {
        const auto row = c.pack();
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

template <class Model>
std::vector<typename Model::State> unflatten(const std::vector<double>& flat) {
    if (flat.size() % Model::kComp != 0)
        throw std::invalid_argument("unflatten: size not a multiple of the component count");
    std::vector<typename Model::State> cells(flat.size() / Model::kComp);
    typename Model::Row row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (int c = 0; c < Model::kComp; ++c) row[c] = flat[i * Model::kComp + c];
        cells[i] = Model::State::unpack(row);
    }
    return cells;
}

}  // namespace spinrod
