#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "spinrod/config.hpp"
#include "spinrod/csv.hpp"
#include "spinrod/radau.hpp"
#include "spinrod/record.hpp"
#include "spinrod/verify.hpp"

namespace spinrod {

namespace detail {

template <class Model>
double cell_center(int i, int n_cells, double dcell) {
    if constexpr (Model::kGrowing)
        return -(static_cast<double>(n_cells - i) - 0.5) * dcell;
    else
        return (static_cast<double>(i) + 0.5) * dcell;
}

template <class Model>
void write_snapshot_csv(const std::string& path, const RunRecord& rec,
                        const Snapshot& snap) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << "# spinrod snapshot\n";
    os << "# t = " << fp17(snap.t) << "\n";
    for (const auto& [k, v] : rec.config.echo()) os << "# " << k << " = " << v << "\n";
    os << "cell_index," << (Model::kGrowing ? "sigma_center" : "s_center");
    for (const auto& name : rec.comp_names) os << ',' << name;
    os << '\n';
    const int nc = snap.n_cells(rec.ncomp);
    for (int i = 0; i < nc; ++i) {
        os << i << ',' << fp17(cell_center<Model>(i, nc, rec.cell_size));
        for (int c = 0; c < rec.ncomp; ++c)
            os << ',' << fp17(snap.data[static_cast<std::size_t>(i) * rec.ncomp + c]);
        os << '\n';
    }
}

inline void write_summary_csv(const std::string& path, const RunRecord& rec) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << "# spinrod run summary\n";
    for (const auto& [k, v] : rec.config.echo()) os << "# " << k << " = " << v << "\n";
    os << "# steps = " << rec.stats.steps << "\n";
    os << "# newton_iterations = " << rec.stats.newton_iterations << "\n";
    os << "# max_step_residual = " << fp17(rec.stats.max_step_residual) << "\n";
    os << "# mass_defect_accum = " << fp17(rec.stats.mass_defect_accum) << "\n";
    if (rec.stats.steady_reached)
        os << "# steady_reached_at = " << fp17(rec.stats.steady_reached_time) << "\n";
    os << "snapshot,t,n_cells,mass_flux_integral\n";
    for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
        const auto& s = rec.snapshots[k];
        os << k << ',' << fp17(s.t) << ',' << s.n_cells(rec.ncomp) << ','
           << fp17(s.mass_flux_integral) << '\n';
    }
}

template <class Model>
void write_outputs(const RunRecord& rec) {
    if (rec.config.output.empty()) return;
    namespace fs = std::filesystem;
    fs::create_directories(rec.config.output);
    char name[64];
    for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
        std::snprintf(name, sizeof name, "snap_%06zu.csv", k);
        write_snapshot_csv<Model>((fs::path(rec.config.output) / name).string(), rec,
                                  rec.snapshots[k]);
    }
    write_summary_csv((fs::path(rec.config.output) / "summary.csv").string(), rec);
}

template <class Model>
std::vector<typename Model::State> initial_field(const RunConfig& cfg,
                                                 const DimensionlessParams& params,
                                                 double dcell) {
    std::vector<typename Model::State> cells;
    if constexpr (!Model::kGrowing) {
        const int n = static_cast<int>(std::lround(cfg.ell / dcell));
        cells.reserve(n);
        for (int i = 0; i < n; ++i)
            cells.push_back(Model::initial((i + 0.5) * dcell, params));
    }
    return cells;
}

}  // namespace detail

/// Time integration driver shared by the simulate and steady commands. For
/// set-up a, cells extruded during a step join the unknowns of the next one;
/// time stepping starts once the first cell has completely left the nozzle.
template <class Model>
RunRecord simulate_impl(const RunConfig& cfg, bool steady_mode) {
    const DimensionlessParams params = cfg.to_params();
    const double dcell = cfg.cell_size();
    const double dt = cfg.default_dt();
    const ButcherTableau tab = radau_tableau(cfg.radau_stages);
    NewtonOptions nopts;
    nopts.tol_residual = cfg.newton_tol;
    nopts.max_iterations = cfg.newton_max_iterations;

    RunRecord rec;
    rec.config = cfg;
    rec.ncomp = Model::kComp;
    rec.cell_size = dcell;
    rec.comp_names = component_names<Model>();

    auto cells = detail::initial_field<Model>(cfg, params, dcell);
    double t = 0;
    double mass_flux_integral = 0;

    auto take_snapshot = [&](double time) {
        if (!rec.snapshots.empty() && rec.snapshots.back().t == time) return;
        Snapshot s;
        s.t = time;
        s.data = flatten<Model>(cells);
        s.mass_flux_integral = mass_flux_integral;
        rec.snapshots.push_back(std::move(s));
    };
    take_snapshot(0.0);

    const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
    bool stopped = false;
    while (t < cfg.t_end - t_eps && !stopped) {
        const double dt_step = std::min(dt, cfg.t_end - t);
        if (dt_step <= t_eps) break;  // roundoff sliver at t_end
        if (cells.empty()) {
            // no dynamic cell has completely left the nozzle yet
            if constexpr (Model::kGrowing) grow<Model>(cells, t, dt_step, dcell, params);
            t += dt_step;
            continue;
        }
        double sum_area_before = 0;
        if constexpr (Model::kHasArea)
            for (const auto& c : cells) sum_area_before += c.A;

        StepResult<Model> res;
        try {
            res = dae_step<Model>(cells, t, dt_step, tab, nopts, dcell, params);
        } catch (StepFailure&) {
            rec.stats.newton_failures += 1;
            throw;
        }
        cells = std::move(res.cells);
        // cells extruded during this step become unknowns of the next one
        if constexpr (Model::kGrowing) grow<Model>(cells, t, dt_step, dcell, params);
        t += dt_step;
        rec.stats.steps += 1;
        rec.stats.newton_iterations += res.newton_iterations;
        rec.stats.max_step_residual = std::max(rec.stats.max_step_residual, res.residual_norm);
        rec.stats.max_update_consistency =
            std::max(rec.stats.max_update_consistency, res.update_consistency);
        if constexpr (Model::kHasQuaternion) {
            for (const auto& c : cells)
                rec.stats.max_quat_norm_defect =
                    std::max(rec.stats.max_quat_norm_defect, std::abs(norm(c.q) - 1.0));
        }
        if constexpr (Model::kHasArea) {
            double sum_area_after = 0;
            for (const auto& c : cells) sum_area_after += c.A;
            const double defect = (sum_area_after - sum_area_before) * dcell -
                                  (res.mass_influx_dt - res.mass_outflux_dt);
            rec.stats.mass_defect_accum += std::abs(defect);
            mass_flux_integral += res.mass_influx_dt - res.mass_outflux_dt;
        }
        if (cfg.snapshot_every > 0 && rec.stats.steps % cfg.snapshot_every == 0 &&
            t < cfg.t_end - t_eps)
            take_snapshot(t);
        if (steady_mode) {
            const double sr = steady_residual<Model>(cells, dcell, params);
            rec.stats.final_steady_residual = sr;
            if (sr < cfg.steady_threshold) {
                rec.stats.steady_reached = true;
                rec.stats.steady_reached_time = t;
                stopped = true;
            }
        }
    }
    take_snapshot(t);
    if (steady_mode && !cells.empty())
        rec.stats.final_steady_residual = steady_residual<Model>(cells, dcell, params);
    detail::write_outputs<Model>(rec);
    return rec;
}

/// Dispatches the four set-up/dimension combinations onto the template.
template <class Fn>
auto dispatch_model(const RunConfig& cfg, Fn&& fn) {
    if (cfg.setup == "a") {
        if (cfg.dim == 3) return fn(LagrangianModel3D{});
        return fn(LagrangianModel2D{});
    }
    if (cfg.dim == 3) return fn(EulerianModel3D{});
    return fn(EulerianModel2D{});
}

inline RunRecord run_simulate(const RunConfig& cfg) {
    validate_config(cfg);
    return dispatch_model(cfg, [&](auto model) {
        using Model = decltype(model);
        return simulate_impl<Model>(cfg, false);
    });
}

inline RunRecord run_steady(const RunConfig& cfg) {
    validate_config(cfg);
    return dispatch_model(cfg, [&](auto model) {
        using Model = decltype(model);
        return simulate_impl<Model>(cfg, true);
    });
}

namespace detail {

/// Restriction onto a grid coarser by factor two: pairwise cell averages.
inline std::vector<double> restrict_half(const std::vector<double>& fine, int ncomp) {
    const int n_fine = static_cast<int>(fine.size()) / ncomp;
    std::vector<double> coarse(static_cast<std::size_t>(n_fine / 2) * ncomp);
    for (int i = 0; i < n_fine / 2; ++i)
        for (int c = 0; c < ncomp; ++c)
            coarse[static_cast<std::size_t>(i) * ncomp + c] =
                0.5 * (fine[static_cast<std::size_t>(2 * i) * ncomp + c] +
                       fine[static_cast<std::size_t>(2 * i + 1) * ncomp + c]);
    return coarse;
}

inline std::vector<RunRecord> run_members(const std::vector<RunConfig>& cfgs, int jobs) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int workers = std::max(1, jobs > 0 ? jobs : (hw > 0 ? hw : 1));
    std::vector<RunRecord> out(cfgs.size());
    std::size_t next = 0;
    std::mutex m;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::lock_guard<std::mutex> lock(m);
                if (next >= cfgs.size() || error) return;
                k = next++;
            }
            try {
                out[k] = run_simulate(cfgs[k]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_workers = std::min<std::size_t>(workers, cfgs.size());
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace detail

/// Temporal or spatial self-convergence study. Time mode holds the grid and
/// halves dt per level against a reference at dt_min/4; space mode halves the
/// cell size and compares successive levels under pairwise-average
/// restriction.
inline ConvergenceTable run_converge(const RunConfig& cfg) {
    validate_config(cfg);
    const int levels = cfg.converge_levels;
    ConvergenceTable table;

    const auto classes = classify_variables(cfg.to_params());

    if (cfg.converge_mode == "time") {
        const double dt0 = cfg.default_dt();
        std::vector<RunConfig> members;
        for (int l = 0; l < levels; ++l) {
            RunConfig c = cfg;
            c.dt = dt0 / std::pow(2.0, l);
            c.snapshot_every = 0;
            c.output.clear();
            members.push_back(c);
        }
        RunConfig ref = cfg;
        ref.dt = members.back().dt / 4.0;
        ref.snapshot_every = 0;
        ref.output.clear();
        members.push_back(ref);

        auto recs = detail::run_members(members, cfg.jobs);
        const auto& fref = recs.back().snapshots.back().data;
        for (int l = 0; l < levels; ++l) {
            const auto& f = recs[l].snapshots.back().data;
            if (f.size() != fref.size())
                throw std::runtime_error("run_converge: member grids diverged");
            ConvergenceRow row;
            row.step = members[l].dt;
            row.err_diff = l2_error(f, fref, recs[l].cell_size, classes,
                                    CompSubset::Differential);
            row.err_alg = l2_error(f, fref, recs[l].cell_size, classes,
                                   CompSubset::Algebraic);
            table.rows.push_back(row);
        }
    } else {
        std::vector<RunConfig> members;
        for (int l = 0; l < levels; ++l) {
            RunConfig c = cfg;
            const double h = cfg.cell_size() / std::pow(2.0, l);
            if (cfg.setup == "a") c.dsigma = h; else c.ds = h;
            if (cfg.dt == 0) c.dt = cfg.default_dt();  // keep dt fixed across levels
            c.snapshot_every = 0;
            c.output.clear();
            members.push_back(c);
        }
        auto recs = detail::run_members(members, cfg.jobs);
        // error of level l measured against the restricted level l+1
        for (int l = 0; l + 1 < levels; ++l) {
            const auto fine = detail::restrict_half(recs[l + 1].snapshots.back().data,
                                                    static_cast<int>(classes.size()));
            const auto& coarse = recs[l].snapshots.back().data;
            if (fine.size() != coarse.size())
                throw std::runtime_error("run_converge: grids do not nest");
            ConvergenceRow row;
            row.step = members[l].setup == "a" ? members[l].dsigma : members[l].ds;
            row.err_diff = l2_error(coarse, fine, recs[l].cell_size, classes,
                                    CompSubset::Differential);
            row.err_alg = l2_error(coarse, fine, recs[l].cell_size, classes,
                                   CompSubset::Algebraic);
            table.rows.push_back(row);
        }
    }
    table.compute_orders();
    if (!cfg.output.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.output);
        std::ofstream os((fs::path(cfg.output) / "converge.csv").string());
        table.write_csv(os);
    }
    return table;
}

/// Runs every member config of a sweep on a small worker pool.
inline std::vector<RunRecord> run_sweep(const SweepConfig& sweep) {
    std::vector<RunConfig> cfgs;
    for (const auto& path : sweep.runs) {
        RunConfig c = parse_config_file(path);
        validate_config(c);
        cfgs.push_back(c);
    }
    return detail::run_members(cfgs, sweep.jobs);
}

}  // namespace spinrod
