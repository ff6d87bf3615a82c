#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinrod/assembly.hpp"
#include "spinrod/linear_solve.hpp"
#include "spinrod/models.hpp"
#include "spinrod/newton.hpp"
#include "spinrod/rotation.hpp"

namespace spinrod {

/// Coefficients of an implicit Runge-Kutta scheme with up to two stages.
struct ButcherTableau {
    int s = 1;
    std::array<std::array<double, 2>, 2> a{};
    std::array<double, 2> b{};
    std::array<double, 2> c{};
};

/// Radau IIa coefficients; s = 1 is the implicit Euler method.
inline ButcherTableau radau_tableau(int s) {
    ButcherTableau t;
    t.s = s;
    if (s == 1) {
        t.a[0][0] = 1.0;
        t.b[0] = 1.0;
        t.c[0] = 1.0;
    } else if (s == 2) {
        t.a = {{{5.0 / 12.0, -1.0 / 12.0}, {3.0 / 4.0, 1.0 / 4.0}}};
        t.b = {3.0 / 4.0, 1.0 / 4.0};
        t.c = {1.0 / 3.0, 1.0};
    } else {
        throw std::domain_error("radau_tableau: only s = 1, 2 are provided");
    }
    return t;
}

/// Weights A^{-T} b of the algebraic-variable update. For a stiffly accurate
/// scheme these equal the last canonical basis vector.
inline std::array<double, 2> stiff_update_weights(const ButcherTableau& t) {
    if (t.s == 1) return {t.b[0] / t.a[0][0], 0.0};
    // solve A^T w = b for s = 2
    const double a11 = t.a[0][0], a12 = t.a[0][1], a21 = t.a[1][0], a22 = t.a[1][1];
    const double det = a11 * a22 - a12 * a21;
    if (det == 0) throw std::runtime_error("stiff_update_weights: singular tableau");
    const double w0 = (a22 * t.b[0] - a21 * t.b[1]) / det;
    const double w1 = (-a12 * t.b[0] + a11 * t.b[1]) / det;
    return {w0, w1};
}

/// max_i |(A^{-T} b)_i - delta_{i,s}|, numerically zero for Radau IIa.
inline double stiff_accuracy_defect(const ButcherTableau& t) {
    const auto w = stiff_update_weights(t);
    double d = 0;
    for (int i = 0; i < t.s; ++i)
        d = std::max(d, std::abs(w[i] - (i == t.s - 1 ? 1.0 : 0.0)));
    return d;
}

/// Step failure with the Newton iteration trace attached.
struct StepFailure : std::runtime_error {
    StepFailure(double time, NewtonResult nr, const std::string& what_arg)
        : std::runtime_error(what_arg + " at t = " + std::to_string(time) +
                             "\n" + nr.trace()),
          t(time), newton(std::move(nr)) {}
    double t;
    NewtonResult newton;
};

// ---------------------------------------------------------------------------
// Generic semi-explicit DAE step (dense Newton), for small systems
// ---------------------------------------------------------------------------

/// d/dt x_r = rhs_r for differential rows, 0 = rhs_r for algebraic rows.
struct DaeSystem {
    int n = 0;
    std::vector<bool> algebraic;
    std::function<std::vector<double>(double t, const std::vector<double>& x)> rhs;
};

/// One implicit Runge-Kutta step of the semi-explicit DAE: solves the coupled
/// stage system with damped Newton, applies the update formulas
///   u_{n+1} = u_n + dt sum_j b_j f_j,   v_{n+1} = v_n + sum_j w_j (l_j - v_n)
/// with w = A^{-T} b, and checks that both coincide with the last stage for
/// stiffly accurate tableaus.
inline std::vector<double> dae_step(const DaeSystem& sys, const std::vector<double>& xn,
                                    double t, double dt, const ButcherTableau& tab,
                                    const NewtonOptions& opts = {}) {
    if (!(dt > 0)) throw std::domain_error("dae_step: dt must be positive");
    const int n = sys.n, s = tab.s;
    if (static_cast<int>(xn.size()) != n || static_cast<int>(sys.algebraic.size()) != n)
        throw std::invalid_argument("dae_step: inconsistent system sizes");

    auto stage_rhs = [&](const std::vector<double>& x) {
        std::vector<std::vector<double>> rhs(s);
        for (int j = 0; j < s; ++j) {
            std::vector<double> xs(x.begin() + j * n, x.begin() + (j + 1) * n);
            rhs[j] = sys.rhs(t + tab.c[j] * dt, xs);
        }
        return rhs;
    };
    auto residual = [&](const std::vector<double>& x) {
        const auto rhs = stage_rhs(x);
        std::vector<double> f(static_cast<std::size_t>(s) * n);
        for (int j = 0; j < s; ++j)
            for (int r = 0; r < n; ++r) {
                if (sys.algebraic[r]) {
                    f[j * n + r] = rhs[j][r];
                } else {
                    double acc = xn[r];
                    for (int m = 0; m < s; ++m) acc += dt * tab.a[j][m] * rhs[m][r];
                    f[j * n + r] = x[j * n + r] - acc;
                }
            }
        return f;
    };

    std::vector<double> x0(static_cast<std::size_t>(s) * n);
    for (int j = 0; j < s; ++j)
        for (int r = 0; r < n; ++r) x0[j * n + r] = xn[r];

    NewtonResult nr;
    try {
        nr = newton_solve(residual, std::move(x0), opts);
    } catch (const std::exception& e) {
        throw StepFailure(t, {}, std::string("dae_step: stage solve failed: ") + e.what());
    }
    if (!nr.converged) throw StepFailure(t, nr, "dae_step: Newton did not converge");

    const auto rhs = stage_rhs(nr.x);
    const auto w = stiff_update_weights(tab);
    std::vector<double> out(n);
    for (int r = 0; r < n; ++r) {
        if (sys.algebraic[r]) {
            double acc = xn[r];
            for (int j = 0; j < s; ++j) acc += w[j] * (nr.x[j * n + r] - xn[r]);
            out[r] = acc;
        } else {
            double acc = xn[r];
            for (int j = 0; j < s; ++j) acc += dt * tab.b[j] * rhs[j][r];
            out[r] = acc;
        }
    }
    // stiff accuracy: the update must coincide with the last stage, which is
    // then accepted as the step result
    double defect = 0;
    for (int r = 0; r < n; ++r)
        defect = std::max(defect, std::abs(out[r] - nr.x[(s - 1) * n + r]));
    if (defect > std::max(100.0 * opts.tol_residual, 1e-8))
        throw StepFailure(t, nr, "dae_step: update disagrees with last stage");
    return std::vector<double>(nr.x.begin() + (s - 1) * n, nr.x.end());
}

// ---------------------------------------------------------------------------
// Rod stepper: banded Newton over all stages and cells
// ---------------------------------------------------------------------------

template <class Model>
struct StepResult {
    std::vector<typename Model::State> cells;
    int newton_iterations = 0;
    double residual_norm = 0;
    double update_consistency = 0;  ///< |b-weighted update - last stage|, max norm
    double mass_influx_dt = 0;      ///< dt-weighted boundary area flux (spatial set-up)
    double mass_outflux_dt = 0;
};

namespace detail {

template <class Model>
typename Model::State state_from_z(const typename Model::Row& z);

template <>
inline LagrangianState3D state_from_z<LagrangianModel3D>(const LagrangianState3D::Row& z) {
    return LagrangianState3D::unpack(z);
}
template <>
inline LagrangianState2D state_from_z<LagrangianModel2D>(const LagrangianState2D::Row& z) {
    return LagrangianState2D::unpack(z);
}
template <>
inline EulerianState3D state_from_z<EulerianModel3D>(const EulerianState3D::Row& z) {
    EulerianState3D s = EulerianState3D::unpack(z);
    if (!(s.A > 0))
        throw std::domain_error("state_from_z: cross-sectional area must stay positive");
    const double A2 = s.A * s.A;
    s.v = {z[14] / s.A, z[15] / s.A, z[16] / s.A};
    s.omega = {z[17] / A2, z[18] / A2, z[19] / (2.0 * A2)};
    return s;
}
template <>
inline EulerianState2D state_from_z<EulerianModel2D>(const EulerianState2D::Row& z) {
    EulerianState2D s = EulerianState2D::unpack(z);
    if (!(s.A > 0))
        throw std::domain_error("state_from_z: cross-sectional area must stay positive");
    s.v = {z[7] / s.A, z[8] / s.A};
    s.omega = z[9] / (s.A * s.A);
    return s;
}

template <class State>
void renormalize_quaternion(State& s) {
    if constexpr (requires { s.q; }) s.q = quat_normalize(s.q);
}

}  // namespace detail

/// One Radau step of the semi-discrete rod system. All stages of all cells
/// are solved in one damped Newton iteration with a forward-difference
/// Jacobian assembled by cell coloring into a banded matrix. For the growing
/// set-up the caller activates new cells before stepping so they enter as
/// stage unknowns.
template <class Model>
StepResult<Model> dae_step(const std::vector<typename Model::State>& cells_old,
                           double t, double dt, const ButcherTableau& tab,
                           const NewtonOptions& opts, double dcell,
                           const DimensionlessParams& params) {
    using State = typename Model::State;
    using Row = typename Model::Row;
    constexpr int K = Model::kComp;
    const int n_cells = static_cast<int>(cells_old.size());
    const int s = tab.s;
    const int n_unknowns = n_cells * s * K;
    if (n_cells < 1) throw std::invalid_argument("dae_step: empty cell field");
    if (!(dt > 0)) throw std::domain_error("dae_step: dt must be positive");

    static const auto var_classes = State::var_classes();

    std::vector<Row> zn(n_cells);
    for (int i = 0; i < n_cells; ++i) zn[i] = cells_old[i].z();

    auto unpack_stage = [&](const std::vector<double>& x, int j) {
        std::vector<State> field(n_cells);
        Row row;
        for (int i = 0; i < n_cells; ++i) {
            const double* base = x.data() + (static_cast<std::size_t>(i) * s + j) * K;
            for (int c = 0; c < K; ++c) row[c] = base[c];
            field[i] = State::unpack(row);
        }
        return field;
    };

    struct StageEval {
        std::vector<std::vector<State>> fields;
        std::vector<std::vector<Row>> rhs;
        std::vector<std::vector<Row>> z;
    };
    auto evaluate = [&](const std::vector<double>& x) {
        StageEval ev;
        ev.fields.resize(s);
        ev.rhs.resize(s);
        ev.z.resize(s);
        for (int j = 0; j < s; ++j) {
            ev.fields[j] = unpack_stage(x, j);
            ev.rhs[j] = semidiscrete_rhs<Model>(ev.fields[j], dcell, params);
            ev.z[j].resize(n_cells);
            for (int i = 0; i < n_cells; ++i) ev.z[j][i] = ev.fields[j][i].z();
        }
        return ev;
    };
    auto residual = [&](const std::vector<double>& x) {
        const StageEval ev = evaluate(x);
        std::vector<double> f(n_unknowns);
        for (int i = 0; i < n_cells; ++i)
            for (int j = 0; j < s; ++j) {
                double* out = f.data() + (static_cast<std::size_t>(i) * s + j) * K;
                for (int c = 0; c < K; ++c) {
                    if (var_classes[c] == VarClass::Algebraic) {
                        out[c] = ev.rhs[j][i][c];
                    } else {
                        double acc = zn[i][c];
                        for (int m = 0; m < s; ++m) acc += dt * tab.a[j][m] * ev.rhs[m][i][c];
                        out[c] = ev.z[j][i][c] - acc;
                    }
                }
            }
        return f;
    };

    const int band = 2 * s * K - 1;
    auto linear_step = [&](const std::vector<double>& x, const std::vector<double>& f) {
        BandedMatrix jac(n_unknowns, band, band);
        std::vector<double> xp = x;
        std::vector<double> h(n_cells);
        // cells three apart do not share residual rows, so one evaluation
        // carries one (stage, comp) column for every third cell
        for (int color = 0; color < 3 && color < n_cells; ++color) {
            for (int j = 0; j < s; ++j)
                for (int c = 0; c < K; ++c) {
                    for (int i = color; i < n_cells; i += 3) {
                        const std::size_t idx = (static_cast<std::size_t>(i) * s + j) * K + c;
                        h[i] = opts.jacobian_perturbation * std::max(1.0, std::abs(x[idx]));
                        xp[idx] = x[idx] + h[i];
                    }
                    const std::vector<double> fp = residual(xp);
                    for (int i = color; i < n_cells; i += 3) {
                        const std::size_t col = (static_cast<std::size_t>(i) * s + j) * K + c;
                        xp[col] = x[col];
                        const int row_lo = std::max(0, i - 1) * s * K;
                        const int row_hi = std::min(n_cells, i + 2) * s * K;
                        for (int row = row_lo; row < row_hi; ++row) {
                            const double d = (fp[row] - f[row]) / h[i];
                            if (d != 0.0) jac.at(row, static_cast<int>(col)) = d;
                        }
                    }
                }
        }
        BandedLU lu(std::move(jac));
        std::vector<double> rhs(n_unknowns);
        for (int i = 0; i < n_unknowns; ++i) rhs[i] = -f[i];
        return lu.solve(std::move(rhs));
    };

    std::vector<double> x0(n_unknowns);
    for (int i = 0; i < n_cells; ++i) {
        const Row packed = cells_old[i].pack();
        for (int j = 0; j < s; ++j) {
            double* base = x0.data() + (static_cast<std::size_t>(i) * s + j) * K;
            for (int c = 0; c < K; ++c) base[c] = packed[c];
        }
    }

    NewtonResult nr;
    try {
        nr = detail::newton_core(residual, linear_step, std::move(x0), opts);
    } catch (const std::exception& e) {
        throw StepFailure(t, {}, std::string("dae_step: stage solve failed: ") + e.what());
    }
    if (!nr.converged)
        throw StepFailure(t, nr, "dae_step: stage Newton did not converge "
                                 "(consider refining dt or the grid)");

    const StageEval ev = evaluate(nr.x);
    const auto w = stiff_update_weights(tab);

    StepResult<Model> result;
    result.cells.resize(n_cells);
    result.newton_iterations = nr.iterations;
    result.residual_norm = nr.residual_norm;

    for (int i = 0; i < n_cells; ++i) {
        Row znew;
        for (int c = 0; c < K; ++c) {
            double acc = zn[i][c];
            for (int j = 0; j < s; ++j) acc += dt * tab.b[j] * ev.rhs[j][i][c];
            znew[c] = acc;
        }
        State snew = detail::state_from_z<Model>(znew);
        const Row last = ev.fields[s - 1][i].pack();
        Row formula = snew.pack();
        for (int c = 0; c < K; ++c) {
            if (var_classes[c] != VarClass::Algebraic) continue;
            const Row old_packed = cells_old[i].pack();
            double acc = old_packed[c];
            for (int j = 0; j < s; ++j)
                acc += w[j] * (ev.fields[j][i].pack()[c] - old_packed[c]);
            formula[c] = acc;
        }
        double defect = 0;
        for (int c = 0; c < K; ++c) defect = std::max(defect, std::abs(formula[c] - last[c]));
        result.update_consistency = std::max(result.update_consistency, defect);
        // stiff accuracy: accept the last stage, which carries the algebraic
        // constraints exactly as solved; the b-weighted update (asserted above
        // to coincide) would reach the same state through one more roundtrip
        State out = ev.fields[s - 1][i];
        detail::renormalize_quaternion(out);
        result.cells[i] = out;
    }
    if (result.update_consistency > std::max(100.0 * opts.tol_residual, 1e-8))
        throw StepFailure(t, nr, "dae_step: update disagrees with last stage");

    if constexpr (Model::kHasArea) {
        const auto bin = Model::boundary_in(params);
        for (int j = 0; j < s; ++j) {
            const auto& outcell = ev.fields[j][n_cells - 1];
            result.mass_influx_dt += dt * tab.b[j] * bin.u * bin.A;
            result.mass_outflux_dt += dt * tab.b[j] * outcell.u * outcell.A;
        }
    }
    return result;
}

}  // namespace spinrod
