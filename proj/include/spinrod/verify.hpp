#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "spinrod/assembly.hpp"
#include "spinrod/csv.hpp"
#include "spinrod/record.hpp"
#include "spinrod/state.hpp"

namespace spinrod {

enum class CompSubset { All, Differential, Algebraic };

inline bool in_subset(VarClass c, CompSubset s) {
    return s == CompSubset::All ||
           (s == CompSubset::Differential && c == VarClass::Differential) ||
           (s == CompSubset::Algebraic && c == VarClass::Algebraic);
}

/// Discrete L2 norm sqrt(sum_i dcell |phi_i - ref_i|^2) over the requested
/// component subset, on flat n_cells x n_comp data.
inline double l2_error(const std::vector<double>& field, const std::vector<double>& ref,
                       double dcell, const std::vector<VarClass>& classes,
                       CompSubset which = CompSubset::All) {
    if (field.size() != ref.size())
        throw std::invalid_argument("l2_error: field length mismatch");
    const std::size_t ncomp = classes.size();
    if (ncomp == 0 || field.size() % ncomp != 0)
        throw std::invalid_argument("l2_error: bad component count");
    double acc = 0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (!in_subset(classes[i % ncomp], which)) continue;
        const double d = field[i] - ref[i];
        acc += dcell * d * d;
    }
    return std::sqrt(acc);
}

template <class Model>
double l2_error(const std::vector<typename Model::State>& field,
                const std::vector<typename Model::State>& ref, double dcell,
                CompSubset which = CompSubset::All) {
    const auto cls = Model::State::var_classes();
    return l2_error(flatten<Model>(field), flatten<Model>(ref), dcell,
                    std::vector<VarClass>(cls.begin(), cls.end()), which);
}

/// Observed convergence order from errors at step h and h/2.
inline double observed_order(double e_coarse, double e_fine) {
    return std::log2(e_coarse / e_fine);
}

/// Max-norm of the semi-discrete right-hand side with dz/dt = 0 over all
/// cells and rows; vanishes exactly on a steady solution of the scheme.
template <class Model>
double steady_residual(const std::vector<typename Model::State>& cells, double dcell,
                       const DimensionlessParams& p) {
    const auto rhs = semidiscrete_rhs<Model>(cells, dcell, p);
    double m = 0;
    for (const auto& row : rhs)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

/// Max-norm of the algebraic (constraint) rows only.
template <class Model>
double constraint_residual(const std::vector<typename Model::State>& cells, double dcell,
                           const DimensionlessParams& p) {
    const auto rhs = semidiscrete_rhs<Model>(cells, dcell, p);
    const auto cls = Model::State::var_classes();
    double m = 0;
    for (const auto& row : rhs)
        for (int c = 0; c < Model::kComp; ++c)
            if (cls[c] == VarClass::Algebraic) m = std::max(m, std::abs(row[c]));
    return m;
}

/// End-to-end defect of the discrete area balance: change of the total area
/// against the time-integrated boundary fluxes, maximized over snapshots.
inline double mass_balance(const RunRecord& run) {
    if (run.snapshots.empty()) return 0;
    int area_row = -1;
    for (std::size_t c = 0; c < run.comp_names.size(); ++c)
        if (run.comp_names[c] == "A") area_row = static_cast<int>(c);
    if (area_row < 0)
        throw std::invalid_argument("mass_balance: record has no area component");
    auto total_area = [&](const Snapshot& s) {
        double acc = 0;
        for (std::size_t i = area_row; i < s.data.size(); i += run.ncomp) acc += s.data[i];
        return acc * run.cell_size;
    };
    const double a0 = total_area(run.snapshots.front());
    double worst = 0;
    for (const auto& s : run.snapshots)
        worst = std::max(worst, std::abs(total_area(s) - a0 - s.mass_flux_integral));
    return worst;
}

/// Planar angle of a quaternion of the form (q0, q1, 0, 0).
inline double alpha_from_quat(double q0, double q1) {
    return 2.0 * std::atan(1.0) - 2.0 * std::atan2(q1, q0);
}

/// Maps snapshots of a 3d spatial run with planar data onto the 2d layout and
/// returns the worst componentwise deviation from the paired 2d run,
/// including the out-of-plane components of the 3d states (which must stay
/// zero).
inline double planar_embedding_check(const RunRecord& run3d, const RunRecord& run2d) {
    if (run3d.ncomp != EulerianState3D::kComp || run2d.ncomp != EulerianState2D::kComp)
        throw std::invalid_argument("planar_embedding_check: expects 3d and 2d spatial runs");
    const std::size_t n = std::min(run3d.snapshots.size(), run2d.snapshots.size());
    double dev = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = run3d.snapshots[k];
        const auto& b = run2d.snapshots[k];
        if (std::abs(a.t - b.t) > 1e-12)
            throw std::invalid_argument("planar_embedding_check: snapshot times differ");
        const int nc = a.n_cells(run3d.ncomp);
        if (nc != b.n_cells(run2d.ncomp))
            throw std::invalid_argument("planar_embedding_check: cell counts differ");
        for (int i = 0; i < nc; ++i) {
            const double* s3 = a.data.data() + static_cast<std::size_t>(i) * 20;
            const double* s2 = b.data.data() + static_cast<std::size_t>(i) * 10;
            const double mapped[10] = {
                s3[1],                          // n2 -> n1
                s3[2],                          // u
                s3[4], s3[5],                   // r2, r3 -> r1, r2
                alpha_from_quat(s3[6], s3[7]),  // alpha
                s3[10],                         // k1 -> kappa
                s3[13],                         // A
                s3[15], s3[16],                 // v2, v3 -> v1, v2
                s3[17],                         // w1 -> omega
            };
            for (int c = 0; c < 10; ++c) dev = std::max(dev, std::abs(mapped[c] - s2[c]));
            // out-of-plane components of the 3d state
            for (int c : {0, 3, 8, 9, 11, 12, 14, 18, 19})
                dev = std::max(dev, std::abs(s3[c]));
        }
    }
    return dev;
}

struct ConvergenceRow {
    double step = 0;
    double err_diff = 0;
    double err_alg = 0;
    double order_diff = std::numeric_limits<double>::quiet_NaN();
    double order_alg = std::numeric_limits<double>::quiet_NaN();
};

/// Refinement ladder with per-pair observed orders; steps strictly decreasing.
struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;

    void compute_orders() {
        if (!rows.empty()) {
            rows[0].order_diff = std::numeric_limits<double>::quiet_NaN();
            rows[0].order_alg = std::numeric_limits<double>::quiet_NaN();
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double hr = std::log(rows[i - 1].step / rows[i].step);
            rows[i].order_diff = std::log(rows[i - 1].err_diff / rows[i].err_diff) / hr;
            rows[i].order_alg = std::log(rows[i - 1].err_alg / rows[i].err_alg) / hr;
        }
    }

    /// Least-squares log-log slope over all rows.
    double fitted_order(CompSubset which) const {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const auto n = static_cast<double>(rows.size());
        for (const auto& r : rows) {
            const double x = std::log(r.step);
            const double y = std::log(which == CompSubset::Algebraic ? r.err_alg : r.err_diff);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    void write_csv(std::ostream& os) const {
        os << "step,err_diff,err_alg,order_diff,order_alg\n";
        for (const auto& r : rows)
            os << fp17(r.step) << ',' << fp17(r.err_diff) << ',' << fp17(r.err_alg)
               << ',' << fp17(r.order_diff) << ',' << fp17(r.order_alg) << '\n';
    }
};

}  // namespace spinrod
