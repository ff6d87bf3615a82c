#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinrod/models.hpp"
#include "spinrod/params.hpp"

namespace spinrod {

/// Cell layout bookkeeping. Cells are numbered from the nozzle/inflow side
/// (index 0) to the free end/outflow side. For the growing set-up the number
/// of dynamic cells follows the domain length ell(t) = t.
struct Grid {
    double cell_size = 0;
    double length = 0;     ///< fixed domain length (spatial set-up only)
    bool growing = false;
};

/// floor(ell / dcell) with a small absolute slack so activation instants that
/// land on cell multiples are not lost to accumulated roundoff.
inline int cell_count(double ell, double dcell) {
    if (!(dcell > 0)) throw std::domain_error("cell_count: cell size must be positive");
    if (ell < 0) throw std::domain_error("cell_count: negative domain length");
    return static_cast<int>(std::floor(ell / dcell + 1e-9));
}

/// Appends the cells activated during [t, t + dt] at the nozzle side, each
/// initialized with the nozzle state. Returns the number of cells added.
template <class Model>
int grow(std::vector<typename Model::State>& cells, double t, double dt, double dcell,
         const DimensionlessParams& p) {
    static_assert(Model::kGrowing, "grow applies to the enlarging set-up only");
    if (!(dt > 0)) throw std::domain_error("grow: dt must be positive");
    const int n_now = cell_count(t, dcell);
    const int n_next = cell_count(t + dt, dcell);
    const int added = n_next - n_now;
    if (added > 0)
        cells.insert(cells.begin(), added, Model::boundary_in(p));
    return added;
}

/// Assembled right-hand side of the semi-discrete system for every cell:
/// flux differences over the cell plus the two source terms, with the
/// boundary edges built from the inflow state (one-sided difference quotient)
/// and the stress-free end values.
template <class Model>
std::vector<typename Model::Row> semidiscrete_rhs(
    const std::vector<typename Model::State>& cells, double dcell,
    const DimensionlessParams& p) {
    using Row = typename Model::Row;
    const int n = static_cast<int>(cells.size());
    if (n < 1) throw std::invalid_argument("semidiscrete_rhs: no cells");
    if (!(dcell > 0)) throw std::domain_error("semidiscrete_rhs: cell size must be positive");

    const auto bin = Model::boundary_in(p);

    std::vector<Row> edges(n + 1);
    {
        // inflow/nozzle edge
        Row f = Model::flux_up(bin, p);
        const Row fd = Model::flux_down(cells[0], p);
        const Row fc = Model::flux_central_at(bin, bin, cells[0], dcell, p);
        for (int c = 0; c < Model::kComp; ++c) f[c] += fd[c] + fc[c];
        edges[0] = f;
    }
    for (int i = 1; i < n; ++i) {
        Row f = Model::flux_up(cells[i - 1], p);
        const Row fd = Model::flux_down(cells[i], p);
        const Row fc = Model::flux_central_at(Model::mean(cells[i - 1], cells[i]),
                                              cells[i - 1], cells[i], dcell, p);
        for (int c = 0; c < Model::kComp; ++c) f[c] += fd[c] + fc[c];
        edges[i] = f;
    }
    // free-end/outflow edge: stress-free, only the convective part survives
    edges[n] = Model::flux_up(cells[n - 1], p);

    std::vector<Row> rhs(n);
    for (int i = 0; i < n; ++i) {
        const auto& prev = (i == 0) ? bin : cells[i - 1];
        Row s = Model::source(prev, cells[i], dcell, p);
        for (int c = 0; c < Model::kComp; ++c)
            s[c] += (edges[i + 1][c] - edges[i][c]) / dcell;
        rhs[i] = s;
    }
    return rhs;
}

/// Residual dzdt_i - rhs_i per cell and row. Rows whose z entry is constant
/// zero are pure algebraic constraints when dzdt carries zeros there.
template <class Model>
std::vector<typename Model::Row> semidiscrete_residual(
    const std::vector<typename Model::State>& cells,
    const std::vector<typename Model::Row>& dzdt, double dcell,
    const DimensionlessParams& p) {
    if (dzdt.size() != cells.size())
        throw std::invalid_argument("semidiscrete_residual: dzdt/cell count mismatch");
    auto rhs = semidiscrete_rhs<Model>(cells, dcell, p);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        for (int c = 0; c < Model::kComp; ++c) rhs[i][c] = dzdt[i][c] - rhs[i][c];
    return rhs;
}

}  // namespace spinrod
