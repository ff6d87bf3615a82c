#pragma once

#include "spinrod/model_eulerian.hpp"
#include "spinrod/model_lagrangian.hpp"
#include "spinrod/params.hpp"
#include "spinrod/state.hpp"

namespace spinrod {

// Uniform compile-time interface over the four set-up/dimension variants so
// the finite-volume assembly, the integrator and the drivers can be written
// once. Boundary conventions shared by all variants:
//  - first edge: upwind flux from the boundary state, downwind from cell 1,
//    central at the boundary state with a one-sided difference quotient;
//  - last edge: upwind from cell N, downwind/central vanish (stress-free).

template <class S>
struct ModelFor;

struct LagrangianModel3D {
    using State = LagrangianState3D;
    using Row = State::Row;
    static constexpr int kComp = State::kComp;
    static constexpr bool kGrowing = true;
    static constexpr bool kHasQuaternion = true;
    static constexpr bool kHasArea = false;

    static Row flux_up(const State& s, const DimensionlessParams& p) { return lag_flux_up(s, p); }
    static Row flux_down(const State& s, const DimensionlessParams& p) { return lag_flux_down(s, p); }
    static Row flux_central_at(const State& at, const State& l, const State& r, double d,
                               const DimensionlessParams& p) {
        return lag_flux_central_at(at, l, r, d, p);
    }
    static State mean(const State& a, const State& b) { return mean_state(a, b); }
    static Row source(const State& prev, const State& cur, double d, const DimensionlessParams& p) {
        Row out = lag_source_p(prev, cur, d, p);
        const Row q = lag_source_q(prev, cur, d, p);
        for (int i = 0; i < kComp; ++i) out[i] += q[i];
        return out;
    }
    static State boundary_in(const DimensionlessParams&) { return lag_nozzle_state3d(); }
};

struct LagrangianModel2D {
    using State = LagrangianState2D;
    using Row = State::Row;
    static constexpr int kComp = State::kComp;
    static constexpr bool kGrowing = true;
    static constexpr bool kHasQuaternion = false;
    static constexpr bool kHasArea = false;

    static Row flux_up(const State& s, const DimensionlessParams& p) { return lag_flux_up(s, p); }
    static Row flux_down(const State& s, const DimensionlessParams& p) { return lag_flux_down(s, p); }
    static Row flux_central_at(const State& at, const State& l, const State& r, double d,
                               const DimensionlessParams& p) {
        return lag_flux_central_at(at, l, r, d, p);
    }
    static State mean(const State& a, const State& b) { return mean_state(a, b); }
    static Row source(const State& prev, const State& cur, double d, const DimensionlessParams& p) {
        return lag_source_q(prev, cur, d, p);
    }
    static State boundary_in(const DimensionlessParams&) { return lag_nozzle_state2d(); }
};

struct EulerianModel3D {
    using State = EulerianState3D;
    using Row = State::Row;
    static constexpr int kComp = State::kComp;
    static constexpr bool kGrowing = false;
    static constexpr bool kHasQuaternion = true;
    static constexpr bool kHasArea = true;
    static constexpr int kAreaRow = 13;

    static Row flux_up(const State& s, const DimensionlessParams& p) { return eul_flux_up(s, p); }
    static Row flux_down(const State& s, const DimensionlessParams& p) { return eul_flux_down(s, p); }
    static Row flux_central_at(const State& at, const State& l, const State& r, double d,
                               const DimensionlessParams& p) {
        return eul_flux_central_at(at, l, r, d, p);
    }
    static State mean(const State& a, const State& b) { return mean_state(a, b); }
    static Row source(const State& prev, const State& cur, double d, const DimensionlessParams& p) {
        return eul_source(prev, cur, d, p);
    }
    static State boundary_in(const DimensionlessParams&) { return eul_inflow_state3d(); }
    static State initial(double s, const DimensionlessParams& p) { return eul_initial_state3d(s, p); }
};

struct EulerianModel2D {
    using State = EulerianState2D;
    using Row = State::Row;
    static constexpr int kComp = State::kComp;
    static constexpr bool kGrowing = false;
    static constexpr bool kHasQuaternion = false;
    static constexpr bool kHasArea = true;
    static constexpr int kAreaRow = 6;

    static Row flux_up(const State& s, const DimensionlessParams& p) { return eul_flux_up(s, p); }
    static Row flux_down(const State& s, const DimensionlessParams& p) { return eul_flux_down(s, p); }
    static Row flux_central_at(const State& at, const State& l, const State& r, double d,
                               const DimensionlessParams& p) {
        return eul_flux_central_at(at, l, r, d, p);
    }
    static State mean(const State& a, const State& b) { return mean_state(a, b); }
    static Row source(const State& prev, const State& cur, double d, const DimensionlessParams& p) {
        return eul_source(prev, cur, d, p);
    }
    static State boundary_in(const DimensionlessParams&) { return eul_inflow_state2d(); }
    static State initial(double s, const DimensionlessParams& p) { return eul_initial_state2d(s, p); }
};

template <> struct ModelFor<LagrangianState3D> { using type = LagrangianModel3D; };
template <> struct ModelFor<LagrangianState2D> { using type = LagrangianModel2D; };
template <> struct ModelFor<EulerianState3D> { using type = EulerianModel3D; };
template <> struct ModelFor<EulerianState2D> { using type = EulerianModel2D; };

}  // namespace spinrod
