#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinrod {

/// Which of the two spinning set-ups is being solved.
enum class Setup {
    LagrangianInflow,       ///< growing material domain, free jet end
    EulerianInflowOutflow,  ///< fixed spatial domain, inflow and outflow
};

/// Dimensional process parameters at the nozzle/drum.
struct PhysicalParams {
    double density = 0;             ///< mass density [kg/m^3]
    double viscosity = 0;           ///< dynamic viscosity [Pa s]
    double nozzle_velocity = 0;     ///< extrusion speed U [m/s]
    double drum_radius = 0;         ///< drum radius R [m]
    double nozzle_diameter = 0;     ///< nozzle diameter D [m]
    double jet_length = 0;          ///< jet length L [m]
    double rotation_frequency = 0;  ///< drum frequency Omega [1/s], >= 0
    double gravity = 0;             ///< gravitational acceleration g [m/s^2], >= 0
};

/// Dimensionless groups plus the geometry/set-up switches that select the model.
///
/// The rotation and gravity groups are stored as reciprocals (1/Rb, 1/Fr) so
/// the no-rotation and no-gravity limits are exact zeros.
struct DimensionlessParams {
    double Re = 1;       ///< Reynolds number, > 0
    double Rb_inv = 0;   ///< 1/Rossby = Omega R / U, >= 0
    double Fr_inv = 0;   ///< 1/Froude = sqrt(g R) / U, >= 0
    double eps = 0.1;    ///< slenderness ratio D/R, > 0
    double ell = 1;      ///< domain length L/R, > 0
    int dim = 2;         ///< 2 or 3
    Setup setup = Setup::EulerianInflowOutflow;

    void validate() const {
        if (!(Re > 0) || !std::isfinite(Re)) throw std::domain_error("Re must be positive");
        if (!(eps > 0) || !std::isfinite(eps)) throw std::domain_error("eps must be positive");
        if (!(ell > 0) || !std::isfinite(ell)) throw std::domain_error("ell must be positive");
        if (!(Rb_inv >= 0) || !std::isfinite(Rb_inv))
            throw std::domain_error("1/Rb must be finite and >= 0");
        if (!(Fr_inv >= 0) || !std::isfinite(Fr_inv))
            throw std::domain_error("1/Fr must be finite and >= 0");
        if (dim != 2 && dim != 3) throw std::domain_error("dim must be 2 or 3");
    }
};

/// Forms the five dimensionless groups from the physical process parameters.
inline DimensionlessParams nondimensionalize(const PhysicalParams& p, int dim = 3,
                                             Setup setup = Setup::EulerianInflowOutflow) {
    auto require_positive = [](double v, const std::string& name) {
        if (!(v > 0) || !std::isfinite(v))
            throw std::domain_error(name + " must be positive");
    };
    require_positive(p.density, "density");
    require_positive(p.viscosity, "viscosity");
    require_positive(p.nozzle_velocity, "nozzle_velocity");
    require_positive(p.drum_radius, "drum_radius");
    require_positive(p.nozzle_diameter, "nozzle_diameter");
    require_positive(p.jet_length, "jet_length");
    if (p.rotation_frequency < 0) throw std::domain_error("rotation_frequency must be >= 0");
    if (p.gravity < 0) throw std::domain_error("gravity must be >= 0");

    DimensionlessParams d;
    d.Re = p.density * p.nozzle_velocity * p.drum_radius / p.viscosity;
    d.Rb_inv = p.rotation_frequency * p.drum_radius / p.nozzle_velocity;
    d.Fr_inv = std::sqrt(p.gravity * p.drum_radius) / p.nozzle_velocity;
    d.eps = p.nozzle_diameter / p.drum_radius;
    d.ell = p.jet_length / p.drum_radius;
    d.dim = dim;
    d.setup = setup;
    d.validate();
    return d;
}

}  // namespace spinrod
