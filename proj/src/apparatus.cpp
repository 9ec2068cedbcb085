#include "beamaudit/apparatus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beamaudit/constants.hpp"
#include "beamaudit/errors.hpp"

namespace beamaudit
{
void Apparatus::validate() const
{
    if (!(grid_z > 0))
    {
        throw InvalidConfig("l_cm", "source-to-grid distance must be positive");
    }
    if (!(grid_plate_gap > 0))
    {
        throw InvalidConfig("gap_cm", "grid-plate gap must be positive");
    }
    if (!(toroid.z_center > 0 && toroid.z_center < grid_z))
    {
        throw InvalidConfig("toroid_z_cm",
                            "toroid must sit between source and grid");
    }
    if (!(toroid.inner_diameter > 0))
    {
        throw InvalidConfig("toroid_inner_diameter_cm", "must be positive");
    }
    if (!(toroid.outer_diameter > toroid.inner_diameter))
    {
        throw InvalidConfig("toroid_outer_diameter_cm",
                            "must exceed the inner diameter");
    }
    if (!(grid.wire_radius >= 0))
    {
        throw InvalidConfig("grid_wire_radius_mm", "must be non-negative");
    }
    if (!(grid.pitch > 2 * grid.wire_radius))
    {
        throw InvalidConfig("grid_wire_radius_mm",
                            "pitch must exceed the wire diameter");
    }
    if (!(chamber_radius > 0))
    {
        throw InvalidConfig("chamber_radius_cm", "must be positive");
    }
    // Throws on overlapping ramps.
    (void)this->profile().knots();
}

PotentialProfile Apparatus::profile() const
{
    PotentialProfile p = potentials;
    p.grid_z = grid_z;
    p.plate_z = plate_z();
    return p;
}

//---------------------------------------------------------------------------//
ApertureResult
toroid_aperture_check(Vec3 const& position, ToroidGeometry const& toroid)
{
    double const d = std::hypot(position.x - toroid.offset_x,
                                position.y - toroid.offset_y);
    if (d >= toroid.inner_radius() && d < toroid.outer_radius())
    {
        return ApertureResult::blocked;
    }
    return ApertureResult::pass;
}

namespace
{
double periodic_coordinate(Vec3 const& p, GridGeometry const& grid)
{
    return grid.orientation == WireOrientation::along_y ? p.x : p.y;
}
}  // namespace

double nearest_wire_offset(Vec3 const& position, GridGeometry const& grid)
{
    double const c = periodic_coordinate(position, grid);
    return c - grid.pitch * std::round(c / grid.pitch);
}

GridResult grid_interaction(Vec3 const& position, GridGeometry const& grid)
{
    if (std::abs(nearest_wire_offset(position, grid)) <= grid.wire_radius
        && grid.wire_radius > 0)
    {
        return GridResult::absorbed;
    }
    return GridResult::pass;
}

WireImpact wire_impact(Vec3 const& plane_point, double approach_sign,
                       Apparatus const& apparatus)
{
    GridGeometry const& grid = apparatus.grid;
    double const rw = grid.wire_radius;
    double const d = std::clamp(nearest_wire_offset(plane_point, grid), -rw, rw);
    double const nz = -std::copysign(std::sqrt(rw * rw - d * d), approach_sign);

    WireImpact result;
    result.point = plane_point;
    result.point.z = apparatus.grid_z + nz;
    Vec3 n{0, 0, nz};
    if (grid.orientation == WireOrientation::along_y)
    {
        n.x = d;
    }
    else
    {
        n.y = d;
    }
    result.normal = n * (1.0 / rw);
    return result;
}

//---------------------------------------------------------------------------//
void SecondaryYieldParams::validate() const
{
    if (!(yield_0 >= 0))
    {
        throw InvalidConfig("secondary_yield", "must be non-negative");
    }
    if (!(emission_energy_mean > 0))
    {
        throw InvalidConfig("secondary_energy_ev", "must be positive");
    }
}

std::vector<ParticleState> secondary_emission(ParticleState const& impact,
                                              Vec3 const& normal,
                                              SecondaryYieldParams const& params,
                                              CounterRng& rng)
{
    if (impact.in_flight())
    {
        throw std::invalid_argument("secondary emission needs a terminated "
                                    "impact");
    }
    unsigned const n = rng.poisson(params.yield_0);
    std::vector<ParticleState> result;
    result.reserve(n);

    // Orthonormal frame (t1, t2, normal)
    Vec3 const helper = std::abs(normal.z) < 0.9 ? Vec3{0, 0, 1}
                                                 : Vec3{1, 0, 0};
    Vec3 t1 = cross(helper, normal);
    t1 *= 1.0 / norm(t1);
    Vec3 const t2 = cross(normal, t1);

    for (unsigned i = 0; i < n; ++i)
    {
        double const energy = rng.exponential(params.emission_energy_mean);
        double const speed = std::sqrt(2 * energy * constants::elementary_charge
                                       / constants::electron_mass);
        // Lambert law: sin^2(theta) uniform on [0, 1)
        double const sin2 = rng.uniform();
        double const sin_t = std::sqrt(sin2);
        double const cos_t = std::sqrt(1 - sin2);
        double const phi = constants::two_pi * rng.uniform();
        Vec3 const dir = t1 * (sin_t * std::cos(phi))
                         + t2 * (sin_t * std::sin(phi)) + normal * cos_t;
        result.emplace_back(impact.position, dir * speed, Species::secondary);
    }
    return result;
}
}  // namespace beamaudit
