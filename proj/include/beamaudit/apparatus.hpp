#pragma once

#include <vector>

#include "fields.hpp"
#include "particle.hpp"
#include "rng.hpp"

namespace beamaudit
{
struct ToroidGeometry
{
    double z_center{0.05};  //!< [m]
    double inner_diameter{0.026};  //!< [m]
    double outer_diameter{0.06};  //!< [m]
    double offset_x{0};  //!< axis offset from the beam axis [m]
    double offset_y{0};  //!< [m]

    double inner_radius() const { return 0.5 * inner_diameter; }
    double outer_radius() const { return 0.5 * outer_diameter; }
};

enum class WireOrientation
{
    along_x,  //!< wires parallel to x, periodic in y
    along_y,  //!< wires parallel to y, periodic in x
};

//! Parallel-wire grid; wire axes sit at integer multiples of the pitch.
struct GridGeometry
{
    double pitch{0.001};  //!< [m]
    double wire_radius{0.0001};  //!< [m]
    WireOrientation orientation{WireOrientation::along_y};

    //! Geometric opacity to a uniform flood, 2 r_w / pitch.
    double fill_factor() const { return 2 * wire_radius / pitch; }
};

//---------------------------------------------------------------------------//
/*!
 * Chamber geometry: launch plane at z = 0, toroid, grid at L, plate at
 * L + gap, cylindrical wall, and the electrode potentials.
 */
struct Apparatus
{
    double grid_z{0.27};  //!< source-to-grid distance L [m]
    double grid_plate_gap{0.015};  //!< [m]
    ToroidGeometry toroid;
    GridGeometry grid;
    double chamber_radius{0.05};  //!< [m]
    PotentialProfile potentials;

    double plate_z() const { return grid_z + grid_plate_gap; }
    //! Cathode surface; anything reaching it has returned to the source.
    double source_plane_z() const { return -potentials.source_ramp; }

    //! Electrode potentials with the grid and plate positions filled in.
    PotentialProfile profile() const;

    //! Throws InvalidConfig naming the offending parameter.
    void validate() const;
};

//---------------------------------------------------------------------------//
enum class ApertureResult
{
    pass,
    blocked,
};

enum class GridResult
{
    pass,
    absorbed,
};

//! Whether a particle at the toroid plane clears the toroid body.
ApertureResult
toroid_aperture_check(Vec3 const& position, ToroidGeometry const& toroid);

//! Signed offset from the nearest wire axis along the periodic coordinate.
double nearest_wire_offset(Vec3 const& position, GridGeometry const& grid);

//! Whether a particle crossing the grid plane hits a wire.
GridResult grid_interaction(Vec3 const& position, GridGeometry const& grid);

/*!
 * Impact point and outward normal on a wire for a particle absorbed at the
 * grid plane, approaching with the given axial direction (+1 or -1).
 */
struct WireImpact
{
    Vec3 point;
    Vec3 normal;
};
WireImpact wire_impact(Vec3 const& plane_point, double approach_sign,
                       Apparatus const& apparatus);

//---------------------------------------------------------------------------//
struct SecondaryYieldParams
{
    double yield_0{1.0};  //!< mean secondaries per impact
    double emission_energy_mean{3.0};  //!< [eV]

    void validate() const;
};

/*!
 * Emit secondaries from an impact.
 *
 * Count is Poisson(yield_0), energies exponential with the configured mean,
 * directions cosine-distributed about the surface normal (unit vector
 * pointing into the vacuum).
 */
std::vector<ParticleState> secondary_emission(ParticleState const& impact,
                                              Vec3 const& normal,
                                              SecondaryYieldParams const& params,
                                              CounterRng& rng);
}  // namespace beamaudit
