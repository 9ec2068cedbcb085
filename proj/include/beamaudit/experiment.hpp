#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "apparatus.hpp"
#include "beam.hpp"
#include "dynamics.hpp"
#include "fields.hpp"

namespace beamaudit
{
//---------------------------------------------------------------------------//
/*!
 * Everything a shot needs, in SI units.
 *
 * The toroid's axial position is taken from the apparatus geometry; the
 * z_center in toroid_field is overwritten when fields are built.
 */
struct SimulationSetup
{
    BeamSpec beam;
    Apparatus apparatus;
    double b0{2.70e-3};  //!< [T]
    ToroidFieldParams toroid_field;
    SecondaryYieldParams secondaries;
    bool source_follows_energy{true};  //!< source potential = -E/e
    double dt_divisor{200};  //!< dt = T / dt_divisor
    double t_max{2e-6};  //!< [s]

    void validate() const;

    //! Electrode profile for the current beam energy and geometry.
    PotentialProfile electrode_profile() const;
    FieldStack build_fields() const;
    double time_step() const;
};

//---------------------------------------------------------------------------//
struct ShotResult
{
    std::uint64_t launched{0};
    std::array<std::uint64_t, num_statuses> primary_counts{};
    std::array<std::uint64_t, num_statuses> secondary_counts{};
    std::uint64_t secondaries_from_grid{0};
    std::uint64_t secondaries_from_plate{0};
    //! Grid-emitted secondaries collected on the plate.
    std::uint64_t grid_secondaries_to_plate{0};
    //! Plate-emitted secondaries that never came back to the plate.
    std::uint64_t plate_secondaries_escaped{0};
    std::uint64_t reached_grid{0};
    double rms_radius_grid{0};  //!< about the axis [m]

    double fraction(Status s) const;
    double plate_fraction() const { return fraction(Status::collected_plate); }
    double secondary_plate_fraction() const;
    double plate_escape_fraction() const;

    friend bool operator==(ShotResult const&, ShotResult const&) = default;
};

/*!
 * Launch the beam, propagate every primary and one generation of
 * secondaries, and tally where they end up.
 *
 * Bit-identical for a given (setup, seed) regardless of the worker count.
 */
ShotResult run_shot(SimulationSetup const& setup, std::uint64_t seed,
                    unsigned workers = 1);

//---------------------------------------------------------------------------//
enum class SweepParameter
{
    toroid_current,  //!< [A]
    b0,  //!< [T]
    energy,  //!< [eV]
    leakage,  //!< epsilon
    offset,  //!< toroid x offset [m]
};

std::string_view to_string(SweepParameter p);
//! Parse a CLI name; throws InvalidConfig for unknown names.
SweepParameter parse_sweep_parameter(std::string_view name);

//! Copy of the setup with one parameter replaced.
SimulationSetup with_parameter(SimulationSetup setup, SweepParameter p,
                               double value);

struct SweepPoint
{
    double value;
    ShotResult shot;
};

struct SweepResult
{
    SweepParameter parameter{SweepParameter::toroid_current};
    std::vector<SweepPoint> points;
    std::uint64_t config_fingerprint{0};
    std::uint64_t seed{0};
};

//! One shot per value, all with the same seed. Values must be monotone.
SweepResult sweep(SimulationSetup const& setup, SweepParameter parameter,
                  std::vector<double> const& values, std::uint64_t seed,
                  unsigned workers = 1);

//! max - min of the primary plate fraction over a sweep.
double modulation_depth(SweepResult const& result);

//! n evenly spaced values from `from` to `to` inclusive.
std::vector<double> linspace(double from, double to, std::size_t n);

//---------------------------------------------------------------------------//
struct FocalSample
{
    double z;  //!< [m]
    double rms_radius;  //!< about the axis [m]; NaN if no particle arrived
    std::uint64_t count;
};

/*!
 * Rms transverse radius of the beam at each z plane, with toroid and grid
 * interactions switched off. Planes must be sorted ascending.
 */
std::vector<FocalSample> focal_profile(SimulationSetup const& setup,
                                       std::vector<double> const& z_planes,
                                       std::uint64_t seed, unsigned workers = 1);

/*!
 * Positions of local minima of the profile that dip below
 * depth_fraction times the profile maximum.
 */
std::vector<double> profile_minima(std::vector<FocalSample> const& profile,
                                   double depth_fraction = 0.5);

/*!
 * Nominal B0 that puts the first focus on the grid (interference order
 * l = 1 with the beam's mean axial speed), corrected to first order for
 * the toroid core's distortion of the axial field.
 */
double resonant_field(SimulationSetup const& setup);
}  // namespace beamaudit
