#pragma once

#include <cstdint>
#include <vector>

#include "particle.hpp"

namespace beamaudit
{
enum class AngularLaw
{
    uniform_solid_angle,  //!< uniform in cos(theta) within the cone
    gaussian,  //!< |theta| half-normal with sigma = theta_max/2, truncated
};

//! Electron-gun source description.
struct BeamSpec
{
    double kinetic_energy{1200};  //!< drift-region energy [eV]
    double energy_spread{0};  //!< rms [eV]
    double theta_max{0.2617993877991494};  //!< half-angle [rad] (15 deg)
    double spot_radius{0.0005};  //!< [m]
    std::uint64_t count{10000};
    std::uint64_t seed{1};
    AngularLaw angular_law{AngularLaw::uniform_solid_angle};

    void validate() const;
};

//! Non-relativistic speed sqrt(2 e E / m_e) for a kinetic energy in eV.
double speed_from_energy(double energy_ev);

//! Sample one primary; a pure function of (spec, index).
ParticleState sample_primary(BeamSpec const& spec, std::uint64_t index);

//! All primaries of the beam at the launch plane z = 0.
std::vector<ParticleState> sample_beam(BeamSpec const& spec);

//! Mean axial speed of a cone that is uniform in solid angle.
double mean_axial_speed(double speed, double theta_max);
}  // namespace beamaudit
