#include "beamaudit/beam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "beamaudit/constants.hpp"
#include "beamaudit/errors.hpp"
#include "beamaudit/rng.hpp"

namespace beamaudit
{
void BeamSpec::validate() const
{
    if (!(kinetic_energy > 0))
    {
        throw InvalidConfig("energy_ev", "beam energy must be positive");
    }
    if (!(energy_spread >= 0))
    {
        throw InvalidConfig("energy_spread_ev", "must be non-negative");
    }
    if (!(theta_max >= 0 && theta_max < 0.5 * std::numbers::pi))
    {
        throw InvalidConfig("theta_max_deg", "must lie in [0, 90) degrees");
    }
    if (!(spot_radius >= 0))
    {
        throw InvalidConfig("spot_radius_mm", "must be non-negative");
    }
    if (count < 1)
    {
        throw InvalidConfig("particles", "need at least one particle");
    }
    if (!(speed_from_energy(kinetic_energy) < constants::speed_of_light))
    {
        throw InvalidConfig("energy_ev", "beyond the non-relativistic model");
    }
}

double speed_from_energy(double energy_ev)
{
    if (!(energy_ev >= 0))
    {
        throw InvalidConfig("energy_ev", "kinetic energy must be non-negative");
    }
    return std::sqrt(2 * energy_ev * constants::elementary_charge
                     / constants::electron_mass);
}

ParticleState sample_primary(BeamSpec const& spec, std::uint64_t index)
{
    CounterRng rng(spec.seed, CounterRng::Domain::primary, index);

    // Spot: uniform on the disc
    double const r = spec.spot_radius * std::sqrt(rng.uniform());
    double const spot_phi = constants::two_pi * rng.uniform();

    double cos_t = 1;
    if (spec.angular_law == AngularLaw::uniform_solid_angle)
    {
        double const cos_max = std::cos(spec.theta_max);
        cos_t = 1 - rng.uniform() * (1 - cos_max);
    }
    else
    {
        double theta = spec.theta_max;
        // Rejection keeps the draw count bounded in practice; cap anyway.
        for (int i = 0; i < 64 && theta >= spec.theta_max; ++i)
        {
            theta = std::abs(rng.normal()) * 0.5 * spec.theta_max;
        }
        if (theta >= spec.theta_max)
        {
            theta = 0;
        }
        cos_t = std::cos(theta);
    }
    double const sin_t = std::sqrt(std::max(0.0, 1 - cos_t * cos_t));
    double const phi = constants::two_pi * rng.uniform();

    double energy = spec.kinetic_energy;
    if (spec.energy_spread > 0)
    {
        energy = std::max(0.0, energy + spec.energy_spread * rng.normal());
    }
    double const v = speed_from_energy(energy);

    return ParticleState({r * std::cos(spot_phi), r * std::sin(spot_phi), 0},
                         {v * sin_t * std::cos(phi), v * sin_t * std::sin(phi),
                          v * cos_t},
                         Species::primary);
}

std::vector<ParticleState> sample_beam(BeamSpec const& spec)
{
    spec.validate();
    std::vector<ParticleState> result;
    result.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i)
    {
        result.push_back(sample_primary(spec, i));
    }
    return result;
}

double mean_axial_speed(double speed, double theta_max)
{
    return speed * 0.5 * (1 + std::cos(theta_max));
}
}  // namespace beamaudit
