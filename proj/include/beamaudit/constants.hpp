#pragma once

#include <numbers>

namespace beamaudit::constants
{
// CODATA 2018 exact / recommended values, SI.
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double planck = 6.62607015e-34;  // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s

inline constexpr double electron_charge = -elementary_charge;
inline constexpr double electron_charge_over_mass
    = electron_charge / electron_mass;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

//! Speed above which the non-relativistic pusher is flagged.
inline constexpr double nonrelativistic_warn_speed = 0.1 * speed_of_light;
}  // namespace beamaudit::constants

namespace beamaudit::units
{
inline constexpr double cm = 1e-2;
inline constexpr double mm = 1e-3;
inline constexpr double mT = 1e-3;
inline constexpr double us = 1e-6;
inline constexpr double cm2 = 1e-4;

inline constexpr double deg_to_rad(double deg)
{
    return deg * std::numbers::pi / 180.0;
}
}  // namespace beamaudit::units
