#pragma once

#include <string_view>

#include "vec3.hpp"

namespace beamaudit
{
enum class Species
{
    primary,
    secondary,
};

//! Where a particle ended up. Every value except in_flight is terminal.
enum class Status
{
    in_flight,
    absorbed_toroid,
    absorbed_wire,
    collected_plate,
    lost_wall,
    lost_timeout,
    returned_to_source,
};

inline constexpr int num_statuses = 7;

std::string_view to_string(Status s);
std::string_view to_string(Species s);

//---------------------------------------------------------------------------//
/*!
 * Position, velocity, and fate of one electron.
 *
 * Status only ever moves from in-flight to a terminal value.
 */
class ParticleState
{
  public:
    Vec3 position;  //!< [m]
    Vec3 velocity;  //!< [m/s]
    Species species{Species::primary};

    ParticleState() = default;
    ParticleState(Vec3 pos, Vec3 vel, Species sp = Species::primary)
        : position(pos), velocity(vel), species(sp)
    {
    }

    Status status() const { return status_; }
    bool in_flight() const { return status_ == Status::in_flight; }

    //! Mark terminal; throws std::logic_error if already terminal.
    void terminate(Status s);

    double speed() const { return norm(velocity); }
    double axial_speed() const { return velocity.z; }
    double transverse_speed() const { return transverse_norm(velocity); }

  private:
    Status status_{Status::in_flight};
};
}  // namespace beamaudit
