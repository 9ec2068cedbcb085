#include "beamaudit/particle.hpp"

#include <stdexcept>

namespace beamaudit
{
std::string_view to_string(Status s)
{
    switch (s)
    {
        case Status::in_flight:
            return "in_flight";
        case Status::absorbed_toroid:
            return "absorbed_toroid";
        case Status::absorbed_wire:
            return "absorbed_wire";
        case Status::collected_plate:
            return "collected_plate";
        case Status::lost_wall:
            return "lost_wall";
        case Status::lost_timeout:
            return "lost_timeout";
        case Status::returned_to_source:
            return "returned_to_source";
    }
    return "unknown";
}

std::string_view to_string(Species s)
{
    return s == Species::primary ? "primary" : "secondary";
}

void ParticleState::terminate(Status s)
{
    if (status_ != Status::in_flight)
    {
        throw std::logic_error("particle already terminated as "
                               + std::string(to_string(status_)));
    }
    status_ = s;
}
}  // namespace beamaudit
