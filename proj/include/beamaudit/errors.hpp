#pragma once

#include <stdexcept>
#include <string>

namespace beamaudit
{
//! A parameter or combination of parameters violates a model invariant.
class InvalidConfig : public std::invalid_argument
{
  public:
    InvalidConfig(std::string key, std::string const& what)
        : std::invalid_argument(key.empty() ? what : key + ": " + what)
        , key_(std::move(key))
    {
    }

    //! Offending configuration key (may be empty for derived checks).
    std::string const& key() const noexcept { return key_; }

  private:
    std::string key_;
};
}  // namespace beamaudit
