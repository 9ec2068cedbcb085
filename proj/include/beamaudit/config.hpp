#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "experiment.hpp"

namespace beamaudit
{
//---------------------------------------------------------------------------//
/*!
 * Flat run configuration, held in the units named by its keys.
 *
 * This is the file-level model: values are stored exactly as written so a
 * write/load cycle is lossless. Conversion to SI happens in to_setup().
 */
struct RunConfig
{
    // Beam
    double energy_ev{1200};
    double energy_spread_ev{0};
    double theta_max_deg{15};
    double spot_radius_mm{0.5};
    std::uint64_t particles{10000};
    std::uint64_t seed{1};
    std::string angular_law{"uniform"};

    // Fields
    double b0_mt{2.70};
    double toroid_perturbation{0.25};
    double toroid_width_cm{1.0};
    double leakage_epsilon{0};
    double leakage_azimuth_deg{0};
    double toroid_current_a{0};
    double toroid_tesla_per_amp{0.05};
    double toroid_core_area_cm2{1.0};

    // Electrode potentials; unset source potential follows -energy_ev
    std::optional<double> source_potential_v;
    double source_ramp_cm{1.0};
    double grid_bias_v{-5};
    double grid_ramp_mm{2};
    double plate_potential_v{0};

    // Apparatus
    double l_cm{27};
    double gap_cm{1.5};
    double toroid_z_cm{5};
    double toroid_inner_diameter_cm{2.6};
    double toroid_outer_diameter_cm{6};
    double toroid_offset_x_mm{0};
    double toroid_offset_y_mm{0};
    double grid_pitch_mm{1};
    double grid_wire_radius_mm{0.1};
    std::string grid_wires_along{"y"};
    double chamber_radius_cm{5};

    // Dynamics
    double dt_divisor{200};
    double t_max_us{2};

    // Secondaries
    double secondary_yield{1};
    double secondary_energy_ev{3};

    // Output
    std::string out_dir{"."};
    std::uint64_t trajectory_stride{0};
    std::uint64_t trajectory_particles{1};

    friend bool operator==(RunConfig const&, RunConfig const&) = default;
};

//! Configuration file could not be opened.
class ConfigFileError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Malformed line, unknown or repeated key, or unparsable value.
class ConfigParseError : public std::runtime_error
{
  public:
    ConfigParseError(std::string key, std::string const& what);
    std::string const& key() const noexcept { return key_; }

  private:
    std::string key_;
};

//! Parse "key = value" lines; '#' starts a comment.
RunConfig parse_config(std::string_view text);

//! Read, parse, and validate a configuration file.
RunConfig load_config(std::string const& path);

//! Every key with its value, in a fixed order, loadable by parse_config.
std::string write_config(RunConfig const& cfg);

//! Names of all recognised keys in output order.
std::vector<std::string> config_keys();

//! FNV-1a hash of the canonical serialization, ignoring out_dir.
std::uint64_t config_fingerprint(RunConfig const& cfg);
std::string fingerprint_hex(std::uint64_t fp);

//! Convert to SI and validate all invariants; throws InvalidConfig.
SimulationSetup to_setup(RunConfig const& cfg);
}  // namespace beamaudit
