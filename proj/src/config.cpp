#include "beamaudit/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "beamaudit/constants.hpp"
#include "beamaudit/errors.hpp"

namespace beamaudit
{
ConfigParseError::ConfigParseError(std::string key, std::string const& what)
    : std::runtime_error(key.empty() ? what : key + ": " + what)
    , key_(std::move(key))
{
}

namespace
{
using Member = std::variant<double RunConfig::*,
                            std::uint64_t RunConfig::*,
                            std::string RunConfig::*,
                            std::optional<double> RunConfig::*>;

struct KeyEntry
{
    char const* name;
    Member member;
    char const* section;  // printed before the first key of a group
};

// clang-format off
std::array<KeyEntry, 44> const key_table{{
    {"energy_ev", &RunConfig::energy_ev, "beam"},
    {"energy_spread_ev", &RunConfig::energy_spread_ev, nullptr},
    {"theta_max_deg", &RunConfig::theta_max_deg, nullptr},
    {"spot_radius_mm", &RunConfig::spot_radius_mm, nullptr},
    {"particles", &RunConfig::particles, nullptr},
    {"seed", &RunConfig::seed, nullptr},
    {"angular_law", &RunConfig::angular_law, nullptr},
    {"b0_mt", &RunConfig::b0_mt, "fields"},
    {"toroid_perturbation", &RunConfig::toroid_perturbation, nullptr},
    {"toroid_width_cm", &RunConfig::toroid_width_cm, nullptr},
    {"leakage_epsilon", &RunConfig::leakage_epsilon, nullptr},
    {"leakage_azimuth_deg", &RunConfig::leakage_azimuth_deg, nullptr},
    {"toroid_current_a", &RunConfig::toroid_current_a, nullptr},
    {"toroid_tesla_per_amp", &RunConfig::toroid_tesla_per_amp, nullptr},
    {"toroid_core_area_cm2", &RunConfig::toroid_core_area_cm2, nullptr},
    {"source_potential_v", &RunConfig::source_potential_v, "electrodes"},
    {"source_ramp_cm", &RunConfig::source_ramp_cm, nullptr},
    {"grid_bias_v", &RunConfig::grid_bias_v, nullptr},
    {"grid_ramp_mm", &RunConfig::grid_ramp_mm, nullptr},
    {"plate_potential_v", &RunConfig::plate_potential_v, nullptr},
    {"l_cm", &RunConfig::l_cm, "apparatus"},
    {"gap_cm", &RunConfig::gap_cm, nullptr},
    {"toroid_z_cm", &RunConfig::toroid_z_cm, nullptr},
    {"toroid_inner_diameter_cm", &RunConfig::toroid_inner_diameter_cm, nullptr},
    {"toroid_outer_diameter_cm", &RunConfig::toroid_outer_diameter_cm, nullptr},
    {"toroid_offset_x_mm", &RunConfig::toroid_offset_x_mm, nullptr},
    {"toroid_offset_y_mm", &RunConfig::toroid_offset_y_mm, nullptr},
    {"grid_pitch_mm", &RunConfig::grid_pitch_mm, nullptr},
    {"grid_wire_radius_mm", &RunConfig::grid_wire_radius_mm, nullptr},
    {"grid_wires_along", &RunConfig::grid_wires_along, nullptr},
    {"chamber_radius_cm", &RunConfig::chamber_radius_cm, nullptr},
    {"dt_divisor", &RunConfig::dt_divisor, "dynamics"},
    {"t_max_us", &RunConfig::t_max_us, nullptr},
    {"secondary_yield", &RunConfig::secondary_yield, "secondaries"},
    {"secondary_energy_ev", &RunConfig::secondary_energy_ev, nullptr},
    {"out_dir", &RunConfig::out_dir, "output"},
    {"trajectory_stride", &RunConfig::trajectory_stride, nullptr},
    {"trajectory_particles", &RunConfig::trajectory_particles, nullptr},
    // Aliases kept out of the canonical output.
    {"b0", &RunConfig::b0_mt, nullptr},
    {"energy", &RunConfig::energy_ev, nullptr},
    {"l", &RunConfig::l_cm, nullptr},
    {"gap", &RunConfig::gap_cm, nullptr},
    {"pitch", &RunConfig::grid_pitch_mm, nullptr},
    {"theta", &RunConfig::theta_max_deg, nullptr},
}};
// clang-format on
constexpr std::size_t num_canonical_keys = 38;

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
    {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value)
{
    double out = 0;
    auto const* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
    {
        throw ConfigParseError(std::string(key),
                               "expected a number, got '" + std::string(value)
                                   + "'");
    }
    return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value)
{
    std::uint64_t out = 0;
    auto const* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
    {
        throw ConfigParseError(std::string(key),
                               "expected a non-negative integer, got '"
                                   + std::string(value) + "'");
    }
    return out;
}

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void assign(RunConfig& cfg, KeyEntry const& entry, std::string_view value)
{
    std::visit(
        [&](auto member) {
            using M = decltype(member);
            if constexpr (std::is_same_v<M, double RunConfig::*>)
            {
                cfg.*member = parse_double(entry.name, value);
            }
            else if constexpr (std::is_same_v<M, std::uint64_t RunConfig::*>)
            {
                cfg.*member = parse_uint(entry.name, value);
            }
            else if constexpr (std::is_same_v<M, std::string RunConfig::*>)
            {
                cfg.*member = std::string(value);
            }
            else
            {
                if (value == "auto")
                {
                    cfg.*member = std::nullopt;
                }
                else
                {
                    cfg.*member = parse_double(entry.name, value);
                }
            }
        },
        entry.member);
}

std::string value_string(RunConfig const& cfg, KeyEntry const& entry)
{
    return std::visit(
        [&](auto member) -> std::string {
            using M = decltype(member);
            if constexpr (std::is_same_v<M, double RunConfig::*>)
            {
                return format_double(cfg.*member);
            }
            else if constexpr (std::is_same_v<M, std::uint64_t RunConfig::*>)
            {
                return std::to_string(cfg.*member);
            }
            else if constexpr (std::is_same_v<M, std::string RunConfig::*>)
            {
                return cfg.*member;
            }
            else
            {
                auto const& opt = cfg.*member;
                return opt ? format_double(*opt) : std::string("auto");
            }
        },
        entry.member);
}
}  // namespace

//---------------------------------------------------------------------------//
RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty())
    {
        auto const nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{}
                                            : text.substr(nl + 1);
        ++line_no;
        if (auto const hash = line.find('#'); hash != std::string_view::npos)
        {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty())
        {
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            throw ConfigParseError("", "line " + std::to_string(line_no)
                                           + ": expected 'key = value'");
        }
        std::string_view const key = trim(line.substr(0, eq));
        std::string_view const value = trim(line.substr(eq + 1));
        KeyEntry const* entry = nullptr;
        for (auto const& e : key_table)
        {
            if (key == e.name)
            {
                entry = &e;
                break;
            }
        }
        if (!entry)
        {
            throw ConfigParseError(std::string(key), "unknown key");
        }
        if (value.empty())
        {
            throw ConfigParseError(std::string(key), "missing value");
        }
        if (!seen.insert(std::string(key)).second)
        {
            throw ConfigParseError(std::string(key), "key given twice");
        }
        assign(cfg, *entry, value);
    }
    return cfg;
}

RunConfig load_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigFileError("cannot open configuration file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    RunConfig cfg = parse_config(ss.str());
    (void)to_setup(cfg);
    return cfg;
}

std::string write_config(RunConfig const& cfg)
{
    std::string out;
    for (std::size_t i = 0; i < num_canonical_keys; ++i)
    {
        auto const& e = key_table[i];
        if (e.section)
        {
            out += (i ? "\n# " : "# ") + std::string(e.section) + '\n';
        }
        out += e.name;
        out += " = ";
        out += value_string(cfg, e);
        out += '\n';
    }
    return out;
}

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < num_canonical_keys; ++i)
    {
        keys.emplace_back(key_table[i].name);
    }
    return keys;
}

std::uint64_t config_fingerprint(RunConfig const& cfg)
{
    RunConfig physics = cfg;
    physics.out_dir = RunConfig{}.out_dir;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : write_config(physics))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fingerprint_hex(std::uint64_t fp)
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fp));
    return buf;
}

//---------------------------------------------------------------------------//
SimulationSetup to_setup(RunConfig const& cfg)
{
    using namespace units;
    SimulationSetup s;

    // Checked first so the error names the key the user wrote.
    if (!(cfg.b0_mt > 0))
    {
        throw InvalidConfig("b0_mt", "axial field must be positive");
    }
    if (!(cfg.energy_ev > 0))
    {
        throw InvalidConfig("energy_ev", "beam energy must be positive");
    }

    s.beam.kinetic_energy = cfg.energy_ev;
    s.beam.energy_spread = cfg.energy_spread_ev;
    s.beam.theta_max = deg_to_rad(cfg.theta_max_deg);
    s.beam.spot_radius = cfg.spot_radius_mm * mm;
    s.beam.count = cfg.particles;
    s.beam.seed = cfg.seed;
    if (cfg.angular_law == "uniform")
    {
        s.beam.angular_law = AngularLaw::uniform_solid_angle;
    }
    else if (cfg.angular_law == "gaussian")
    {
        s.beam.angular_law = AngularLaw::gaussian;
    }
    else
    {
        throw InvalidConfig("angular_law", "expected 'uniform' or 'gaussian'");
    }

    s.b0 = cfg.b0_mt * mT;
    s.toroid_field.core_perturbation_amplitude = cfg.toroid_perturbation;
    s.toroid_field.perturbation_width = cfg.toroid_width_cm * cm;
    s.toroid_field.leakage_coefficient = cfg.leakage_epsilon;
    s.toroid_field.leakage_azimuth = deg_to_rad(cfg.leakage_azimuth_deg);
    s.toroid_field.toroid_current = cfg.toroid_current_a;
    s.toroid_field.core_tesla_per_ampere = cfg.toroid_tesla_per_amp;
    s.toroid_field.core_area = cfg.toroid_core_area_cm2 * cm2;

    Apparatus& a = s.apparatus;
    a.grid_z = cfg.l_cm * cm;
    a.grid_plate_gap = cfg.gap_cm * cm;
    a.toroid.z_center = cfg.toroid_z_cm * cm;
    a.toroid.inner_diameter = cfg.toroid_inner_diameter_cm * cm;
    a.toroid.outer_diameter = cfg.toroid_outer_diameter_cm * cm;
    a.toroid.offset_x = cfg.toroid_offset_x_mm * mm;
    a.toroid.offset_y = cfg.toroid_offset_y_mm * mm;
    a.grid.pitch = cfg.grid_pitch_mm * mm;
    a.grid.wire_radius = cfg.grid_wire_radius_mm * mm;
    if (cfg.grid_wires_along == "y")
    {
        a.grid.orientation = WireOrientation::along_y;
    }
    else if (cfg.grid_wires_along == "x")
    {
        a.grid.orientation = WireOrientation::along_x;
    }
    else
    {
        throw InvalidConfig("grid_wires_along", "expected 'x' or 'y'");
    }
    a.chamber_radius = cfg.chamber_radius_cm * cm;

    s.source_follows_energy = !cfg.source_potential_v.has_value();
    a.potentials.source_potential
        = cfg.source_potential_v.value_or(-cfg.energy_ev);
    a.potentials.source_ramp = cfg.source_ramp_cm * cm;
    a.potentials.grid_bias = cfg.grid_bias_v;
    a.potentials.grid_ramp = cfg.grid_ramp_mm * mm;
    a.potentials.plate_potential = cfg.plate_potential_v;

    s.dt_divisor = cfg.dt_divisor;
    s.t_max = cfg.t_max_us * us;
    s.secondaries.yield_0 = cfg.secondary_yield;
    s.secondaries.emission_energy_mean = cfg.secondary_energy_ev;

    s.validate();
    return s;
}
}  // namespace beamaudit
