#include <cmath>
#include <doctest.h>
#include <fstream>

#include "beamaudit/config.hpp"
#include "beamaudit/errors.hpp"

using namespace beamaudit;

TEST_CASE("empty text gives the default configuration")
{
    RunConfig const cfg = parse_config("");
    CHECK(cfg == RunConfig{});
    CHECK(cfg.energy_ev == 1200);
    CHECK(cfg.b0_mt == 2.70);
    CHECK(cfg.l_cm == 27);
    CHECK_FALSE(cfg.source_potential_v.has_value());
    SimulationSetup const s = to_setup(cfg);
    CHECK(s.b0 == doctest::Approx(2.7e-3));
    CHECK(s.apparatus.grid_z == doctest::Approx(0.27));
    CHECK(s.electrode_profile().source_potential == -1200);
}

TEST_CASE("comments, blanks and aliases")
{
    RunConfig const cfg = parse_config(
        "# anchor\n\n  energy_ev = 600   # beam\nb0 = 1.89\r\nl=27\n");
    CHECK(cfg.energy_ev == 600);
    CHECK(cfg.b0_mt == 1.89);
    CHECK(cfg.l_cm == 27);
}

TEST_CASE("parse errors name the key")
{
    auto key_of = [](std::string const& text) {
        try
        {
            parse_config(text);
        }
        catch (ConfigParseError const& e)
        {
            return e.key();
        }
        return std::string("<none>");
    };
    CHECK(key_of("flux_weber = 1\n") == "flux_weber");
    CHECK(key_of("b0_mt = fast\n") == "b0_mt");
    CHECK(key_of("b0_mt = 2.7 mT\n") == "b0_mt");
    CHECK(key_of("particles = -3\n") == "particles");
    CHECK(key_of("seed = 1.5\n") == "seed");
    CHECK(key_of("energy_ev = 1\nenergy_ev = 2\n") == "energy_ev");
    CHECK(key_of("b0_mt =\n") == "b0_mt");
    CHECK(key_of("just words\n").empty());
}

TEST_CASE("invariant violations name the key")
{
    auto key_of = [](std::string const& text) {
        try
        {
            to_setup(parse_config(text));
        }
        catch (InvalidConfig const& e)
        {
            return e.key();
        }
        return std::string("<none>");
    };
    CHECK(key_of("b0_mt = -1\n") == "b0_mt");
    CHECK(key_of("b0_mt = 0\n") == "b0_mt");
    CHECK(key_of("energy_ev = -5\n") == "energy_ev");
    CHECK(key_of("theta_max_deg = 95\n") == "theta_max_deg");
    CHECK(key_of("particles = 0\n") == "particles");
    CHECK(key_of("toroid_z_cm = 40\n") == "toroid_z_cm");
    CHECK(key_of("grid_wire_radius_mm = 0.6\n") == "grid_wire_radius_mm");
    CHECK(key_of("gap_cm = 0\n") == "gap_cm");
    CHECK(key_of("dt_divisor = 10\n") == "dt_divisor");
    CHECK(key_of("angular_law = flat\n") == "angular_law");
    CHECK(key_of("grid_wires_along = z\n") == "grid_wires_along");
    CHECK(key_of("leakage_epsilon = -1\n") == "leakage_epsilon");
    CHECK(key_of("secondary_yield = -1\n") == "secondary_yield");
    CHECK(key_of("grid_ramp_mm = 20\n") == "grid_ramp_mm");
    CHECK(key_of("toroid_perturbation = 2\n") == "toroid_perturbation");
    CHECK(key_of("spot_radius_mm = -1\n") == "spot_radius_mm");
}

TEST_CASE("write then parse round trips exactly")
{
    RunConfig cfg;
    CHECK(parse_config(write_config(cfg)) == cfg);

    cfg.energy_ev = 800.0000000000001;
    cfg.b0_mt = 2.25;
    cfg.theta_max_deg = 1.0 / 3.0;
    cfg.particles = 123456789012ULL;
    cfg.seed = 18446744073709551615ULL;
    cfg.angular_law = "gaussian";
    cfg.source_potential_v = -1234.5678;
    cfg.leakage_epsilon = 1e-300;
    cfg.toroid_offset_x_mm = -3;
    cfg.grid_wires_along = "x";
    cfg.out_dir = "runs/a b";
    RunConfig const back = parse_config(write_config(cfg));
    CHECK(back == cfg);
    CHECK(write_config(back) == write_config(cfg));
}

TEST_CASE("written file lists every canonical key once")
{
    std::string const text = write_config(RunConfig{});
    for (auto const& k : config_keys())
    {
        auto const first = text.find("\n" + k + " = ");
        bool const at_start = text.rfind(k + " = ", 0) == 0;
        CHECK((first != std::string::npos || at_start));
    }
    CHECK(config_keys().size() == 38);
}

TEST_CASE("fingerprint tracks content")
{
    RunConfig a;
    RunConfig b;
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    b.seed = 2;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    RunConfig c;
    c.out_dir = "elsewhere";
    CHECK(config_fingerprint(a) == config_fingerprint(c));
    CHECK(fingerprint_hex(0x1234).size() == 16);
    CHECK(fingerprint_hex(0x1234) == "0000000000001234");
}

TEST_CASE("load_config file handling")
{
    CHECK_THROWS_AS(load_config("/nonexistent/beam.cfg"), ConfigFileError);

    std::string const path = "test_config_tmp.cfg";
    {
        std::ofstream os(path);
        os << "energy_ev = 1200\nb0_mt = 2.70\nl_cm = 27\n";
    }
    RunConfig const cfg = load_config(path);
    CHECK(cfg.b0_mt == 2.70);
    {
        std::ofstream os(path);
        os << "b0_mt = -1\n";
    }
    CHECK_THROWS_AS(load_config(path), InvalidConfig);
    std::remove(path.c_str());
}

TEST_CASE("anchor files load")
{
    for (char const* name :
         {"anchor_1200ev.cfg", "anchor_600ev.cfg", "anchor_800ev.cfg"})
    {
        std::string const path = std::string(BEAMAUDIT_SOURCE_DIR) + "/configs/"
                                 + name;
        CHECK_NOTHROW(load_config(path));
    }
}

TEST_CASE("unit conversion")
{
    RunConfig cfg;
    cfg.spot_radius_mm = 0.25;
    cfg.toroid_core_area_cm2 = 2;
    cfg.t_max_us = 3;
    cfg.toroid_offset_y_mm = 1.5;
    cfg.leakage_azimuth_deg = 90;
    SimulationSetup const s = to_setup(cfg);
    CHECK(s.beam.spot_radius == doctest::Approx(2.5e-4));
    CHECK(s.toroid_field.core_area == doctest::Approx(2e-4));
    CHECK(s.t_max == doctest::Approx(3e-6));
    CHECK(s.apparatus.toroid.offset_y == doctest::Approx(1.5e-3));
    CHECK(s.toroid_field.leakage_azimuth == doctest::Approx(std::acos(-1.0) / 2));
    cfg.source_potential_v = -1500;
    CHECK(to_setup(cfg).electrode_profile().source_potential == -1500);
}
