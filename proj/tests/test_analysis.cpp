#include <cmath>
#include <doctest.h>

#include "beamaudit/analysis.hpp"
#include "beamaudit/rng.hpp"

using namespace beamaudit;

namespace
{
constexpr double e_charge = 1.602176634e-19;
constexpr double m_e = 9.1093837015e-31;
constexpr double h_planck = 6.62607015e-34;
double const pi = std::acos(-1.0);

double v_of(double ev) { return std::sqrt(2 * ev * e_charge / m_e); }
}  // namespace

TEST_CASE("cyclotron frequency")
{
    CHECK(cyclotron_frequency(2.7e-3) == doctest::Approx(4.75e8).epsilon(1e-3));
    CHECK(cyclotron_frequency(2.7e-3)
          == doctest::Approx(e_charge * 2.7e-3 / m_e).epsilon(1e-15));
    CHECK(cyclotron_frequency(5.4e-3)
          == doctest::Approx(2 * cyclotron_frequency(2.7e-3)));
    CHECK(2 * pi / cyclotron_frequency(2.7e-3)
          == doctest::Approx(1.323e-8).epsilon(1e-3));
}

TEST_CASE("focal length anchors")
{
    CHECK(focal_length(v_of(1200), 2.70e-3) == doctest::Approx(0.27).epsilon(0.02));
    CHECK(focal_length(v_of(1200), 2.70e-3) == doctest::Approx(0.272).epsilon(1e-3));
    CHECK(focal_length(v_of(600), 1.89e-3) == doctest::Approx(0.273).epsilon(0.02));
    double const l600 = focal_length(v_of(600), 1.89e-3);
    CHECK(l600 >= 0.273);
    CHECK(l600 <= 0.275);
    CHECK(focal_length(v_of(800), 2.25e-3) == doctest::Approx(0.265).epsilon(0.02));
    CHECK(focal_length(v_of(800), 2.25e-3) == doctest::Approx(0.266).epsilon(1e-3));
    // Independent oracle
    double const v = v_of(1200);
    CHECK(focal_length(v, 2.7e-3)
          == doctest::Approx(2 * pi * v * m_e / (e_charge * 2.7e-3)).epsilon(1e-14));
}

TEST_CASE("macro wavelength is the focal length")
{
    CounterRng rng(21, CounterRng::Domain::test, 0);
    for (int i = 0; i < 10000; ++i)
    {
        double const v = 1e5 + 5e7 * rng.uniform();
        double const b = 1e-5 + 0.1 * rng.uniform();
        CHECK(macro_wavelength(v, b) == focal_length(v, b));
    }
    double const lam = macro_wavelength(v_of(1200), 2.7e-3);
    CHECK(lam == doctest::Approx(0.27).epsilon(0.02));
    CHECK(lam > 0.05);
    CHECK(macro_wavelength(v_of(1200), 5.4e-3) == doctest::Approx(0.5 * lam));
}

TEST_CASE("interference order")
{
    double const v = v_of(1200);
    double const b = 2.7e-3;
    CHECK(interference_order(focal_length(v, b), v, b) == 1.0);
    CHECK(interference_order(0.27, v, b) == doctest::Approx(0.27 / 0.2718).epsilon(1e-3));
    CHECK(interference_order(0.27, v, b) == doctest::Approx(0.99).epsilon(0.01));
    CHECK(interference_order(0.27, v, 2 * b)
          == doctest::Approx(2 * interference_order(0.27, v, b)));
    CHECK(interference_order(0.27, v, b) == 0.27 / focal_length(v, b));
}

TEST_CASE("field for focal length inverts focal length")
{
    double const v = v_of(1200);
    double const b = field_for_focal_length(v, 0.27);
    CHECK(focal_length(v, b) == doctest::Approx(0.27).epsilon(1e-14));
}

TEST_CASE("larmor radius")
{
    double const b = 2.7e-3;
    CHECK(larmor_radius(0, b) == 0.0);
    CHECK(larmor_radius(2e6, b) == doctest::Approx(2 * larmor_radius(1e6, b)));
    double const vperp = v_of(1200) * std::sin(15 * pi / 180);
    CHECK(larmor_radius(vperp, b) == doctest::Approx(0.011).epsilon(0.02));
    CHECK(larmor_radius(vperp, b)
          == doctest::Approx(vperp * m_e / (e_charge * b)).epsilon(1e-14));
}

TEST_CASE("injection larmor radius")
{
    double const v = v_of(1200);
    double const b = 2.7e-3;
    InjectionLarmor const r = injection_larmor_radius(v, 15 * pi / 180, b);
    CHECK(r.radius == doctest::Approx(0.011).epsilon(0.02));
    CHECK(r.diameter == doctest::Approx(0.022).epsilon(0.02));
    CHECK(r.diameter == 2 * r.radius);
    CHECK(injection_larmor_radius(v, 0, b).radius == 0.0);
    for (double deg : {0.5, 1.0, 2.0, 3.0, 5.0})
    {
        double const th = deg * pi / 180;
        double const a = injection_larmor_radius(v, th, b).radius;
        double const c = larmor_radius(v * std::sin(th), b);
        CHECK(std::abs(a - c) / c < 1e-3);
    }
}

TEST_CASE("de Broglie wavelength")
{
    double const l1200 = de_broglie_wavelength(1200);
    CHECK(l1200 == doctest::Approx(3.54e-11).epsilon(2e-3));
    CHECK(l1200
          == doctest::Approx(h_planck / std::sqrt(2 * m_e * e_charge * 1200)).epsilon(1e-14));
    CHECK(de_broglie_wavelength(4800) == doctest::Approx(0.5 * l1200));
    CHECK(de_broglie_wavelength(300) == doctest::Approx(7.1e-11).epsilon(0.01));
    CHECK(de_broglie_wavelength(300) < 1e-9);
}

TEST_CASE("fringe shift")
{
    CHECK(std::abs(fringe_shift(0.05, 0.27)) == doctest::Approx(0.0135).epsilon(1e-12));
    CHECK(fringe_shift(0, 0.27) == 0.0);
    CHECK(fringe_shift(0.02, 0.27) == doctest::Approx(2 * fringe_shift(0.01, 0.27)));
    CHECK_THROWS(fringe_shift(1.0, 0.27));
}

TEST_CASE("consistency report at defaults")
{
    Apparatus app;
    ConsistencyReport const r = consistency_report(BeamFieldPoint{}, app);
    CHECK(r.l_f == doctest::Approx(0.2718).epsilon(1e-3));
    CHECK(r.lambda_macro == r.l_f);
    CHECK(r.l_f_cos_corrected == doctest::Approx(r.l_f * std::cos(15 * pi / 180)));
    CHECK(r.ratio_lambda_to_gap >= 13);
    CHECK(r.ratio_lambda_to_gap <= 30);
    CHECK(r.ratio_lambda_to_pitch == doctest::Approx(0.2718 / 0.001).epsilon(1e-3));
    CHECK(r.fringe_shift_at_5pct == doctest::Approx(0.0135).epsilon(1e-12));
    CHECK(r.lambda_de_broglie < 1e-9);
    CHECK(r.simply_connected);
    CHECK(r.scale_hierarchy_holds);
    CHECK(r.beam_diameter == doctest::Approx(0.022).epsilon(0.02));
    CHECK(r.toroid_clearance
          == doctest::Approx(0.013 - r.r_l_max).epsilon(1e-12));
    CHECK(r.relativistic_correction == doctest::Approx(1200 * e_charge / (m_e * 299792458.0 * 299792458.0)).epsilon(1e-3));
    CHECK(r.verdicts.size() >= 5);
}

TEST_CASE("gap of 1 cm gives the quoted 25-30 ratio")
{
    Apparatus app;
    app.grid_plate_gap = 0.01;
    ConsistencyReport const r = consistency_report(BeamFieldPoint{}, app);
    CHECK(r.ratio_lambda_to_gap == doctest::Approx(27).epsilon(0.02));
    CHECK(r.ratio_lambda_to_gap >= 25);
    CHECK(r.ratio_lambda_to_gap <= 30);
}

TEST_CASE("scale hierarchy at all three operating points")
{
    Apparatus app;
    for (auto [ev, b] : {std::pair{1200.0, 2.70e-3}, std::pair{600.0, 1.89e-3},
                         std::pair{800.0, 2.25e-3}})
    {
        BeamFieldPoint p;
        p.energy_ev = ev;
        p.b0 = b;
        ConsistencyReport const r = consistency_report(p, app);
        CHECK(r.scale_hierarchy_holds);
        CHECK(r.lambda_de_broglie < 1e-9);
        CHECK(r.lambda_de_broglie < app.grid.pitch);
        CHECK(app.grid.pitch < r.lambda_macro);
    }
}

TEST_CASE("toroid outside the beam is not simply connected")
{
    Apparatus app;
    app.toroid.offset_x = 0.05;  // beam passes outside the ring entirely
    ConsistencyReport const r = consistency_report(BeamFieldPoint{}, app);
    CHECK_FALSE(r.simply_connected);
}

TEST_CASE("report rendering")
{
    ConsistencyReport const r = consistency_report(BeamFieldPoint{}, Apparatus{});
    std::string const text = render_text(r);
    CHECK(text.find("simply connected") != std::string::npos);
    std::string const csv = render_csv(r);
    CHECK(csv.rfind("key,value\n", 0) == 0);
    CHECK(csv.find("\nl_f_m,0.27") != std::string::npos);
    CHECK(csv.find("\nsimply_connected,1\n") != std::string::npos);
}
