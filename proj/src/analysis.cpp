#include "beamaudit/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <locale>
#include <sstream>

#include "beamaudit/beam.hpp"
#include "beamaudit/constants.hpp"
#include "beamaudit/errors.hpp"

namespace beamaudit
{
using constants::electron_mass;
using constants::elementary_charge;
using constants::two_pi;

double cyclotron_frequency(double b)
{
    return elementary_charge * b / electron_mass;
}

double focal_length(double v_par, double b)
{
    return two_pi * v_par / cyclotron_frequency(b);
}

double macro_wavelength(double v_par, double b)
{
    double const omega = elementary_charge * b / electron_mass;
    return two_pi * v_par / omega;
}

double interference_order(double l, double v_bar, double b)
{
    return l / focal_length(v_bar, b);
}

double field_for_focal_length(double v_par, double l)
{
    return two_pi * v_par * electron_mass / (elementary_charge * l);
}

double larmor_radius(double v_perp, double b)
{
    return v_perp / cyclotron_frequency(b);
}

InjectionLarmor injection_larmor_radius(double v, double theta, double b)
{
    double const r = focal_length(v, b) * std::sin(theta) / two_pi;
    return {r, 2 * r};
}

double de_broglie_wavelength(double energy_ev)
{
    return constants::planck
           / std::sqrt(2 * electron_mass * elementary_charge * energy_ev);
}

double fringe_shift(double delta_b_over_b, double l)
{
    if (!(std::abs(delta_b_over_b) < 1))
    {
        throw InvalidConfig("delta_b_over_b", "must be smaller than 1");
    }
    double const dlambda_over_lambda = -delta_b_over_b;
    return dlambda_over_lambda * l;
}

//---------------------------------------------------------------------------//
namespace
{
std::string fmt(char const* pattern, double a, double b = 0, double c = 0,
                double d = 0)
{
    char buf[512];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
    return buf;
}
}  // namespace

ConsistencyReport consistency_report(BeamFieldPoint const& point,
                                     Apparatus const& apparatus)
{
    if (!(point.energy_ev > 0 && point.b0 > 0 && point.l > 0
          && point.theta_i_max >= 0))
    {
        throw InvalidConfig("", "operating point values must be positive");
    }
    ConsistencyReport r;
    r.point = point;
    r.speed = speed_from_energy(point.energy_ev);
    r.l_f = focal_length(r.speed, point.b0);
    r.l_f_cos_corrected
        = focal_length(r.speed * std::cos(point.theta_i_max), point.b0);
    r.lambda_macro = macro_wavelength(r.speed, point.b0);
    r.lambda_de_broglie = de_broglie_wavelength(point.energy_ev);
    r.grid_plate_gap = apparatus.grid_plate_gap;
    r.grid_pitch = apparatus.grid.pitch;
    r.ratio_lambda_to_gap = r.lambda_macro / r.grid_plate_gap;
    r.ratio_lambda_to_pitch = r.lambda_macro / r.grid_pitch;
    r.interference_order = interference_order(point.l, r.speed, point.b0);
    r.fringe_shift_at_5pct = std::abs(fringe_shift(0.05, point.l));

    auto const inj
        = injection_larmor_radius(r.speed, point.theta_i_max, point.b0);
    r.r_l_max = inj.radius;
    r.beam_diameter = inj.diameter;
    r.max_excursion
        = 2 * larmor_radius(r.speed * std::sin(point.theta_i_max), point.b0);

    ToroidGeometry const& tor = apparatus.toroid;
    double const offset = std::hypot(tor.offset_x, tor.offset_y);
    r.toroid_inner_diameter = tor.inner_diameter;
    r.toroid_clearance = tor.inner_radius() - offset - r.r_l_max;

    // A path can go around the toroid only if some electron reaches beyond
    // its outer rim while still inside the chamber.
    bool const can_pass_outside = r.max_excursion + offset >= tor.outer_radius()
                                  && apparatus.chamber_radius
                                         > tor.outer_radius();
    r.simply_connected = !can_pass_outside;

    r.scale_hierarchy_holds = r.lambda_de_broglie < 1e-9
                              && r.lambda_de_broglie < r.grid_pitch
                              && r.grid_pitch < r.lambda_macro;
    r.relativistic_correction
        = point.energy_ev * elementary_charge
          / (electron_mass * constants::speed_of_light
             * constants::speed_of_light);

    auto& v = r.verdicts;
    v.push_back(fmt("focal length l_f = %.4f m equals the claimed wavelength "
                    "lambda = %.4f m; interference order L/l_f = %.3f, so the "
                    "first focus lies at the grid",
                    r.l_f, r.lambda_macro, r.interference_order));
    v.push_back(fmt("lambda / grid-plate gap = %.1f: no standing amplitude "
                    "of this wavelength fits in the %.4f m gap",
                    r.ratio_lambda_to_gap, r.grid_plate_gap));
    v.push_back(fmt("lambda / grid pitch = %.0f: a wave this long sees the "
                    "%.2e m pitch grid as an opaque sheet",
                    r.ratio_lambda_to_pitch, r.grid_pitch));
    v.push_back(fmt("a 5%% field change moves the claimed fringes by %.4f m, "
                    "a shift a genuine vector-potential phase could "
                    "compensate; washout at 5%% detuning contradicts it",
                    r.fringe_shift_at_5pct));
    v.push_back(fmt("beam diameter 2 r_L = %.4f m against toroid inner "
                    "diameter %.4f m leaves %.4f m radial clearance; "
                    "misalignment of that size clips the beam",
                    r.beam_diameter, r.toroid_inner_diameter,
                    r.toroid_clearance));
    v.push_back(r.simply_connected
                    ? std::string("every classical path threads the toroid "
                                  "aperture: the path region is simply "
                                  "connected and encloses no flux")
                    : std::string("some paths can pass outside the toroid: "
                                  "the path region is multiply connected"));
    v.push_back(fmt("de Broglie wavelength %.3e m is %.1e times smaller than "
                    "the claimed wavelength",
                    r.lambda_de_broglie, r.lambda_macro / r.lambda_de_broglie));
    v.push_back(fmt("neglected corrections: gamma - 1 = %.2e; cos(theta_max) "
                    "shortens l_f to %.4f m",
                    r.relativistic_correction, r.l_f_cos_corrected));
    return r;
}

std::string render_text(ConsistencyReport const& r)
{
    std::ostringstream os;
    os << fmt("operating point: E = %.1f eV, B0 = %.4f mT, L = %.4f m, "
              "theta_max = %.2f deg\n",
              r.point.energy_ev, r.point.b0 * 1e3, r.point.l,
              r.point.theta_i_max * 180.0 / 3.14159265358979323846);
    for (auto const& line : r.verdicts)
    {
        os << "- " << line << '\n';
    }
    return os.str();
}

std::string render_csv(ConsistencyReport const& r)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(10);
    os << "key,value\n";
    auto row = [&os](char const* key, double value) {
        os << key << ',' << value << '\n';
    };
    row("energy_ev", r.point.energy_ev);
    row("b0_t", r.point.b0);
    row("l_m", r.point.l);
    row("theta_max_rad", r.point.theta_i_max);
    row("speed_m_per_s", r.speed);
    row("l_f_m", r.l_f);
    row("l_f_cos_corrected_m", r.l_f_cos_corrected);
    row("lambda_macro_m", r.lambda_macro);
    row("lambda_de_broglie_m", r.lambda_de_broglie);
    row("ratio_lambda_to_gap", r.ratio_lambda_to_gap);
    row("ratio_lambda_to_pitch", r.ratio_lambda_to_pitch);
    row("interference_order", r.interference_order);
    row("fringe_shift_at_5pct_m", r.fringe_shift_at_5pct);
    row("r_l_max_m", r.r_l_max);
    row("beam_diameter_m", r.beam_diameter);
    row("max_excursion_m", r.max_excursion);
    row("toroid_inner_diameter_m", r.toroid_inner_diameter);
    row("toroid_clearance_m", r.toroid_clearance);
    row("simply_connected", r.simply_connected ? 1 : 0);
    row("scale_hierarchy_holds", r.scale_hierarchy_holds ? 1 : 0);
    row("relativistic_correction", r.relativistic_correction);
    return os.str();
}
}  // namespace beamaudit
