#pragma once

#include <string>
#include <vector>

#include "apparatus.hpp"

namespace beamaudit
{
// Paraxial beam-optics formulas, SI throughout (Omega = e B / m_e).

//! Electron cyclotron frequency e B / m_e [rad/s].
double cyclotron_frequency(double b);

//! Axial distance covered in one gyration period, 2 pi v_par / Omega [m].
double focal_length(double v_par, double b);

/*!
 * The "macroscopic wavelength" 2 pi v_par / Omega attributed to the beam by
 * the wave interpretation. Same expression as focal_length, kept separate so
 * that the identity of the two can be checked rather than assumed.
 */
double macro_wavelength(double v_par, double b);

//! l = Omega L / (2 pi v_bar), computed as L / focal_length(v_bar, B).
double interference_order(double l, double v_bar, double b);

//! Field at which the focal length equals l for axial speed v_par [T].
double field_for_focal_length(double v_par, double l);

//! v_perp / Omega [m].
double larmor_radius(double v_perp, double b);

struct InjectionLarmor
{
    double radius;  //!< [m]
    double diameter;  //!< [m]
};

//! focal_length(v, B) sin(theta) / 2 pi, and twice that.
InjectionLarmor injection_larmor_radius(double v, double theta, double b);

//! h / sqrt(2 m_e e E) for a kinetic energy in eV [m].
double de_broglie_wavelength(double energy_ev);

/*!
 * Displacement of the claimed fringe pattern over length l when the field
 * changes by delta_b_over_b: the wavelength changes by -delta_b_over_b and
 * the pattern moves by that fraction of l. Signed [m].
 */
double fringe_shift(double delta_b_over_b, double l);

//---------------------------------------------------------------------------//
struct BeamFieldPoint
{
    double energy_ev{1200};
    double b0{2.70e-3};  //!< [T]
    double l{0.27};  //!< source-to-grid distance [m]
    double theta_i_max{0.2617993877991494};  //!< [rad]
};

//! Quantitative audit of the wave interpretation at one operating point.
struct ConsistencyReport
{
    BeamFieldPoint point;
    double speed{0};  //!< [m/s]
    double l_f{0};  //!< with v_par = v [m]
    double l_f_cos_corrected{0};  //!< with v_par = v cos(theta_max) [m]
    double lambda_macro{0};  //!< [m]
    double lambda_de_broglie{0};  //!< [m]
    double grid_plate_gap{0};  //!< [m]
    double grid_pitch{0};  //!< [m]
    double ratio_lambda_to_gap{0};
    double ratio_lambda_to_pitch{0};
    double interference_order{0};
    double fringe_shift_at_5pct{0};  //!< magnitude [m]
    double r_l_max{0};  //!< injection Larmor radius [m]
    double beam_diameter{0};  //!< [m]
    double max_excursion{0};  //!< 2 v sin(theta)/Omega [m]
    double toroid_inner_diameter{0};  //!< [m]
    //! inner radius - |offset| - r_L; negative means clipping is certain [m]
    double toroid_clearance{0};
    bool simply_connected{true};
    bool scale_hierarchy_holds{true};
    double relativistic_correction{0};  //!< gamma - 1
    std::vector<std::string> verdicts;
};

ConsistencyReport consistency_report(BeamFieldPoint const& point,
                                     Apparatus const& apparatus);

std::string render_text(ConsistencyReport const& report);
//! "key,value" rows with a header line.
std::string render_csv(ConsistencyReport const& report);
}  // namespace beamaudit
