#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "apparatus.hpp"
#include "constants.hpp"
#include "fields.hpp"
#include "particle.hpp"

namespace beamaudit
{
//! Signed gyration rate about +z for the electron in axial field b0 [rad/s].
inline double gyration_rate(double b0)
{
    return -constants::electron_charge_over_mass * b0;
}

//! Larmor (cyclotron) period 2 pi m / (e |B|) [s].
double larmor_period(double b);

/*!
 * Closed-form helix in a uniform axial field b0 with no electric field.
 *
 * The transverse velocity rotates by the signed gyration angle, the
 * transverse position moves on the circle of radius v_perp / Omega about
 * the guiding centre, and z advances by v_z t. For b0 == 0 the motion is a
 * straight line.
 */
ParticleState analytic_helix(ParticleState const& initial, double b0, double t);

/*!
 * Velocity update of the rotation-split pusher: half electric kick,
 * norm-preserving rotation about B (Cayley/Boris form), half electric kick.
 */
Vec3 kick_rotate_kick(Vec3 const& v, Vec3 const& e, Vec3 const& b,
                      double charge_over_mass, double dt);

/*!
 * One second-order, volume-preserving step with fixed fields:
 * half drift, kick-rotate-kick, half drift.
 */
ParticleState lorentz_step(ParticleState const& state, Vec3 const& e,
                           Vec3 const& b, double dt);

/*!
 * Same step, with fields sampled from the stack at the half-drift point.
 */
ParticleState field_step(ParticleState const& state, FieldStack const& stack,
                         double dt);

//---------------------------------------------------------------------------//
struct TrajectorySample
{
    double t;
    ParticleState state;
};

enum class Surface
{
    toroid,
    grid,
};

//! A plane the particle crossed without being stopped.
struct SurfaceCrossing
{
    Surface surface;
    double t;
    Vec3 position;
    Vec3 velocity;
};

struct Trajectory
{
    //! Samples at the configured stride, always including start and end.
    std::vector<TrajectorySample> samples;
    std::vector<SurfaceCrossing> crossings;
    double flight_time{0};
    bool nonrelativistic_warning{false};

    ParticleState const& final_state() const { return samples.back().state; }
    Status terminal() const { return final_state().status(); }

    //! First crossing of the given surface, if any.
    std::optional<SurfaceCrossing> first_crossing(Surface s) const;
};

/*!
 * Called after every step with the states bracketing it and the step's end
 * time. Returning false stops propagation with the particle still in
 * flight.
 */
using StepObserver = std::function<bool(ParticleState const& before,
                                        ParticleState const& after, double t)>;

struct PropagateOptions
{
    double dt{0};  //!< [s]
    double t_max{2e-6};  //!< [s]
    bool surfaces{true};  //!< toroid and grid interactions
    std::size_t stride{0};  //!< record every stride-th step; 0 = ends only
    StepObserver observer;
};

/*!
 * Integrate a particle through the field stack until it hits a surface,
 * leaves the chamber, returns to the source, or times out.
 *
 * Steps are split where the particle crosses a discontinuity of the
 * electrostatic field, so motion in piecewise-uniform axial fields is
 * integrated without kink error. Surface crossings are located by linear
 * interpolation within the step. Requires dt <= T/50 of the local field.
 */
Trajectory propagate(ParticleState state, FieldStack const& stack,
                     Apparatus const& apparatus, PropagateOptions const& opts);

//! Write (t, x, y, z, vx, vy, vz) rows with a header line.
void write_trajectory_csv(std::ostream& os, Trajectory const& traj);
}  // namespace beamaudit
