#include "beamaudit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "beamaudit/errors.hpp"

namespace beamaudit
{
double larmor_period(double b)
{
    return constants::two_pi
           / std::abs(constants::electron_charge_over_mass * b);
}

ParticleState analytic_helix(ParticleState const& initial, double b0, double t)
{
    ParticleState out = initial;
    Vec3 const& x0 = initial.position;
    Vec3 const& v0 = initial.velocity;
    if (b0 == 0)
    {
        out.position = x0 + v0 * t;
        return out;
    }
    double const omega = gyration_rate(b0);
    double const c = std::cos(omega * t);
    double const s = std::sin(omega * t);
    Vec3 const v{c * v0.x - s * v0.y, s * v0.x + c * v0.y, v0.z};
    out.velocity = v;
    // Integral of the rotating transverse velocity: (v_y - v_y0, v_x0 - v_x)/omega
    out.position = {x0.x + (v.y - v0.y) / omega,
                    x0.y + (v0.x - v.x) / omega,
                    x0.z + v0.z * t};
    return out;
}

Vec3 kick_rotate_kick(Vec3 const& v, Vec3 const& e, Vec3 const& b,
                      double charge_over_mass, double dt)
{
    double const half = 0.5 * charge_over_mass * dt;
    Vec3 const v_minus = v + e * half;
    Vec3 const t = b * half;
    double const s_factor = 2.0 / (1.0 + dot(t, t));
    Vec3 const v_prime = v_minus + cross(v_minus, t);
    Vec3 const v_plus = v_minus + cross(v_prime, t * s_factor);
    return v_plus + e * half;
}

ParticleState lorentz_step(ParticleState const& state, Vec3 const& e,
                           Vec3 const& b, double dt)
{
    ParticleState out = state;
    Vec3 const x_half = state.position + state.velocity * (0.5 * dt);
    out.velocity = kick_rotate_kick(state.velocity, e, b,
                                    constants::electron_charge_over_mass, dt);
    out.position = x_half + out.velocity * (0.5 * dt);
    return out;
}

ParticleState field_step(ParticleState const& state, FieldStack const& stack,
                         double dt)
{
    ParticleState out = state;
    Vec3 const x_half = state.position + state.velocity * (0.5 * dt);
    FieldValue const f = stack.evaluate(x_half);
    out.velocity = kick_rotate_kick(state.velocity, f.e, f.b,
                                    constants::electron_charge_over_mass, dt);
    out.position = x_half + out.velocity * (0.5 * dt);
    return out;
}

std::optional<SurfaceCrossing> Trajectory::first_crossing(Surface s) const
{
    for (auto const& c : crossings)
    {
        if (c.surface == s)
        {
            return c;
        }
    }
    return std::nullopt;
}

namespace
{
//---------------------------------------------------------------------------//
// Smallest root in (tol, h) of a/2 t^2 + v t + (z - target) = 0.
double first_arrival(double z, double v, double a, double target, double h,
                     double tol)
{
    double const qa = 0.5 * a;
    double const c = z - target;
    double best = h;
    auto consider = [&](double tau) {
        if (tau > tol && tau < best)
        {
            best = tau;
        }
    };
    if (qa == 0)
    {
        if (v != 0)
        {
            consider(-c / v);
        }
        return best;
    }
    double const disc = v * v - 4 * qa * c;
    if (disc < 0)
    {
        return best;
    }
    double const q = -0.5 * (v + std::copysign(std::sqrt(disc), v));
    if (q != 0)
    {
        consider(q / qa);
        consider(c / q);
    }
    else
    {
        consider(std::sqrt(-c / qa));
    }
    return best;
}

// Time until the particle reaches the next electric-field discontinuity,
// assuming the axial motion is uniformly accelerated within the segment.
double time_to_break(ParticleState const& s, FieldStack const& stack, double h)
{
    auto const& br = stack.axial_breakpoints();
    if (br.empty())
    {
        return h;
    }
    double const z = s.position.z;
    double const vz = s.velocity.z;

    auto hi = vz >= 0 ? std::upper_bound(br.begin(), br.end(), z)
                      : std::lower_bound(br.begin(), br.end(), z);
    bool const has_hi = hi != br.end();
    bool const has_lo = hi != br.begin();
    double const hi_z = has_hi ? *hi : 0;
    double const lo_z = has_lo ? *(hi - 1) : 0;

    double probe = z;
    if (has_hi && has_lo)
    {
        probe = 0.5 * (hi_z + lo_z);
    }
    else if (has_hi)
    {
        probe = hi_z - 1.0;
    }
    else
    {
        probe = lo_z + 1.0;
    }
    double const a = constants::electron_charge_over_mass
                     * stack.axial_electric(probe);

    double const tol = 1e-9 * h;
    double tau = h;
    if (has_hi)
    {
        tau = std::min(tau, first_arrival(z, vz, a, hi_z, h, tol));
    }
    if (has_lo)
    {
        tau = std::min(tau, first_arrival(z, vz, a, lo_z, h, tol));
    }
    return tau;
}

bool crosses(double z0, double z1, double plane)
{
    return (z0 < plane && z1 >= plane) || (z0 > plane && z1 <= plane);
}

ParticleState interpolate(ParticleState const& a, ParticleState const& b,
                          double f)
{
    ParticleState out = a;
    out.position = a.position + (b.position - a.position) * f;
    out.velocity = a.velocity + (b.velocity - a.velocity) * f;
    // Kinetic energy is linear in z within a substep; a straight chord
    // through the rotating velocity would shorten it.
    double const va2 = dot(a.velocity, a.velocity);
    double const v2 = va2 + f * (dot(b.velocity, b.velocity) - va2);
    double const chord = norm(out.velocity);
    if (chord > 0 && v2 > 0)
    {
        out.velocity *= std::sqrt(v2) / chord;
    }
    return out;
}

struct Event
{
    double fraction;
    Status terminal;  // in_flight for pass-through crossings
    Surface surface;
};
}  // namespace

//---------------------------------------------------------------------------//
Trajectory propagate(ParticleState state, FieldStack const& stack,
                     Apparatus const& apparatus, PropagateOptions const& opts)
{
    if (!(opts.dt > 0))
    {
        throw InvalidConfig("dt_divisor", "time step must be positive");
    }
    if (!state.in_flight())
    {
        throw std::invalid_argument("propagate needs an in-flight particle");
    }
    double const speed = state.speed();
    if (!(speed < constants::speed_of_light))
    {
        throw InvalidConfig("energy_ev", "particle speed reaches c");
    }
    double const b_mag = norm(stack.evaluate(state.position).b);
    if (b_mag > 0 && opts.dt > larmor_period(b_mag) / 50)
    {
        throw InvalidConfig("dt_divisor",
                            "time step must resolve the Larmor period "
                            "(dt <= T/50)");
    }

    Trajectory traj;
    traj.nonrelativistic_warning = speed > constants::nonrelativistic_warn_speed;
    traj.samples.push_back({0, state});

    double const z_source = apparatus.source_plane_z();
    double const z_plate = apparatus.plate_z();
    double const z_toroid = apparatus.toroid.z_center;
    double const z_grid = apparatus.grid_z;
    double const r_wall = apparatus.chamber_radius;

    // Locate terminal events and surface crossings within one substep.
    // Returns the event time if the particle terminated, otherwise -1.
    std::vector<Event> events;
    auto check_events = [&](ParticleState const& prev, ParticleState& cur,
                            double t0, double t1) {
        double const z0 = prev.position.z;
        double const z1 = cur.position.z;
        double const dz = z1 - z0;
        events.clear();
        if (z0 > z_source && z1 <= z_source)
        {
            events.push_back(
                {(z0 - z_source) / (z0 - z1), Status::returned_to_source, {}});
        }
        if (z0 < z_plate && z1 >= z_plate)
        {
            events.push_back(
                {(z_plate - z0) / dz, Status::collected_plate, {}});
        }
        double const r0 = transverse_norm(prev.position);
        double const r1 = transverse_norm(cur.position);
        if (r0 < r_wall && r1 >= r_wall)
        {
            events.push_back({(r_wall - r0) / (r1 - r0), Status::lost_wall, {}});
        }
        if (opts.surfaces)
        {
            if (crosses(z0, z1, z_toroid))
            {
                events.push_back(
                    {(z_toroid - z0) / dz, Status::in_flight, Surface::toroid});
            }
            if (crosses(z0, z1, z_grid))
            {
                events.push_back(
                    {(z_grid - z0) / dz, Status::in_flight, Surface::grid});
            }
        }
        std::sort(events.begin(), events.end(),
                  [](Event const& a, Event const& b) {
                      return a.fraction < b.fraction;
                  });

        for (auto const& ev : events)
        {
            ParticleState at = interpolate(prev, cur, ev.fraction);
            double const t_at = t0 + ev.fraction * (t1 - t0);
            Status outcome = ev.terminal;
            if (outcome == Status::in_flight)
            {
                if (ev.surface == Surface::toroid)
                {
                    at.position.z = z_toroid;
                    if (toroid_aperture_check(at.position, apparatus.toroid)
                        == ApertureResult::blocked)
                    {
                        outcome = Status::absorbed_toroid;
                    }
                }
                else
                {
                    at.position.z = z_grid;
                    if (grid_interaction(at.position, apparatus.grid)
                        == GridResult::absorbed)
                    {
                        outcome = Status::absorbed_wire;
                    }
                }
                if (outcome == Status::in_flight)
                {
                    traj.crossings.push_back(
                        {ev.surface, t_at, at.position, at.velocity});
                    continue;
                }
            }
            at.terminate(outcome);
            cur = at;
            return t_at;
        }
        return -1.0;
    };

    constexpr int max_splits = 8;
    double t = 0;
    std::size_t step = 0;
    while (state.in_flight())
    {
        if (t >= opts.t_max)
        {
            state.terminate(Status::lost_timeout);
            break;
        }
        ParticleState const step_start = state;
        double const t_new = static_cast<double>(step + 1) * opts.dt;

        // Split the step where the axial electric field is discontinuous
        double remaining = opts.dt;
        double t_sub = t;
        for (int k = 0; remaining > 0 && state.in_flight(); ++k)
        {
            double const tau = k < max_splits
                                   ? time_to_break(state, stack, remaining)
                                   : remaining;
            ParticleState const sub_start = state;
            state = field_step(state, stack, tau);
            remaining = tau >= remaining ? 0 : remaining - tau;
            double const t_end = remaining > 0 ? t_sub + tau : t_new;
            double const t_hit = check_events(sub_start, state, t_sub, t_end);
            t_sub = t_hit >= 0 ? t_hit : t_end;
        }
        ++step;

        if (!state.in_flight())
        {
            t = t_sub;
            if (opts.observer)
            {
                opts.observer(step_start, state, t);
            }
            break;
        }
        t = t_new;
        if (opts.observer && !opts.observer(step_start, state, t))
        {
            break;
        }
        if (opts.stride > 0 && step % opts.stride == 0)
        {
            traj.samples.push_back({t, state});
        }
    }
    if (traj.samples.back().t < t)
    {
        traj.samples.push_back({t, state});
    }
    else
    {
        traj.samples.back().state = state;
    }
    traj.flight_time = t;
    return traj;
}

void write_trajectory_csv(std::ostream& os, Trajectory const& traj)
{
    auto const old_prec = os.precision(17);
    os << "t,x,y,z,vx,vy,vz\n";
    for (auto const& s : traj.samples)
    {
        auto const& p = s.state.position;
        auto const& v = s.state.velocity;
        os << s.t << ',' << p.x << ',' << p.y << ',' << p.z << ',' << v.x
           << ',' << v.y << ',' << v.z << '\n';
    }
    os.precision(old_prec);
}
}  // namespace beamaudit
