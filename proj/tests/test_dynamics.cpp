#include <cmath>
#include <doctest.h>
#include <sstream>

#include "beamaudit/dynamics.hpp"
#include "beamaudit/errors.hpp"

using namespace beamaudit;

namespace
{
// Reference values written out independently of the library constants
constexpr double e_charge = 1.602176634e-19;
constexpr double m_e = 9.1093837015e-31;
double const pi = std::acos(-1.0);

double omega(double b) { return e_charge * b / m_e; }
double speed_ev(double ev) { return std::sqrt(2 * ev * e_charge / m_e); }

ParticleState launch(double v, double theta, double phi = 0)
{
    return {{0, 0, 0},
            {v * std::sin(theta) * std::cos(phi),
             v * std::sin(theta) * std::sin(phi), v * std::cos(theta)}};
}

Apparatus open_apparatus(double length)
{
    Apparatus a;
    a.grid_z = length;
    a.grid_plate_gap = 0.05;
    a.toroid.z_center = 0.5 * length;
    a.grid.wire_radius = 0;
    a.chamber_radius = 1.0;
    return a;
}

FieldStack uniform_b(double b)
{
    FieldStack s;
    s.add(uniform_axial_field(b));
    return s;
}

// One-period position error of the pusher against the closed form
double one_period_error(double divisor)
{
    double const b = 2.7e-3;
    double const t = 2 * pi / omega(b);
    double const dt = t / divisor;
    ParticleState const p0 = launch(speed_ev(1200), 10 * pi / 180, 0.3);
    ParticleState p = p0;
    Vec3 const bvec{0, 0, b};
    auto const n = static_cast<int>(std::lround(divisor));
    for (int i = 0; i < n; ++i)
    {
        p = lorentz_step(p, {}, bvec, dt);
    }
    return norm(p.position - analytic_helix(p0, b, n * dt).position);
}
}  // namespace

TEST_CASE("electron gyrates counterclockwise about +B")
{
    double const b = 2.7e-3;
    CHECK(gyration_rate(b) == doctest::Approx(omega(b)));
    CHECK(larmor_period(b) == doctest::Approx(2 * pi / omega(b)));
    CHECK(larmor_period(b) == doctest::Approx(1.323e-8).epsilon(1e-3));
}

TEST_CASE("analytic helix")
{
    double const b = 2.7e-3;
    double const v = speed_ev(1200);
    double const t = 2 * pi / omega(b);

    SUBCASE("returns to the launch point after one period")
    {
        for (double phi : {0.0, 1.0, 2.5, 4.0})
        {
            ParticleState p0 = launch(v, 0.2, phi);
            p0.position = {0.001, -0.002, 0.0};
            ParticleState const p = analytic_helix(p0, b, t);
            CHECK(p.position.x == doctest::Approx(p0.position.x).epsilon(1e-9));
            CHECK(p.position.y == doctest::Approx(p0.position.y).epsilon(1e-9));
            CHECK(p.position.z
                  == doctest::Approx(p0.velocity.z * t).epsilon(1e-14));
            CHECK(p.velocity.x == doctest::Approx(p0.velocity.x).epsilon(1e-9));
            CHECK(p.velocity.y == doctest::Approx(p0.velocity.y).epsilon(1e-9));
        }
    }
    SUBCASE("zero transverse velocity is a straight line")
    {
        ParticleState const p0 = launch(v, 0);
        for (double tt : {1e-9, 5e-9, 3e-8})
        {
            ParticleState const p = analytic_helix(p0, b, tt);
            CHECK(p.position.x == 0.0);
            CHECK(p.position.y == 0.0);
            CHECK(p.position.z == doctest::Approx(v * tt));
        }
    }
    SUBCASE("zero field is a straight line")
    {
        ParticleState const p0 = launch(v, 0.3, 1.0);
        ParticleState const p = analytic_helix(p0, 0.0, 1e-8);
        Vec3 const expect = p0.velocity * 1e-8;
        CHECK(p.position.x == doctest::Approx(expect.x));
        CHECK(p.position.y == doctest::Approx(expect.y));
        CHECK(p.position.z == doctest::Approx(expect.z));
    }
    SUBCASE("maximum excursion is twice the Larmor radius")
    {
        double const theta = 15 * pi / 180;
        ParticleState const p0 = launch(v, theta);
        double max_r = 0;
        for (int i = 0; i <= 2000; ++i)
        {
            ParticleState const p = analytic_helix(p0, b, t * i / 2000.0);
            max_r = std::max(max_r, transverse_norm(p.position));
        }
        double const r_l = v * std::sin(theta) / omega(b);
        CHECK(max_r == doctest::Approx(2 * r_l).epsilon(1e-6));
        CHECK(2 * r_l == doctest::Approx(0.022).epsilon(0.02));
    }
}

TEST_CASE("pusher preserves speed in a pure magnetic field")
{
    double const b = 2.7e-3;
    double const dt = 2 * pi / omega(b) / 200;
    ParticleState p = launch(speed_ev(1200), 0.3, 0.7);
    double const v0 = p.speed();
    for (int i = 0; i < 10000; ++i)
    {
        p = lorentz_step(p, {}, {0.3e-3, -0.2e-3, b}, dt);
    }
    CHECK(std::abs(p.speed() - v0) / v0 < 1e-12);
}

TEST_CASE("pusher in uniform E matches the parabola at step boundaries")
{
    double const ez = -2000;  // accelerates electrons toward +z
    double const a = e_charge * 2000 / m_e;
    double const dt = 1e-10;
    ParticleState p({0, 0, 0}, {1e5, 0, 1e6});
    for (int i = 1; i <= 100; ++i)
    {
        p = lorentz_step(p, {0, 0, ez}, {}, dt);
        double const t = i * dt;
        CHECK(p.position.z
              == doctest::Approx(1e6 * t + 0.5 * a * t * t).epsilon(1e-12));
        CHECK(p.position.x == doctest::Approx(1e5 * t).epsilon(1e-12));
        CHECK(p.velocity.z == doctest::Approx(1e6 + a * t).epsilon(1e-12));
    }
}

TEST_CASE("pusher converges at second order")
{
    double const e250 = one_period_error(250);
    double const e500 = one_period_error(500);
    double const e1000 = one_period_error(1000);
    double const r1 = e250 / e500;
    double const r2 = e500 / e1000;
    CHECK(r1 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(r2 == doctest::Approx(4.0).epsilon(0.1));
    double const order = std::log2(e250 / e1000) / 2;
    CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("propagate refocuses a point launch at the focal length")
{
    double const b = 2.7e-3;
    double const v = speed_ev(1200);
    double const theta = 1.0 * pi / 180;
    double const vz = v * std::cos(theta);
    double const l_f = 2 * pi * vz / omega(b);
    FieldStack const stack = uniform_b(b);
    Apparatus const app = open_apparatus(0.5);
    PropagateOptions opts;
    opts.dt = 2 * pi / omega(b) / 200;
    opts.surfaces = false;
    for (double phi : {0.0, 1.3, 3.9})
    {
        double r_at_focus = -1;
        opts.observer = [&](ParticleState const& p0, ParticleState const& p1,
                            double) {
            if (p0.position.z <= l_f && p1.position.z > l_f)
            {
                double const f = (l_f - p0.position.z)
                                 / (p1.position.z - p0.position.z);
                r_at_focus = transverse_norm(p0.position
                                             + (p1.position - p0.position) * f);
                return false;
            }
            return true;
        };
        propagate(launch(v, theta, phi), stack, app, opts);
        REQUIRE(r_at_focus >= 0);
        CHECK(r_at_focus < 1e-6);
    }
}

TEST_CASE("energy is conserved through electrode ramps")
{
    double const b = 2.7e-3;
    PotentialProfile prof;
    prof.source_potential = -1200;
    FieldStack stack;
    stack.add(uniform_axial_field(b)).add(electrode_field(prof));
    Apparatus app;
    app.grid.wire_radius = 0;
    PropagateOptions opts;
    opts.dt = 2 * pi / omega(b) / 200;
    opts.stride = 1;

    auto total = [&](ParticleState const& p) {
        double const v2 = dot(p.velocity, p.velocity);
        return 0.5 * m_e * v2 - e_charge * stack.potential(p.position.z);
    };

    SUBCASE("primary through the grid barrier")
    {
        ParticleState p0 = launch(speed_ev(1200), 0.2, 0.4);
        Trajectory const tr = propagate(p0, stack, app, opts);
        CHECK(tr.terminal() == Status::collected_plate);
        double const e0 = total(p0);
        double worst = 0;
        for (auto const& s : tr.samples)
        {
            worst = std::max(worst, std::abs(total(s.state) - e0) / e0);
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("slow secondary turning around in the source ramp")
    {
        ParticleState p0({0.001, 0, 0.26}, {2e5, 1e5, -speed_ev(3)},
                         Species::secondary);
        Trajectory const tr = propagate(p0, stack, app, opts);
        double const e0 = total(p0);
        double worst = 0;
        for (auto const& s : tr.samples)
        {
            worst = std::max(worst, std::abs(total(s.state) - e0) / e0);
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("grid barrier reflects slow electrons and passes fast ones")
{
    double const b = 2.7e-3;
    PotentialProfile prof;
    FieldStack stack;
    stack.add(uniform_axial_field(b)).add(electrode_field(prof));
    Apparatus app;
    app.grid.wire_radius = 0;
    PropagateOptions opts;
    opts.dt = 2 * pi / omega(b) / 200;

    SUBCASE("3 eV toward a -5 V grid turns around")
    {
        ParticleState p0({0, 0, 0.25}, {0, 0, speed_ev(3)}, Species::secondary);
        double zmax = 0;
        opts.observer = [&](ParticleState const&, ParticleState const& p1,
                            double) {
            zmax = std::max(zmax, p1.position.z);
            return p1.velocity.z > -1e5;
        };
        Trajectory const tr = propagate(p0, stack, app, opts);
        CHECK(zmax < prof.grid_z);
        CHECK_FALSE(tr.first_crossing(Surface::grid).has_value());
        CHECK(tr.final_state().velocity.z < 0);
    }
    SUBCASE("1200 eV crosses with 5 eV less axial energy")
    {
        ParticleState p0({0, 0, 0.25}, {0, 0, speed_ev(1200)});
        Trajectory const tr = propagate(p0, stack, app, opts);
        auto const c = tr.first_crossing(Surface::grid);
        REQUIRE(c.has_value());
        double const kz = 0.5 * m_e * c->velocity.z * c->velocity.z / e_charge;
        CHECK(kz == doctest::Approx(1195.0).epsilon(1e-6));
    }
}

TEST_CASE("terminal events")
{
    double const b = 2.7e-3;
    FieldStack const stack = uniform_b(b);
    double const dt = 2 * pi / omega(b) / 200;

    SUBCASE("timeout is reported distinctly")
    {
        Apparatus app = open_apparatus(100.0);
        PropagateOptions opts;
        opts.dt = dt;
        opts.t_max = 1e-8;
        Trajectory const tr
            = propagate(launch(speed_ev(1200), 0.1), stack, app, opts);
        CHECK(tr.terminal() == Status::lost_timeout);
        CHECK(tr.flight_time >= 1e-8);
    }
    SUBCASE("chamber wall")
    {
        Apparatus app = open_apparatus(0.27);
        app.chamber_radius = 0.005;
        PropagateOptions opts;
        opts.dt = dt;
        Trajectory const tr
            = propagate(launch(speed_ev(1200), 0.25), stack, app, opts);
        CHECK(tr.terminal() == Status::lost_wall);
    }
    SUBCASE("toroid blocks an off-axis particle")
    {
        Apparatus app;
        app.grid.wire_radius = 0;
        PropagateOptions opts;
        opts.dt = dt;
        ParticleState p0({0.015, 0, 0}, {0, 0, speed_ev(1200)});
        Trajectory const tr = propagate(p0, stack, app, opts);
        CHECK(tr.terminal() == Status::absorbed_toroid);
        CHECK(tr.final_state().position.z
              == doctest::Approx(app.toroid.z_center));
    }
    SUBCASE("grid wire on the axis absorbs an on-axis particle")
    {
        Apparatus app;
        PropagateOptions opts;
        opts.dt = dt;
        Trajectory const tr
            = propagate(launch(speed_ev(1200), 0), stack, app, opts);
        CHECK(tr.terminal() == Status::absorbed_wire);
        CHECK(tr.final_state().position.z == doctest::Approx(app.grid_z));
    }
    SUBCASE("backward particle returns to source")
    {
        Apparatus app;
        PropagateOptions opts;
        opts.dt = dt;
        ParticleState p0({0, 0, 0.1}, {0, 0, -speed_ev(100)});
        CHECK(propagate(p0, stack, app, opts).terminal()
              == Status::returned_to_source);
    }
    SUBCASE("surfaces off lets the particle reach the plate")
    {
        Apparatus app;
        PropagateOptions opts;
        opts.dt = dt;
        opts.surfaces = false;
        ParticleState p0({0.015, 0, 0}, {0, 0, speed_ev(1200)});
        CHECK(propagate(p0, stack, app, opts).terminal()
              == Status::collected_plate);
    }
}

TEST_CASE("propagate argument checks")
{
    FieldStack const stack = uniform_b(2.7e-3);
    Apparatus app;
    PropagateOptions opts;
    opts.dt = 0;
    CHECK_THROWS_AS(propagate(launch(1e7, 0), stack, app, opts),
                    InvalidConfig);
    opts.dt = larmor_period(2.7e-3) / 10;
    CHECK_THROWS_AS(propagate(launch(1e7, 0), stack, app, opts),
                    InvalidConfig);
    opts.dt = larmor_period(2.7e-3) / 200;
    CHECK_THROWS(propagate(launch(3.1e8, 0), stack, app, opts));
}

TEST_CASE("fast particles carry a warning")
{
    FieldStack const stack = uniform_b(2.7e-3);
    Apparatus app;
    PropagateOptions opts;
    opts.dt = larmor_period(2.7e-3) / 200;
    CHECK(propagate(launch(5e7, 0.1), stack, app, opts)
              .nonrelativistic_warning);
    CHECK_FALSE(propagate(launch(2e7, 0.1), stack, app, opts)
                    .nonrelativistic_warning);
}

TEST_CASE("status only moves forward")
{
    ParticleState p;
    CHECK(p.in_flight());
    p.terminate(Status::collected_plate);
    CHECK(p.status() == Status::collected_plate);
    CHECK_THROWS_AS(p.terminate(Status::lost_wall), std::logic_error);
    CHECK_THROWS_AS(p.terminate(Status::in_flight), std::logic_error);
}

TEST_CASE("trajectory csv")
{
    FieldStack const stack = uniform_b(2.7e-3);
    Apparatus app;
    PropagateOptions opts;
    opts.dt = larmor_period(2.7e-3) / 200;
    opts.stride = 10;
    Trajectory const tr = propagate(launch(2e7, 0.1), stack, app, opts);
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    std::string const s = os.str();
    CHECK(s.rfind("t,x,y,z,vx,vy,vz\n", 0) == 0);
    auto const lines = std::count(s.begin(), s.end(), '\n');
    CHECK(static_cast<std::size_t>(lines) == tr.samples.size() + 1);
    CHECK(tr.samples.size() > 10);
}
