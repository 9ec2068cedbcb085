#include "beamaudit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "beamaudit/analysis.hpp"
#include "beamaudit/errors.hpp"
#include "beamaudit/parallel.hpp"
#include "beamaudit/rng.hpp"

namespace beamaudit
{
namespace
{
constexpr std::size_t chunk_size = 64;

std::size_t index_of(Status s) { return static_cast<std::size_t>(s); }
}  // namespace

//---------------------------------------------------------------------------//
void SimulationSetup::validate() const
{
    if (!(b0 > 0))
    {
        throw InvalidConfig("b0_mt", "axial field must be positive");
    }
    beam.validate();
    apparatus.validate();
    secondaries.validate();
    if (!(dt_divisor >= 50))
    {
        throw InvalidConfig("dt_divisor",
                            "must be at least 50 to resolve the Larmor period");
    }
    if (!(t_max > 0))
    {
        throw InvalidConfig("t_max_us", "must be positive");
    }
    if (!(toroid_field.core_area > 0))
    {
        throw InvalidConfig("toroid_core_area_cm2", "must be positive");
    }
    // Field parameter checks live in the contribution constructors.
    (void)this->build_fields();
}

PotentialProfile SimulationSetup::electrode_profile() const
{
    PotentialProfile p = apparatus.profile();
    if (source_follows_energy)
    {
        p.source_potential = -beam.kinetic_energy;
    }
    return p;
}

FieldStack SimulationSetup::build_fields() const
{
    ToroidFieldParams tf = toroid_field;
    tf.z_center = apparatus.toroid.z_center;
    FieldStack stack;
    stack.add(uniform_axial_field(b0))
        .add(toroid_contribution(tf, b0))
        .add(electrode_field(this->electrode_profile()));
    return stack;
}

double SimulationSetup::time_step() const
{
    return larmor_period(b0) / dt_divisor;
}

//---------------------------------------------------------------------------//
double ShotResult::fraction(Status s) const
{
    return launched ? static_cast<double>(primary_counts[index_of(s)])
                          / static_cast<double>(launched)
                    : 0.0;
}

double ShotResult::secondary_plate_fraction() const
{
    return launched ? static_cast<double>(grid_secondaries_to_plate)
                          / static_cast<double>(launched)
                    : 0.0;
}

double ShotResult::plate_escape_fraction() const
{
    return launched ? static_cast<double>(plate_secondaries_escaped)
                          / static_cast<double>(launched)
                    : 0.0;
}

namespace
{
struct ChunkTally
{
    ShotResult partial;
    double sum_r2{0};
};

ChunkTally simulate_chunk(SimulationSetup const& setup, FieldStack const& stack,
                          BeamSpec const& beam, std::size_t begin,
                          std::size_t end)
{
    ChunkTally tally;
    ShotResult& r = tally.partial;
    PropagateOptions opts;
    opts.dt = setup.time_step();
    opts.t_max = setup.t_max;
    Apparatus const& app = setup.apparatus;

    auto run_secondaries = [&](std::vector<ParticleState> const& emitted,
                               bool from_grid) {
        for (auto const& s : emitted)
        {
            Status const st = propagate(s, stack, app, opts).terminal();
            ++r.secondary_counts[index_of(st)];
            if (from_grid && st == Status::collected_plate)
            {
                ++r.grid_secondaries_to_plate;
            }
            if (!from_grid && st != Status::collected_plate)
            {
                ++r.plate_secondaries_escaped;
            }
        }
    };

    for (std::size_t i = begin; i < end; ++i)
    {
        Trajectory const traj
            = propagate(sample_primary(beam, i), stack, app, opts);
        ParticleState const& last = traj.final_state();
        Status const st = last.status();
        ++r.launched;
        ++r.primary_counts[index_of(st)];

        if (st == Status::absorbed_wire)
        {
            ++r.reached_grid;
            double const rr = transverse_norm(last.position);
            tally.sum_r2 += rr * rr;
        }
        else if (auto c = traj.first_crossing(Surface::grid))
        {
            ++r.reached_grid;
            double const rr = transverse_norm(c->position);
            tally.sum_r2 += rr * rr;
        }

        if (setup.secondaries.yield_0 <= 0)
        {
            continue;
        }
        CounterRng rng(beam.seed, CounterRng::Domain::secondary, i);
        if (st == Status::absorbed_wire)
        {
            double const sign = last.velocity.z >= 0 ? 1.0 : -1.0;
            WireImpact const hit = wire_impact(last.position, sign, app);
            ParticleState impact = last;
            impact.position = hit.point;
            auto const emitted = secondary_emission(impact, hit.normal,
                                                    setup.secondaries, rng);
            r.secondaries_from_grid += emitted.size();
            run_secondaries(emitted, true);
        }
        else if (st == Status::collected_plate)
        {
            auto const emitted = secondary_emission(last, {0, 0, -1},
                                                    setup.secondaries, rng);
            r.secondaries_from_plate += emitted.size();
            run_secondaries(emitted, false);
        }
    }
    return tally;
}
}  // namespace

ShotResult run_shot(SimulationSetup const& setup, std::uint64_t seed,
                    unsigned workers)
{
    setup.validate();
    FieldStack const stack = setup.build_fields();
    BeamSpec beam = setup.beam;
    beam.seed = seed;

    auto const chunks = parallel_chunks(
        beam.count, chunk_size, workers,
        [&](std::size_t begin, std::size_t end) {
            return simulate_chunk(setup, stack, beam, begin, end);
        });

    ShotResult total;
    double sum_r2 = 0;
    for (auto const& c : chunks)
    {
        ShotResult const& p = c.partial;
        total.launched += p.launched;
        for (int s = 0; s < num_statuses; ++s)
        {
            total.primary_counts[s] += p.primary_counts[s];
            total.secondary_counts[s] += p.secondary_counts[s];
        }
        total.secondaries_from_grid += p.secondaries_from_grid;
        total.secondaries_from_plate += p.secondaries_from_plate;
        total.grid_secondaries_to_plate += p.grid_secondaries_to_plate;
        total.plate_secondaries_escaped += p.plate_secondaries_escaped;
        total.reached_grid += p.reached_grid;
        sum_r2 += c.sum_r2;
    }
    total.rms_radius_grid
        = total.reached_grid
              ? std::sqrt(sum_r2 / static_cast<double>(total.reached_grid))
              : 0.0;
    return total;
}

//---------------------------------------------------------------------------//
std::string_view to_string(SweepParameter p)
{
    switch (p)
    {
        case SweepParameter::toroid_current:
            return "toroid_current";
        case SweepParameter::b0:
            return "b0";
        case SweepParameter::energy:
            return "energy";
        case SweepParameter::leakage:
            return "leakage";
        case SweepParameter::offset:
            return "offset";
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(std::string_view name)
{
    for (auto p : {SweepParameter::toroid_current, SweepParameter::b0,
                   SweepParameter::energy, SweepParameter::leakage,
                   SweepParameter::offset})
    {
        if (name == to_string(p))
        {
            return p;
        }
    }
    throw InvalidConfig("param", "unknown sweep parameter '"
                                     + std::string(name) + "'");
}

SimulationSetup with_parameter(SimulationSetup setup, SweepParameter p,
                               double value)
{
    switch (p)
    {
        case SweepParameter::toroid_current:
            setup.toroid_field.toroid_current = value;
            break;
        case SweepParameter::b0:
            setup.b0 = value;
            break;
        case SweepParameter::energy:
            setup.beam.kinetic_energy = value;
            break;
        case SweepParameter::leakage:
            setup.toroid_field.leakage_coefficient = value;
            break;
        case SweepParameter::offset:
            setup.apparatus.toroid.offset_x = value;
            break;
    }
    return setup;
}

SweepResult sweep(SimulationSetup const& setup, SweepParameter parameter,
                  std::vector<double> const& values, std::uint64_t seed,
                  unsigned workers)
{
    if (values.size() < 2)
    {
        throw InvalidConfig("steps", "a sweep needs at least two values");
    }
    bool const up = values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i)
    {
        if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1]))
        {
            throw InvalidConfig("param", "sweep values must be strictly "
                                         "monotone");
        }
    }
    // Validate every point before running any of them.
    for (double v : values)
    {
        with_parameter(setup, parameter, v).validate();
    }

    SweepResult result;
    result.parameter = parameter;
    result.seed = seed;
    for (double v : values)
    {
        result.points.push_back(
            {v, run_shot(with_parameter(setup, parameter, v), seed, workers)});
    }
    return result;
}

double modulation_depth(SweepResult const& result)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto const& p : result.points)
    {
        lo = std::min(lo, p.shot.plate_fraction());
        hi = std::max(hi, p.shot.plate_fraction());
    }
    return result.points.empty() ? 0.0 : hi - lo;
}

std::vector<double> linspace(double from, double to, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        v[i] = n == 1 ? from
                      : from + (to - from) * static_cast<double>(i)
                                   / static_cast<double>(n - 1);
    }
    return v;
}

//---------------------------------------------------------------------------//
std::vector<FocalSample> focal_profile(SimulationSetup const& setup,
                                       std::vector<double> const& z_planes,
                                       std::uint64_t seed, unsigned workers)
{
    setup.validate();
    if (!std::is_sorted(z_planes.begin(), z_planes.end()))
    {
        throw InvalidConfig("", "focal planes must be sorted");
    }
    FieldStack const stack = setup.build_fields();
    BeamSpec beam = setup.beam;
    beam.seed = seed;
    std::size_t const n_planes = z_planes.size();

    struct Accum
    {
        std::vector<double> sum_r2;
        std::vector<std::uint64_t> count;
    };

    auto const chunks = parallel_chunks(
        beam.count, chunk_size, workers,
        [&](std::size_t begin, std::size_t end) {
            Accum acc{std::vector<double>(n_planes, 0.0),
                      std::vector<std::uint64_t>(n_planes, 0)};
            PropagateOptions opts;
            opts.dt = setup.time_step();
            opts.t_max = setup.t_max;
            opts.surfaces = false;
            for (std::size_t i = begin; i < end; ++i)
            {
                std::size_t next = 0;
                opts.observer = [&](ParticleState const& a,
                                    ParticleState const& b, double) {
                    double const za = a.position.z;
                    double const zb = b.position.z;
                    while (next < n_planes && z_planes[next] <= zb)
                    {
                        double f = zb > za ? (z_planes[next] - za) / (zb - za)
                                           : 1.0;
                        f = std::clamp(f, 0.0, 1.0);
                        Vec3 const p = a.position
                                       + (b.position - a.position) * f;
                        acc.sum_r2[next] += p.x * p.x + p.y * p.y;
                        ++acc.count[next];
                        ++next;
                    }
                    return next < n_planes;
                };
                propagate(sample_primary(beam, i), stack, setup.apparatus,
                          opts);
            }
            return acc;
        });

    std::vector<FocalSample> out(n_planes);
    for (std::size_t k = 0; k < n_planes; ++k)
    {
        double sum = 0;
        std::uint64_t count = 0;
        for (auto const& c : chunks)
        {
            sum += c.sum_r2[k];
            count += c.count[k];
        }
        out[k] = {z_planes[k],
                  count ? std::sqrt(sum / static_cast<double>(count))
                        : std::numeric_limits<double>::quiet_NaN(),
                  count};
    }
    return out;
}

std::vector<double> profile_minima(std::vector<FocalSample> const& profile,
                                   double depth_fraction)
{
    double max_r = 0;
    for (auto const& s : profile)
    {
        if (std::isfinite(s.rms_radius))
        {
            max_r = std::max(max_r, s.rms_radius);
        }
    }
    std::vector<double> minima;
    for (std::size_t i = 1; i + 1 < profile.size(); ++i)
    {
        double const r = profile[i].rms_radius;
        if (std::isfinite(r) && r < profile[i - 1].rms_radius
            && r <= profile[i + 1].rms_radius && r < depth_fraction * max_r)
        {
            minima.push_back(profile[i].z);
        }
    }
    return minima;
}

double resonant_field(SimulationSetup const& setup)
{
    // Paraxial rays in the Larmor frame obey r'' + (Omega(z) / 2 v)^2 r = 0.
    // To first order in the field distortion the focus stays on the grid
    // when the sin^2-weighted mean of (B_z / B0)^2 is absorbed into B0.
    SimulationSetup unit = setup;
    unit.b0 = 1.0;
    FieldStack const stack = unit.build_fields();
    double const l = setup.apparatus.grid_z;
    int const n = 4000;
    double const h = l / n;
    double sum = 0;
    for (int i = 0; i <= n; ++i)
    {
        double const z = i * h;
        double const b = stack.on_axis_bz(z);
        double const s = std::sin(constants::two_pi * 0.5 * z / l);
        double const w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * b * b * s * s;
    }
    double const weighted = 2.0 * sum * h / 3.0 / l;
    double const v_bar = mean_axial_speed(
        speed_from_energy(setup.beam.kinetic_energy), setup.beam.theta_max);
    return field_for_focal_length(v_bar, l) / std::sqrt(weighted);
}
}  // namespace beamaudit
