#include "beamaudit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "beamaudit/analysis.hpp"
#include "beamaudit/config.hpp"
#include "beamaudit/constants.hpp"
#include "beamaudit/errors.hpp"
#include "beamaudit/experiment.hpp"

namespace beamaudit
{
namespace
{
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Context
{
    CommandOptions const& opts;
    RunConfig cfg;
    SimulationSetup setup;
    std::uint64_t seed;
    std::filesystem::path out_dir;
};

std::string provenance(Context const& ctx, std::string const& extra = {})
{
    std::string h = "# beamaudit " + std::string(version_string) + '\n';
    h += "# command: " + ctx.opts.subcommand + '\n';
    h += "# config_fingerprint: "
         + fingerprint_hex(config_fingerprint(ctx.cfg)) + '\n';
    h += "# seed: " + std::to_string(ctx.seed) + '\n';
    h += extra;
    return h;
}

void write_file(std::filesystem::path const& path, std::string const& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    os << text;
}

constexpr Status loss_classes[] = {Status::absorbed_toroid,
                                   Status::absorbed_wire,
                                   Status::lost_wall,
                                   Status::lost_timeout,
                                   Status::returned_to_source};

std::string shot_columns()
{
    std::string s = "plate_fraction,secondary_plate_fraction";
    for (Status st : loss_classes)
    {
        s += ',';
        s += to_string(st);
    }
    s += ",plate_escape_fraction,launched,secondaries_from_grid,"
         "secondaries_from_plate,rms_radius_grid_m";
    return s;
}

std::string shot_row(ShotResult const& r)
{
    std::string s = num(r.plate_fraction()) + ','
                    + num(r.secondary_plate_fraction());
    for (Status st : loss_classes)
    {
        s += ',' + num(r.fraction(st));
    }
    s += ',' + num(r.plate_escape_fraction());
    s += ',' + std::to_string(r.launched);
    s += ',' + std::to_string(r.secondaries_from_grid);
    s += ',' + std::to_string(r.secondaries_from_plate);
    s += ',' + num(r.rms_radius_grid);
    return s;
}

bool timeout_dominated(ShotResult const& r)
{
    return r.fraction(Status::lost_timeout) > 0.5;
}

//---------------------------------------------------------------------------//
ExitCode do_analyze(Context const& ctx, std::ostream& out)
{
    BeamFieldPoint point;
    point.energy_ev = ctx.cfg.energy_ev;
    point.b0 = ctx.setup.b0;
    point.l = ctx.setup.apparatus.grid_z;
    point.theta_i_max = ctx.setup.beam.theta_max;
    ConsistencyReport const report
        = consistency_report(point, ctx.setup.apparatus);
    std::string const text = render_text(report);
    write_file(ctx.out_dir / "report.txt", text);
    write_file(ctx.out_dir / "report.csv",
               provenance(ctx) + render_csv(report));
    out << text;
    return ExitCode::ok;
}

ExitCode do_simulate(Context const& ctx, std::ostream& out)
{
    ShotResult const r
        = run_shot(ctx.setup, ctx.seed, ctx.opts.workers);
    std::string csv = provenance(ctx) + shot_columns() + '\n' + shot_row(r)
                      + '\n';
    write_file(ctx.out_dir / "shot.csv", csv);

    if (ctx.cfg.trajectory_stride > 0)
    {
        FieldStack const stack = ctx.setup.build_fields();
        BeamSpec beam = ctx.setup.beam;
        beam.seed = ctx.seed;
        PropagateOptions po;
        po.dt = ctx.setup.time_step();
        po.t_max = ctx.setup.t_max;
        po.stride = ctx.cfg.trajectory_stride;
        auto const n = std::min<std::uint64_t>(ctx.cfg.trajectory_particles,
                                               beam.count);
        for (std::uint64_t i = 0; i < n; ++i)
        {
            Trajectory const t = propagate(sample_primary(beam, i), stack,
                                           ctx.setup.apparatus, po);
            std::ostringstream os;
            os << provenance(ctx, "# particle: " + std::to_string(i) + '\n');
            write_trajectory_csv(os, t);
            write_file(ctx.out_dir
                           / ("trajectory_" + std::to_string(i) + ".csv"),
                       os.str());
        }
    }

    out << "launched " << r.launched << ", plate_fraction "
        << num(r.plate_fraction()) << ", secondary_plate_fraction "
        << num(r.secondary_plate_fraction()) << '\n';
    return timeout_dominated(r) ? ExitCode::runtime : ExitCode::ok;
}

ExitCode do_sweep(Context const& ctx, std::ostream& out)
{
    if (!ctx.opts.param || !ctx.opts.from || !ctx.opts.to || !ctx.opts.steps)
    {
        throw UsageError("sweep requires --param, --from, --to and --steps");
    }
    SweepParameter const p = parse_sweep_parameter(*ctx.opts.param);
    // Config units to SI
    double scale = 1;
    if (p == SweepParameter::b0)
    {
        scale = units::mT;
    }
    else if (p == SweepParameter::offset)
    {
        scale = units::mm;
    }
    auto const user = linspace(*ctx.opts.from, *ctx.opts.to, *ctx.opts.steps);
    std::vector<double> values;
    for (double v : user)
    {
        values.push_back(v * scale);
    }
    SweepResult const res
        = sweep(ctx.setup, p, values, ctx.seed, ctx.opts.workers);

    std::string csv = provenance(ctx, "# param: " + *ctx.opts.param + '\n');
    csv += "param_value," + shot_columns() + '\n';
    bool timeouts = false;
    for (std::size_t i = 0; i < res.points.size(); ++i)
    {
        csv += num(user[i]) + ',' + shot_row(res.points[i].shot) + '\n';
        timeouts = timeouts || timeout_dominated(res.points[i].shot);
    }
    write_file(ctx.out_dir / "sweep.csv", csv);
    out << "sweep over " << *ctx.opts.param << ": " << res.points.size()
        << " points, modulation depth " << num(modulation_depth(res)) << '\n';
    return timeouts ? ExitCode::runtime : ExitCode::ok;
}

ExitCode do_focal_scan(Context const& ctx, std::ostream& out)
{
    using units::cm;
    Apparatus const& app = ctx.setup.apparatus;
    double const from = ctx.opts.from ? *ctx.opts.from * cm : 2 * cm;
    double const to = ctx.opts.to ? *ctx.opts.to * cm : app.plate_z();
    std::size_t const steps
        = ctx.opts.steps
              ? *ctx.opts.steps
              : static_cast<std::size_t>(std::lround((to - from) / 5e-4)) + 1;
    if (!(to > from) || steps < 2)
    {
        throw UsageError("focal-scan needs --to > --from and --steps >= 2");
    }
    auto const planes = linspace(from, to, steps);
    auto const prof
        = focal_profile(ctx.setup, planes, ctx.seed, ctx.opts.workers);

    std::string csv = provenance(ctx) + "z_m,rms_radius_m,count\n";
    double best_z = std::nan("");
    double best_r = std::numeric_limits<double>::infinity();
    for (auto const& s : prof)
    {
        csv += num(s.z) + ',' + num(s.rms_radius) + ','
               + std::to_string(s.count) + '\n';
        if (s.count > 0 && s.rms_radius < best_r)
        {
            best_r = s.rms_radius;
            best_z = s.z;
        }
    }
    write_file(ctx.out_dir / "focal_scan.csv", csv);
    out << "minimum rms radius " << num(best_r) << " m at z = " << num(best_z)
        << " m\n";
    return ExitCode::ok;
}
}  // namespace

//---------------------------------------------------------------------------//
ExitCode run_command(CommandOptions const& options, std::ostream& out,
                     std::ostream& err)
{
    try
    {
        RunConfig cfg = options.config_path ? load_config(*options.config_path)
                                            : RunConfig{};
        if (options.seed)
        {
            cfg.seed = *options.seed;
        }
        if (options.out_dir)
        {
            cfg.out_dir = *options.out_dir;
        }
        if (options.workers == 0)
        {
            throw UsageError("--workers must be at least 1");
        }
        Context ctx{options, cfg, to_setup(cfg), cfg.seed, cfg.out_dir};
        std::filesystem::create_directories(ctx.out_dir);
        write_file(ctx.out_dir / "resolved.cfg",
                   provenance(ctx) + write_config(cfg));

        if (options.subcommand == "analyze")
        {
            return do_analyze(ctx, out);
        }
        if (options.subcommand == "simulate")
        {
            return do_simulate(ctx, out);
        }
        if (options.subcommand == "sweep")
        {
            return do_sweep(ctx, out);
        }
        if (options.subcommand == "focal-scan")
        {
            return do_focal_scan(ctx, out);
        }
        throw UsageError("unknown subcommand '" + options.subcommand + "'");
    }
    catch (UsageError const& e)
    {
        err << "usage error: " << e.what() << '\n';
        return ExitCode::usage;
    }
    catch (ConfigFileError const& e)
    {
        err << "error: " << e.what() << '\n';
        return ExitCode::missing_file;
    }
    catch (ConfigParseError const& e)
    {
        err << "parse error: " << e.what() << '\n';
        return ExitCode::parse_failure;
    }
    catch (InvalidConfig const& e)
    {
        err << "invalid configuration: " << e.what() << '\n';
        return ExitCode::invalid_config;
    }
    catch (std::exception const& e)
    {
        err << "runtime error: " << e.what() << '\n';
        return ExitCode::runtime;
    }
}
}  // namespace beamaudit
