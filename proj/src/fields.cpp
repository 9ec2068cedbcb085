#include "beamaudit/fields.hpp"

#include <algorithm>
#include <cmath>

#include "beamaudit/errors.hpp"

namespace beamaudit
{
UniformAxialField::UniformAxialField(double b0) : b0_(b0)
{
    if (!(b0 > 0) || !std::isfinite(b0))
    {
        throw InvalidConfig("b0_mt", "axial field must be positive");
    }
}

//---------------------------------------------------------------------------//
ToroidField::ToroidField(ToroidFieldParams const& params, double b0)
    : params_(params)
    , b0_(b0)
    , leak_dir_{std::cos(params.leakage_azimuth),
                std::sin(params.leakage_azimuth), 0}
{
    if (!(std::abs(params.core_perturbation_amplitude) <= 1))
    {
        throw InvalidConfig("toroid_perturbation",
                            "amplitude must lie in [-1, 1]");
    }
    if (!(params.leakage_coefficient >= 0))
    {
        throw InvalidConfig("leakage_epsilon", "must be non-negative");
    }
    if (!(params.perturbation_width > 0))
    {
        throw InvalidConfig("toroid_width_cm", "must be positive");
    }
}

Vec3 ToroidField::perturbation(Vec3 const& r) const
{
    double const w = params_.perturbation_width;
    double const u = (r.z - params_.z_center) / w;
    double const g = std::exp(-0.5 * u * u);
    double const amp = params_.core_perturbation_amplitude * b0_;
    // d(delta B_z)/dz = a B0 u g / w; B_rho = -(rho/2) of that
    double const radial_per_rho = -0.5 * amp * u * g / w;
    return {radial_per_rho * r.x, radial_per_rho * r.y, -amp * g};
}

Vec3 ToroidField::leakage(Vec3 const& r) const
{
    double const u = (r.z - params_.z_center) / params_.perturbation_width;
    double const mag = params_.leakage_coefficient * params_.core_field()
                       * std::exp(-0.5 * u * u);
    return leak_dir_ * mag;
}

FieldValue ToroidField::operator()(Vec3 const& r) const
{
    double const w = params_.perturbation_width;
    double const u = (r.z - params_.z_center) / w;
    double const amp = params_.core_perturbation_amplitude * b0_;
    double const leak = params_.leakage_coefficient * params_.core_field();
    // exp(-u^2/2) underflows to exactly zero beyond |u| = 40
    if ((amp == 0 && leak == 0) || std::abs(u) > 40)
    {
        return {};
    }
    double const g = std::exp(-0.5 * u * u);
    double const radial_per_rho = -0.5 * amp * u * g / w;
    Vec3 b{radial_per_rho * r.x, radial_per_rho * r.y, -amp * g};
    b += leak_dir_ * (leak * g);
    return {{}, b};
}

//---------------------------------------------------------------------------//
std::vector<PotentialKnot> PotentialProfile::knots() const
{
    if (!(source_ramp > 0))
    {
        throw InvalidConfig("source_ramp_cm", "must be positive");
    }
    if (!(grid_ramp > 0))
    {
        throw InvalidConfig("grid_ramp_mm", "must be positive");
    }
    if (!(grid_z - grid_ramp > 0))
    {
        throw InvalidConfig("grid_ramp_mm",
                            "grid ramp overlaps the launch plane");
    }
    if (!(grid_z + grid_ramp <= plate_z))
    {
        throw InvalidConfig("grid_ramp_mm",
                            "grid ramp extends past the plate");
    }
    return {{-source_ramp, source_potential},
            {0, drift_potential},
            {grid_z - grid_ramp, drift_potential},
            {grid_z, grid_bias},
            {grid_z + grid_ramp, plate_potential}};
}

//---------------------------------------------------------------------------//
ElectrodeField::ElectrodeField(std::vector<PotentialKnot> knots)
    : knots_(std::move(knots))
{
    for (std::size_t i = 1; i < knots_.size(); ++i)
    {
        if (!(knots_[i].z > knots_[i - 1].z))
        {
            throw InvalidConfig("", "overlapping potential ramps");
        }
    }
}

double ElectrodeField::potential(double z) const
{
    if (knots_.empty())
    {
        return 0;
    }
    if (z <= knots_.front().z)
    {
        return knots_.front().v;
    }
    if (z >= knots_.back().z)
    {
        return knots_.back().v;
    }
    auto hi = std::upper_bound(
        knots_.begin(), knots_.end(), z,
        [](double zz, PotentialKnot const& k) { return zz < k.z; });
    auto lo = hi - 1;
    double const f = (z - lo->z) / (hi->z - lo->z);
    return lo->v + f * (hi->v - lo->v);
}

double ElectrodeField::axial_field(double z) const
{
    if (knots_.size() < 2 || z < knots_.front().z || z >= knots_.back().z)
    {
        return 0;
    }
    auto hi = std::upper_bound(
        knots_.begin(), knots_.end(), z,
        [](double zz, PotentialKnot const& k) { return zz < k.z; });
    auto lo = hi - 1;
    return -(hi->v - lo->v) / (hi->z - lo->z);
}

FieldValue ElectrodeField::operator()(Vec3 const& r) const
{
    return {{0, 0, this->axial_field(r.z)}, {}};
}

//---------------------------------------------------------------------------//
FieldStack& FieldStack::add(FieldContribution c)
{
    if (auto const* el = std::get_if<ElectrodeField>(&c))
    {
        for (auto const& k : el->knots())
        {
            breaks_.push_back(k.z);
        }
        std::sort(breaks_.begin(), breaks_.end());
        breaks_.erase(std::unique(breaks_.begin(), breaks_.end()),
                      breaks_.end());
    }
    contributions_.push_back(std::move(c));
    return *this;
}

FieldValue evaluate(FieldContribution const& c, Vec3 const& r)
{
    return std::visit([&r](auto const& f) { return f(r); }, c);
}

FieldValue FieldStack::evaluate(Vec3 const& r) const
{
    FieldValue total;
    for (auto const& c : contributions_)
    {
        FieldValue const f = beamaudit::evaluate(c, r);
        total.e += f.e;
        total.b += f.b;
    }
    return total;
}

double FieldStack::potential(double z) const
{
    double v = 0;
    for (auto const& c : contributions_)
    {
        if (auto const* el = std::get_if<ElectrodeField>(&c))
        {
            v += el->potential(z);
        }
    }
    return v;
}

double FieldStack::axial_electric(double z) const
{
    double e = 0;
    for (auto const& c : contributions_)
    {
        if (auto const* el = std::get_if<ElectrodeField>(&c))
        {
            e += el->axial_field(z);
        }
    }
    return e;
}

//---------------------------------------------------------------------------//
FieldContribution uniform_axial_field(double b0)
{
    return UniformAxialField(b0);
}

FieldContribution toroid_contribution(ToroidFieldParams const& params,
                                      double b0)
{
    return ToroidField(params, b0);
}

FieldContribution electrode_field(PotentialProfile const& profile)
{
    return ElectrodeField(profile.knots());
}

double mean_axial_field(FieldStack const& stack, double z0, double z1, int n)
{
    n += n % 2;
    double const h = (z1 - z0) / n;
    double sum = stack.on_axis_bz(z0) + stack.on_axis_bz(z1);
    for (int i = 1; i < n; ++i)
    {
        sum += (i % 2 ? 4.0 : 2.0) * stack.on_axis_bz(z0 + i * h);
    }
    return sum * h / 3.0 / (z1 - z0);
}
}  // namespace beamaudit
