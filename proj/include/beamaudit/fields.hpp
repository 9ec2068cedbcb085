#pragma once

#include <variant>
#include <vector>

#include "vec3.hpp"

namespace beamaudit
{
//! Electric (V/m) and magnetic (T) field at a point.
struct FieldValue
{
    Vec3 e;
    Vec3 b;
};

//---------------------------------------------------------------------------//
/*!
 * Guide field of the external coils: B = (0, 0, B0) everywhere.
 */
class UniformAxialField
{
  public:
    explicit UniformAxialField(double b0);

    FieldValue operator()(Vec3 const&) const { return {{}, {0, 0, b0_}}; }

    double b0() const { return b0_; }

  private:
    double b0_;
};

//---------------------------------------------------------------------------//
/*!
 * Parameters of the flux-confining toroid as seen by the beam.
 *
 * The winding's core field (and hence the confined flux) is linear in the
 * coil current. The flux itself never enters the force law; only the core's
 * distortion of the guide field and the winding leakage do.
 */
struct ToroidFieldParams
{
    double z_center{0.05};  //!< [m]
    double core_perturbation_amplitude{0.25};  //!< fraction of B0
    double perturbation_width{0.01};  //!< Gaussian sigma [m]
    double leakage_coefficient{0};  //!< epsilon, dimensionless
    double leakage_azimuth{0};  //!< direction of the leakage field [rad]
    double toroid_current{0};  //!< [A]
    double core_tesla_per_ampere{0.05};  //!< core field per unit current
    double core_area{1e-4};  //!< core cross-section [m^2]

    //! Field inside the core for the configured current [T].
    double core_field() const { return core_tesla_per_ampere * toroid_current; }

    //! Confined magnetic flux [Wb]; bookkeeping only.
    double flux() const { return core_field() * core_area; }
};

//---------------------------------------------------------------------------//
/*!
 * Field contributed by the toroid: core distortion of the axial guide field
 * plus a transverse winding-leakage field.
 *
 * The core distortion is the axisymmetric Gaussian dip
 * \f$ \delta B_z = -a B_0 g(u) \f$, \f$ g(u) = e^{-u^2/2} \f$,
 * \f$ u = (z - z_c)/w \f$, with the radial component taken from the same
 * vector potential, \f$ B_\rho = -(\rho/2)\,\partial_z \delta B_z \f$, which
 * makes the field divergence-free identically. The leakage field is
 * \f$ \epsilon B_{core}(I) g(u) \f$ along a fixed transverse direction.
 */
class ToroidField
{
  public:
    ToroidField(ToroidFieldParams const& params, double b0);

    FieldValue operator()(Vec3 const& r) const;

    //! Core-distortion part only.
    Vec3 perturbation(Vec3 const& r) const;
    //! Leakage part only.
    Vec3 leakage(Vec3 const& r) const;

    ToroidFieldParams const& params() const { return params_; }

  private:
    ToroidFieldParams params_;
    double b0_;
    Vec3 leak_dir_;
};

//---------------------------------------------------------------------------//
//! Vertex of a piecewise-linear axial potential.
struct PotentialKnot
{
    double z;  //!< [m]
    double v;  //!< [V]
};

/*!
 * Axial electrode potentials along the chamber.
 *
 * The cathode sits behind the launch plane: V ramps from the source
 * potential at z = -source_ramp up to the drift potential at z = 0. The grid
 * at grid_z is approached and left through ramps of half-width grid_ramp;
 * downstream of the grid the potential settles at the plate potential.
 */
struct PotentialProfile
{
    double source_potential{-1200};  //!< [V]
    double source_ramp{0.01};  //!< [m]
    double drift_potential{0};  //!< [V]
    double grid_z{0.27};  //!< [m]
    double grid_bias{-5};  //!< [V]
    double grid_ramp{0.002};  //!< [m]
    double plate_z{0.285};  //!< [m]
    double plate_potential{0};  //!< [V]

    //! Knots of the piecewise-linear profile; throws on overlapping ramps.
    std::vector<PotentialKnot> knots() const;
};

//---------------------------------------------------------------------------//
/*!
 * Electrostatic field E = (0, 0, -dV/dz) of a piecewise-linear potential.
 *
 * V is continuous and constant outside the knot range. On a knot the field
 * of the segment to its right applies.
 */
class ElectrodeField
{
  public:
    explicit ElectrodeField(std::vector<PotentialKnot> knots);

    FieldValue operator()(Vec3 const& r) const;

    double potential(double z) const;
    double axial_field(double z) const;

    std::vector<PotentialKnot> const& knots() const { return knots_; }

  private:
    std::vector<PotentialKnot> knots_;
};

using FieldContribution
    = std::variant<UniformAxialField, ToroidField, ElectrodeField>;

//---------------------------------------------------------------------------//
/*!
 * Ordered superposition of field contributions.
 *
 * Immutable once built; evaluation is a pure function of position and is
 * safe to call concurrently.
 */
class FieldStack
{
  public:
    FieldStack() = default;

    FieldStack& add(FieldContribution c);

    FieldValue evaluate(Vec3 const& r) const;

    //! Electrostatic potential [V] at axial position z.
    double potential(double z) const;

    //! Axial electric field [V/m] at axial position z.
    double axial_electric(double z) const;

    //! Sorted z positions where the electric field is discontinuous.
    std::vector<double> const& axial_breakpoints() const { return breaks_; }

    std::vector<FieldContribution> const& contributions() const
    {
        return contributions_;
    }

    //! Axial magnetic field along the axis at z.
    double on_axis_bz(double z) const { return evaluate({0, 0, z}).b.z; }

  private:
    std::vector<FieldContribution> contributions_;
    std::vector<double> breaks_;
};

// Factory operations with parameter validation.
FieldContribution uniform_axial_field(double b0);
FieldContribution toroid_contribution(ToroidFieldParams const& params,
                                      double b0);
FieldContribution electrode_field(PotentialProfile const& profile);

//! Component-wise sum over all contributions.
inline FieldValue evaluate(FieldStack const& stack, Vec3 const& r)
{
    return stack.evaluate(r);
}

//! Evaluate a single contribution.
FieldValue evaluate(FieldContribution const& c, Vec3 const& r);

//! Mean of B_z along the axis over [z0, z1] (Simpson, n intervals).
double mean_axial_field(FieldStack const& stack, double z0, double z1,
                        int n = 2000);
}  // namespace beamaudit
