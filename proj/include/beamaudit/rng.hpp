#pragma once

#include <cstdint>

namespace beamaudit
{
//---------------------------------------------------------------------------//
/*!
 * Counter-based random stream.
 *
 * Draw k of the stream keyed by (seed, domain, index) is a pure function of
 * those four integers, so particles can be sampled on any worker in any
 * order and still reproduce bit-identical results. The mixing function is
 * the SplitMix64 finalizer; transforms to real variates are written out
 * explicitly rather than taken from <random> so results do not depend on
 * the standard library implementation.
 */
class CounterRng
{
  public:
    enum class Domain : std::uint64_t
    {
        primary = 1,
        secondary = 2,
        flood = 3,
        test = 4,
    };

    CounterRng(std::uint64_t seed, Domain domain, std::uint64_t index);

    //! Next raw 64-bit output.
    std::uint64_t next_u64();

    //! Uniform on [0, 1) with 53 random bits.
    double uniform();

    //! Uniform on (0, 1], safe for logarithms.
    double uniform_open0() { return 1.0 - uniform(); }

    //! Uniform on the open interval (0, 1).
    double uniform_open();

    //! Exponential variate, strictly positive with the given mean.
    double exponential(double mean);

    //! Standard normal variate (Box-Muller, cosine branch only).
    double normal();

    //! Poisson variate; multiplication method, intended for small means.
    unsigned poisson(double mean);

    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

//! SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);
}  // namespace beamaudit
