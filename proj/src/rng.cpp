#include "beamaudit/rng.hpp"

#include <cmath>

#include "beamaudit/constants.hpp"

namespace beamaudit
{
namespace
{
constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, Domain domain, std::uint64_t index)
{
    std::uint64_t k = mix64(seed + golden_gamma);
    k = mix64(k ^ (static_cast<std::uint64_t>(domain) * golden_gamma));
    key_ = mix64(k ^ mix64(index + golden_gamma));
}

std::uint64_t CounterRng::next_u64()
{
    ++counter_;
    return mix64(key_ + counter_ * golden_gamma);
}

double CounterRng::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::exponential(double mean)
{
    return -mean * std::log(uniform_open());
}

double CounterRng::normal()
{
    double const u1 = uniform_open0();
    double const u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1))
           * std::cos(constants::two_pi * u2);
}

unsigned CounterRng::poisson(double mean)
{
    if (!(mean > 0))
    {
        return 0;
    }
    // Knuth: count uniforms until their product drops below exp(-mean).
    double const limit = std::exp(-mean);
    unsigned k = 0;
    double p = uniform_open0();
    while (p > limit)
    {
        ++k;
        p *= uniform_open0();
    }
    return k;
}
}  // namespace beamaudit
