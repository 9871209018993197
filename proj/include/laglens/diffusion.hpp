#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace laglens::diffusion {

/// Real 1-periodic field sampled on the uniform grid s_j = j/N together with
/// the diffusion time it has reached. N must be a power of two, N >= 32.
/// Periodicity is structural: neighbour access wraps through index arithmetic.
class PeriodicField {
public:
    explicit PeriodicField(std::vector<double> samples, double z = 0.0);

    std::size_t size() const { return samples_.size(); }
    double z() const { return z_; }
    double grid(std::size_t j) const {
        return static_cast<double>(j) / static_cast<double>(samples_.size());
    }
    const std::vector<double>& samples() const { return samples_; }
    /// Sample with wrap-around indexing.
    double at(long j) const {
        const long n = static_cast<long>(samples_.size());
        return samples_[static_cast<std::size_t>(((j % n) + n) % n)];
    }

private:
    std::vector<double> samples_;
    double z_;
};

struct FourierMode {
    int wavenumber = 0;               ///< signed k
    double angular_wavenumber = 0.0;  ///< 2 pi k
    std::complex<double> amplitude;   ///< coefficient of e^{2 pi i k s}
    double decay_rate = 0.0;          ///< -2 pi^2 k^2 per unit z
};

/// Advance dY/dz = (1/2) d2Y/ds2 by dz, exactly in z: each Fourier mode is
/// scaled by e^{-2 pi^2 k^2 dz}. Backward flow (dz < 0) is refused.
PeriodicField evolve(const PeriodicField& field, double dz);

/// Periodic Green function: sum over integer images of the line Gaussian
/// e^{-(s - s0 + m)^2 / (2 dz)} / sqrt(2 pi dz). The image count
/// ceil(1 + 8 sqrt(dz)) keeps the omitted tail below 1e-14. For dz below about
/// 1e-2 the nearest image carries all but < 1e-14 of the value, so a single
/// Gaussian is an adequate stand-in at narrow spreads.
double wrapped_heat_kernel(double s, double s0, double dz);

/// Decay rate of mode k: -2 pi^2 k^2.
double mode_decay_rate(int k);

/// Fourier modes in transform order (wavenumbers 0..N/2 then -N/2+1..-1);
/// the k=0 entry carries the mean.
std::vector<FourierMode> decompose(const PeriodicField& field);

/// z-spread used by delta_field to keep delta data band-limited.
inline constexpr double kDeltaWidth = 1e-4;

/// Unit-mass near-delta at s0: the wrapped kernel at spread kDeltaWidth.
PeriodicField delta_field(std::size_t n, double s0);

}  // namespace laglens::diffusion
