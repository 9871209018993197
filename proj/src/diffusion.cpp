#include "laglens/diffusion.hpp"

#include <cmath>
#include <numbers>

#include "laglens/errors.hpp"

namespace laglens::diffusion {
namespace {

constexpr double kPi = std::numbers::pi;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// e^{-2 pi i m / N} for m = 0..N-1; transforms index through this table so
/// the phase arithmetic stays exactly periodic.
std::vector<std::complex<double>> unit_roots(std::size_t n) {
    std::vector<std::complex<double>> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double phase = -2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
        w[m] = {std::cos(phase), std::sin(phase)};
    }
    return w;
}

int signed_wavenumber(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}

// Direct O(N^2) transform; at desk scale (N = 512 default) this is far below
// a millisecond and keeps the module dependency-free.
std::vector<std::complex<double>> forward_dft(const std::vector<double>& f,
                                              const std::vector<std::complex<double>>& w) {
    const std::size_t n = f.size();
    std::vector<std::complex<double>> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += f[j] * w[(j * k) % n];
        c[k] = sum;
    }
    return c;
}

}  // namespace

PeriodicField::PeriodicField(std::vector<double> samples, double z)
    : samples_(std::move(samples)), z_(z) {
    if (samples_.size() < 32 || !power_of_two(samples_.size())) {
        throw Error("diffusion: field size must be a power of two, at least 32");
    }
}

PeriodicField evolve(const PeriodicField& field, double dz) {
    if (dz < 0.0) throw NegativeTime("diffusion: backward heat flow refused");
    if (dz == 0.0) return field;

    const std::size_t n = field.size();
    const auto w = unit_roots(n);
    auto c = forward_dft(field.samples(), w);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] *= std::exp(mode_decay_rate(signed_wavenumber(k, n)) * dz);
    }

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += c[k] * std::conj(w[(j * k) % n]);
        out[j] = sum.real() / static_cast<double>(n);
    }
    return PeriodicField(std::move(out), field.z() + dz);
}

double wrapped_heat_kernel(double s, double s0, double dz) {
    if (!(dz > 0.0)) {
        throw DegenerateTime("wrapped_heat_kernel: spread must be positive");
    }
    const int images = static_cast<int>(std::ceil(1.0 + 8.0 * std::sqrt(dz)));
    const double d = s - s0;
    double sum = 0.0;
    for (int m = -images; m <= images; ++m) {
        const double x = d + static_cast<double>(m);
        sum += std::exp(-x * x / (2.0 * dz));
    }
    return sum / std::sqrt(2.0 * kPi * dz);
}

double mode_decay_rate(int k) {
    const double kk = static_cast<double>(k);
    return -2.0 * kPi * kPi * kk * kk;
}

std::vector<FourierMode> decompose(const PeriodicField& field) {
    const std::size_t n = field.size();
    const auto w = unit_roots(n);
    const auto c = forward_dft(field.samples(), w);

    std::vector<FourierMode> modes;
    modes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const int sk = signed_wavenumber(k, n);
        FourierMode mode;
        mode.wavenumber = sk;
        mode.angular_wavenumber = 2.0 * kPi * static_cast<double>(sk);
        mode.amplitude = c[k] / static_cast<double>(n);
        mode.decay_rate = mode_decay_rate(sk);
        modes.push_back(mode);
    }
    return modes;
}

PeriodicField delta_field(std::size_t n, double s0) {
    std::vector<double> samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        samples[j] = wrapped_heat_kernel(static_cast<double>(j) / static_cast<double>(n),
                                         s0, kDeltaWidth);
    }
    return PeriodicField(std::move(samples), 0.0);
}

}  // namespace laglens::diffusion
