#include "laglens/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "laglens/errors.hpp"

namespace laglens::spectrum {
namespace {

constexpr double kPi = std::numbers::pi;

void validate(double r, double T) {
    if (!(r > 0.0)) throw Error("spectrum: feedback gain must be positive");
    if (!(T > 0.0)) throw Error("spectrum: delay must be positive");
}

}  // namespace

Complex asymptotic_root_series(double r, double T, int n) {
    const double lnr = std::log(r);
    const double omega = 2.0 * kPi * static_cast<double>(n);
    const Complex lead(lnr, omega);
    const double tail = 1.0 - 1.0 / T + (1.0 + lnr) / (T * T);
    const Complex bracket = Complex(-(lnr + omega * omega) / (2.0 * T * T), 0.0) +
                            lead * tail;
    return bracket / T;
}

Complex asymptotic_root(double r, double T, int n) {
    if (r == 1.0) {
        if (n == 0) return {0.0, 0.0};
        const double omega = 2.0 * kPi * static_cast<double>(n);
        return {-omega * omega / (2.0 * T * T * T), omega / (T + 1.0)};
    }
    return asymptotic_root_series(r, T, n);
}

SpectrumRoot exact_root(double r, double T, int n) {
    validate(r, T);
    const std::string tag = "branch n=" + std::to_string(n);

    Complex u = T * asymptotic_root(r, T, n);
    bool converged = false;
    for (int it = 0; it <= 50; ++it) {
        const Complex e = r * std::exp(-u);
        const Complex g = u / T + 1.0 - e;
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
            throw NoConvergence("spectrum: Newton left the finite range, " + tag);
        }
        if (std::abs(g) < 1e-14) {
            converged = true;
            break;
        }
        if (it == 50) break;
        u -= g / (1.0 / T + e);
    }
    if (!converged) {
        throw NoConvergence("spectrum: no convergence after 50 iterations, " + tag);
    }

    const double center = 2.0 * kPi * static_cast<double>(n);
    if (!(u.imag() > center - kPi && u.imag() <= center + kPi)) {
        throw BranchEscape("spectrum: converged outside the branch strip, " + tag);
    }

    SpectrumRoot root;
    root.branch = n;
    root.u = u;
    root.lambda_exact = u / T;
    root.lambda_asym = asymptotic_root(r, T, n);
    root.residual = std::abs(root.lambda_exact + 1.0 - r * std::exp(-root.lambda_exact * T));
    root.outside_asymptotic_window = 2.0 * kPi * std::abs(n) >= T;
    if (!(root.residual < 1e-12)) {
        throw NoConvergence("spectrum: residual certification failed, " + tag);
    }
    return root;
}

double lambert_identity_check(const SpectrumRoot& root, double T) {
    const Complex w = root.u + T;  // = T (lambda + 1)
    if (w == 0.0) {
        throw DomainError("lambert_identity_check: T(lambda+1) = 0 has no logarithm");
    }
    // w e^w = T e^T  <=>  w + Ln(w) = T + ln(T)  (mod 2 pi i).
    // Ln(w) - ln(T) = Ln(w/T) exactly, since T > 0 preserves the argument.
    const Complex v = root.u + std::log(w / T);
    const double wraps = std::round(v.imag() / (2.0 * kPi));
    return std::hypot(v.real(), v.imag() - 2.0 * kPi * wraps);
}

std::vector<SpectrumRoot> compute(const SpectrumRequest& request) {
    validate(request.feedback_gain, request.delay);
    if (request.max_branch < 0) throw Error("spectrum: max_branch must be >= 0");

    std::vector<SpectrumRoot> roots;
    roots.reserve(2 * static_cast<std::size_t>(request.max_branch) + 1);
    for (int n = -request.max_branch; n <= request.max_branch; ++n) {
        roots.push_back(exact_root(request.feedback_gain, request.delay, n));
    }
    return roots;
}

}  // namespace laglens::spectrum
