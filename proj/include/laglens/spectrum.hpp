#pragma once

#include <complex>
#include <vector>

namespace laglens::spectrum {

using Complex = std::complex<double>;

/// One characteristic root lambda of lambda + 1 = r e^{-lambda T}, carried
/// together with its branch index, its large-delay approximation and a
/// recomputed residual certificate.
struct SpectrumRoot {
    int branch = 0;
    Complex lambda_exact;
    Complex lambda_asym;
    double residual = 0.0;  ///< |lambda + 1 - r e^{-lambda T}| at lambda_exact
    Complex u;              ///< lambda * T
    bool outside_asymptotic_window = false;  ///< 2*pi*|branch| >= T
};

struct SpectrumRequest {
    double feedback_gain = 1.0;  ///< r > 0
    double delay = 1.0;          ///< T > 0
    int max_branch = 0;          ///< branches -max_branch .. +max_branch
};

/// Large-delay approximation of the branch-n root. For r = 1 the resummed
/// closed form -2 n^2 pi^2 / T^3 + 2 i n pi / (T+1) is returned; otherwise the
/// truncated series in 1/T (see asymptotic_root_series).
Complex asymptotic_root(double r, double T, int n);

/// The truncated series form for any r:
///   (1/T) [ -ln r/(2T^2) - 2 n^2 pi^2/T^2
///           + (ln r + 2 i n pi)(1 - 1/T + (1 + ln r)/T^2) ].
/// At r = 1 this is the unresummed counterpart of asymptotic_root; the two
/// differ by the geometric tail of 1/(1 + 1/T), which is the documented
/// resummation difference used by the consistency tests.
Complex asymptotic_root_series(double r, double T, int n);

/// Newton iteration on g(u) = u/T + 1 - r e^{-u} in the u = lambda*T plane,
/// seeded with T * asymptotic_root. Converged when |g| < 1e-14; the returned
/// root is certified by recomputing the residual in the lambda plane and by
/// checking Im(u) against the branch strip (2 pi n - pi, 2 pi n + pi].
SpectrumRoot exact_root(double r, double T, int n);

/// For a root of the r = 1 equation, verifies u = W_n(T e^T) entirely in log
/// space: returns the distance from w + Ln(w) - T - ln(T) to the nearest point
/// of 2 pi i Z, where w = T (lambda + 1) and Ln is the principal logarithm.
/// The quantity T e^T itself is never formed (it overflows for T around 700).
double lambert_identity_check(const SpectrumRoot& root, double T);

/// All roots for branches -max_branch..max_branch, sorted by branch index.
/// Roots with 2 pi |n| >= T are served but flagged outside_asymptotic_window.
std::vector<SpectrumRoot> compute(const SpectrumRequest& request);

}  // namespace laglens::spectrum
