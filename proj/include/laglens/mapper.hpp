#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "laglens/dde.hpp"

namespace laglens::mapper {

/// Strain and amplitude constants of the large-delay reduction. a1 and a2 kill
/// the secular growth order by order; l0 is the slow amplitude rate left over
/// once a2 is fixed; l1 vanishes identically by that choice.
struct AsymptoticCoefficients {
    double a1 = -1.0;
    double a2 = 1.0;  ///< 1 + ln r
    double l0 = 0.0;  ///< -ln(r)^2 / 2
    double l1 = 0.0;  ///< 1 + ln r - a2 = 0

    /// ds/dt = (1 + a1/T + a2/T^2) / T. For r = 1 this equals
    /// (T^2 - T + 1)/T^3, the truncated series of 1/(T+1).
    double strain_rate(double T) const { return (1.0 + a1 / T + a2 / (T * T)) / T; }
};

AsymptoticCoefficients coefficients(double r);

/// Resummed pseudo-space rate 1/(T+1); differs from strain_rate by the
/// geometric tail 1/((T+1) T^3). Nodes of both conventions appear in the
/// factorization tests.
inline double recurrence_rate(double T) { return 1.0 / (T + 1.0); }

/// Pseudo-space / diffusion-time address of the instant t.
struct MappedPoint {
    double t = 0.0;
    double pseudo_space = 0.0;    ///< s = strain_rate * t
    double diffusion_time = 0.0;  ///< z = t / T^3
    long row = 0;                 ///< floor(t / period)
    double col = 0.0;             ///< (t mod period) / period, in [0, 1)
};

MappedPoint map_point(double t, double r, double T, double period);

/// Trajectory re-indexed as rows (recurrence count) by columns (fraction of
/// the recurrence period). Concatenating the rows reproduces the sample
/// sequence exactly once.
struct ReshapedGrid {
    double period = 0.0;
    std::vector<std::vector<std::pair<double, double>>> rows;  ///< (col, y)

    std::size_t sample_count() const {
        std::size_t n = 0;
        for (const auto& row : rows) n += row.size();
        return n;
    }
};

ReshapedGrid reshape(const dde::Trajectory& traj, double period);

/// Slow amplitude factor r^s e^{l0 z} with s = strain_rate * t, z = t/T^3.
/// Identically 1 for r = 1.
double prefactor(double r, double T, double t);

struct Peak {
    double t = 0.0;
    double y = 0.0;
};
using PeakList = std::vector<Peak>;

/// Local maxima (y[i-1] < y[i] >= y[i+1]) with t > guard and y above the
/// threshold, refined through the vertex of the parabola over the triple.
PeakList extract_peaks(const dde::Trajectory& traj, double guard, double threshold);

/// Predicted envelope of the peak sequence:
///   r = 1:   C / sqrt(t + t0)
///   r != 1:  C r^{t (1/(T+1) + ln r / T^3)} / sqrt(t + t0)
/// with C fixed by the anchor peak. A least-squares constant over a full peak
/// list is available as the alternative calibration.
class EnvelopePrediction {
public:
    EnvelopePrediction(double r, double T, double t0, Peak anchor);

    double operator()(double t) const;
    double constant() const { return c_; }
    /// d/dt of the log-envelope growth term: ln(r) (1/(T+1) + ln r / T^3).
    double growth_rate() const { return rate_; }
    double least_squares_constant(const PeakList& peaks) const;
    /// Argmin of the envelope for growing feedback; +infinity when the
    /// envelope is monotone (r <= 1).
    double minimum_time() const;

private:
    double shape(double t) const;

    double t0_;
    double rate_;
    double c_;
};

EnvelopePrediction envelope_prediction(double r, double T, double t0, Peak anchor);

/// Growth rate of the prefactor-implied envelope, ln(r) strain - ln(r)^2/(2T^3).
/// Reported alongside EnvelopePrediction::growth_rate, whose resummed 1/(T+1)
/// term it matches only up to O(1/T^3).
double prefactor_growth_rate(double r, double T);

/// Quantitative distance between one reshaped row (prefactor removed, unit
/// mass) and the wrapped heat kernel released at the initial pulse position.
struct ProfileComparison {
    long row = 0;
    double dz = 0.0;        ///< (row*period + t0) / T^3, the row's nominal spread
    double l2_err = 0.0;    ///< L2 distance over the mismatch, relative to the kernel norm
    double linf_err = 0.0;  ///< max-norm counterpart
    double peak_col_err = 0.0;
    double l2_err_raw = 0.0;
    double linf_err_raw = 0.0;
    double mass = 0.0;  ///< pre-normalization row mass in pseudo-space units
    double col_center_measured = 0.0;
    double col_center_predicted = 0.0;
    std::vector<double> cols;       ///< per-sample column positions
    std::vector<double> measured;   ///< normalized measured profile
    std::vector<double> predicted;  ///< kernel prediction at each sample
};

/// period <= 0 selects the default T + 1.
ProfileComparison compare_profiles(const dde::Trajectory& traj, double r, double T,
                                   double t0, long row, double period = 0.0);

}  // namespace laglens::mapper
