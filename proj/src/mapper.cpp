#include "laglens/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "laglens/diffusion.hpp"
#include "laglens/errors.hpp"

namespace laglens::mapper {
namespace {

double wrap_unit(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

double circular_distance(double a, double b) {
    const double d = std::abs(wrap_unit(a) - wrap_unit(b));
    return std::min(d, 1.0 - d);
}

/// Vertex of the parabola through (-1, ym), (0, y0), (1, yp); returns the
/// abscissa offset and the vertex value. Requires y0 to be a strict interior
/// maximum so the curvature is negative.
std::pair<double, double> parabola_vertex(double ym, double y0, double yp) {
    const double curve = ym - 2.0 * y0 + yp;
    const double slope = 0.5 * (yp - ym);
    const double dx = -slope / curve;
    return {dx, y0 + 0.5 * slope * dx};
}

}  // namespace

AsymptoticCoefficients coefficients(double r) {
    if (!(r > 0.0)) throw Error("mapper: feedback gain must be positive");
    AsymptoticCoefficients c;
    const double lnr = std::log(r);
    c.a1 = -1.0;
    c.a2 = 1.0 + lnr;
    c.l0 = -0.5 * lnr * lnr;
    c.l1 = 1.0 + lnr - c.a2;
    return c;
}

MappedPoint map_point(double t, double r, double T, double period) {
    if (!(period > 0.0)) throw Error("mapper: period must be positive");
    const AsymptoticCoefficients c = coefficients(r);
    MappedPoint p;
    p.t = t;
    p.pseudo_space = c.strain_rate(T) * t;
    p.diffusion_time = t / (T * T * T);
    p.row = static_cast<long>(std::floor(t / period));
    p.col = (t - static_cast<double>(p.row) * period) / period;
    if (p.col >= 1.0) p.col = 0.0;
    return p;
}

ReshapedGrid reshape(const dde::Trajectory& traj, double period) {
    if (!(period > 0.0)) throw Error("mapper: period must be positive");
    if (traj.t0() < 0.0) throw Error("mapper: reshape expects sample times >= 0");
    ReshapedGrid grid;
    grid.period = period;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.time_at(i);
        const long row = static_cast<long>(std::floor(t / period));
        double col = (t - static_cast<double>(row) * period) / period;
        if (col >= 1.0) col = 0.0;
        if (row >= static_cast<long>(grid.rows.size())) {
            grid.rows.resize(static_cast<std::size_t>(row) + 1);
        }
        grid.rows[static_cast<std::size_t>(row)].emplace_back(col, traj.samples()[i]);
    }
    return grid;
}

double prefactor(double r, double T, double t) {
    const AsymptoticCoefficients c = coefficients(r);
    const double s = c.strain_rate(T) * t;
    const double z = t / (T * T * T);
    return std::pow(r, s) * std::exp(c.l0 * z);
}

PeakList extract_peaks(const dde::Trajectory& traj, double guard, double threshold) {
    if (!(guard >= 0.0)) throw Error("mapper: guard must be >= 0");
    const auto& y = traj.samples();
    PeakList peaks;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i - 1] < y[i] && y[i] >= y[i + 1])) continue;
        const double t = traj.time_at(i);
        if (t <= guard || !(y[i] > threshold)) continue;
        const auto [dx, value] = parabola_vertex(y[i - 1], y[i], y[i + 1]);
        peaks.push_back({t + dx * traj.step(), value});
    }
    if (peaks.empty()) {
        throw NoPeaks("extract_peaks: no local maximum above the threshold");
    }
    return peaks;
}

EnvelopePrediction::EnvelopePrediction(double r, double T, double t0, Peak anchor)
    : t0_(t0) {
    if (!(r > 0.0)) throw Error("envelope: feedback gain must be positive");
    if (!(anchor.y > 0.0)) {
        throw DegenerateAnchor("envelope: anchor amplitude must be positive");
    }
    const double lnr = std::log(r);
    rate_ = lnr * (1.0 / (T + 1.0) + lnr / (T * T * T));
    c_ = anchor.y / shape(anchor.t);
}

double EnvelopePrediction::shape(double t) const {
    if (!(t + t0_ > 0.0)) {
        throw DomainError("envelope: t + t0 must be positive");
    }
    return std::exp(rate_ * t) / std::sqrt(t + t0_);
}

double EnvelopePrediction::operator()(double t) const { return c_ * shape(t); }

double EnvelopePrediction::least_squares_constant(const PeakList& peaks) const {
    double num = 0.0, den = 0.0;
    for (const Peak& p : peaks) {
        const double g = shape(p.t);
        num += g * p.y;
        den += g * g;
    }
    if (den == 0.0) throw DegenerateAnchor("envelope: empty peak list");
    return num / den;
}

double EnvelopePrediction::minimum_time() const {
    if (!(rate_ > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / (2.0 * rate_) - t0_;
}

EnvelopePrediction envelope_prediction(double r, double T, double t0, Peak anchor) {
    return {r, T, t0, anchor};
}

double prefactor_growth_rate(double r, double T) {
    const AsymptoticCoefficients c = coefficients(r);
    return std::log(r) * c.strain_rate(T) + c.l0 / (T * T * T);
}

ProfileComparison compare_profiles(const dde::Trajectory& traj, double r, double T,
                                   double t0, long row, double period) {
    const double P = period > 0.0 ? period : T + 1.0;
    const AsymptoticCoefficients coeff = coefficients(r);
    const double strain = coeff.strain_rate(T);
    const ReshapedGrid grid = reshape(traj, P);

    if (row < 0 || row >= static_cast<long>(grid.rows.size()) ||
        grid.rows[static_cast<std::size_t>(row)].empty()) {
        throw RowOutOfRange("compare_profiles: row " + std::to_string(row) +
                            " not present in the trajectory");
    }

    // Localization gate, measured on the first recurrence: full width at 1/e
    // of the row-0 maximum must stay below T/4.
    {
        const auto& first = grid.rows.front();
        std::size_t imax = 0;
        for (std::size_t i = 1; i < first.size(); ++i) {
            if (first[i].second > first[imax].second) imax = i;
        }
        const double cutoff = first[imax].second / std::exp(1.0);
        std::size_t lo = imax, hi = imax;
        while (lo > 0 && first[lo - 1].second >= cutoff) --lo;
        while (hi + 1 < first.size() && first[hi + 1].second >= cutoff) ++hi;
        const double width = static_cast<double>(hi - lo) * traj.step();
        if (width > T / 4.0) {
            throw NotLocalized("compare_profiles: initial profile width " +
                               std::to_string(width) + " exceeds T/4");
        }
    }

    const auto& samples = grid.rows[static_cast<std::size_t>(row)];
    const double ds = strain * traj.step();
    const double center = -strain * t0;  // pulse position in pseudo-space, mod 1

    ProfileComparison cmp;
    cmp.row = row;
    cmp.dz = (static_cast<double>(row) * P + t0) / (T * T * T);
    cmp.cols.reserve(samples.size());
    cmp.measured.reserve(samples.size());
    cmp.predicted.reserve(samples.size());

    // Remove the slow amplitude factor, then normalize the row to unit mass in
    // pseudo-space so amplitude conventions drop out of the comparison.
    double mass = 0.0;
    for (const auto& [col, y] : samples) {
        const double t = (static_cast<double>(row) + col) * P;
        const double scaled = y / prefactor(r, T, t);
        cmp.cols.push_back(col);
        cmp.measured.push_back(scaled);
        mass += scaled * ds;
    }
    if (!(mass > 0.0)) {
        throw Error("compare_profiles: row has non-positive mass");
    }
    cmp.mass = mass;
    for (double& v : cmp.measured) v /= mass;

    // Kernel prediction at each sample's own pseudo-space position and spread.
    // The spread is not frozen across the row: at the earliest recurrences it
    // still changes noticeably within one period, and freezing it would charge
    // that drift to the comparison.
    double diff2 = 0.0, ref2 = 0.0, diff_max = 0.0, ref_max = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = (static_cast<double>(row) + samples[i].first) * P;
        const double s = strain * t;
        const double spread = (t + t0) / (T * T * T);
        const double pred = diffusion::wrapped_heat_kernel(wrap_unit(s),
                                                           wrap_unit(center), spread);
        cmp.predicted.push_back(pred);
        const double d = cmp.measured[i] - pred;
        diff2 += d * d * ds;
        ref2 += pred * pred * ds;
        diff_max = std::max(diff_max, std::abs(d));
        ref_max = std::max(ref_max, pred);
    }
    cmp.l2_err_raw = std::sqrt(diff2);
    cmp.linf_err_raw = diff_max;
    cmp.l2_err = cmp.l2_err_raw / std::sqrt(ref2);
    cmp.linf_err = diff_max / ref_max;

    // Measured pulse position in the row, parabola-refined.
    {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < cmp.measured.size(); ++i) {
            if (cmp.measured[i] > cmp.measured[imax]) imax = i;
        }
        double col_meas = cmp.cols[imax];
        if (imax > 0 && imax + 1 < cmp.measured.size() &&
            cmp.measured[imax - 1] - 2.0 * cmp.measured[imax] + cmp.measured[imax + 1] <
                0.0) {
            const auto [dx, value] = parabola_vertex(
                cmp.measured[imax - 1], cmp.measured[imax], cmp.measured[imax + 1]);
            (void)value;
            col_meas += dx * traj.step() / P;
        }
        cmp.col_center_measured = col_meas;
    }
    // Predicted position: the column where strain*(t + t0) crosses an integer.
    {
        const double x = strain * (static_cast<double>(row) * P + t0);
        const double frac = x - std::floor(x);
        double col_pred = (frac == 0.0 ? 0.0 : (1.0 - frac)) / (strain * P);
        col_pred = wrap_unit(col_pred);
        cmp.col_center_predicted = col_pred;
    }
    cmp.peak_col_err = circular_distance(cmp.col_center_measured, cmp.col_center_predicted);

    return cmp;
}

}  // namespace laglens::mapper
