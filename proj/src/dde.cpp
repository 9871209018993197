#include "laglens/dde.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "laglens/errors.hpp"
#include "laglens/quadrature.hpp"

namespace laglens::dde {
namespace {

double rhs(Model model, double gain, double y, double delayed) {
    switch (model) {
        case Model::LinearDecayFeedback:
            return -y + gain * delayed;
        case Model::CubicCounterexample:
            return y - delayed - y * y * y;
    }
    throw Error("dde: unknown model");
}

/// Cubic Hermite basis on one cell; theta in [0, 1].
double hermite(double y0, double y1, double d0, double d1, double h, double theta) {
    const double c = 1.0 - theta;
    return y0 * c * c * (1.0 + 2.0 * theta) + y1 * theta * theta * (3.0 - 2.0 * theta) +
           h * theta * c * (d0 * c - d1 * theta);
}

void validate(const DdeProblem& p, const SolverConfig& c) {
    if (!(p.delay > 0.0)) throw Error("dde: delay must be positive");
    if (!(p.horizon > 0.0)) throw Error("dde: horizon must be positive");
    if (!p.history) throw Error("dde: history function not set");
    if (c.steps_per_delay < 16) throw Error("dde: steps_per_delay must be at least 16");
    if (!(c.transient_guard >= 0.0)) throw Error("dde: transient_guard must be >= 0");
}

std::size_t node_count(double horizon, double h) {
    const double ratio = horizon / h;
    auto n = static_cast<std::size_t>(std::floor(ratio));
    if (ratio - static_cast<double>(n) > 1.0 - 1e-9) ++n;  // horizon sits on a node
    if (n < 1) throw HorizonTooShort("dde: horizon shorter than one step");
    return n;
}

void check_finite(double y, double t) {
    if (!std::isfinite(y) || std::abs(y) > kBlowupLimit) {
        throw NonFiniteState("dde: state blew up near t = " + std::to_string(t));
    }
}

}  // namespace

Trajectory::Trajectory(double t0, double step, std::vector<double> samples,
                       std::vector<double> derivatives, ProblemSummary summary)
    : t0_(t0),
      step_(step),
      samples_(std::move(samples)),
      derivatives_(std::move(derivatives)),
      summary_(summary) {
    if (samples_.size() < 2) throw Error("trajectory: needs at least two samples");
    if (!(step_ > 0.0)) throw Error("trajectory: step must be positive");
    if (!derivatives_.empty() && derivatives_.size() != samples_.size()) {
        throw Error("trajectory: derivative count must match sample count");
    }
}

Trajectory integrate(const DdeProblem& p, const SolverConfig& c) {
    validate(p, c);
    const long m = c.steps_per_delay;
    const double h = p.delay / static_cast<double>(m);
    const std::size_t n = node_count(p.horizon, h);

    std::vector<double> y(n + 1), dy(n + 1);
    y[0] = p.history(0.0);
    check_finite(y[0], 0.0);

    // Delayed value at a node: either a completed sample (index arithmetic makes
    // the delay alignment exact) or the history, never extrapolated.
    auto delayed_node = [&](long j) {
        const long idx = j - m;
        if (idx >= 0) return y[static_cast<std::size_t>(idx)];
        double tau = static_cast<double>(idx) * h;
        if (tau < -p.delay) tau = -p.delay;
        return p.history(tau);
    };
    // Delayed value at a cell midpoint, inside an already completed cell.
    auto delayed_mid = [&](long j) {
        const long idx = j - m;
        if (idx >= 0) {
            const auto k = static_cast<std::size_t>(idx);
            return hermite(y[k], y[k + 1], dy[k], dy[k + 1], h, 0.5);
        }
        return p.history((static_cast<double>(idx) + 0.5) * h);
    };

    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) * h;
        const double d0 = delayed_node(static_cast<long>(j));
        const double dm = delayed_mid(static_cast<long>(j));
        const double d1 = delayed_node(static_cast<long>(j) + 1);

        const double yj = y[j];
        const double k1 = rhs(p.model, p.feedback_gain, yj, d0);
        dy[j] = k1;
        const double k2 = rhs(p.model, p.feedback_gain, yj + 0.5 * h * k1, dm);
        const double k3 = rhs(p.model, p.feedback_gain, yj + 0.5 * h * k2, dm);
        const double k4 = rhs(p.model, p.feedback_gain, yj + h * k3, d1);
        y[j + 1] = yj + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_finite(y[j + 1], t + h);
    }
    dy[n] = rhs(p.model, p.feedback_gain, y[n], delayed_node(static_cast<long>(n)));

    const ProblemSummary summary{p.model, p.feedback_gain, p.delay, p.horizon,
                                 c.steps_per_delay};
    return {0.0, h, std::move(y), std::move(dy), summary};
}

double dense_eval(const Trajectory& tr, double t) {
    if (!tr.has_derivatives()) {
        throw Error("dense_eval: trajectory carries no derivative samples");
    }
    const double h = tr.step();
    const double lo = tr.t0();
    const double hi = tr.back_time();
    const double slack = 1e-9 * h;
    if (t < lo - slack || t > hi + slack) {
        throw OutOfRange("dense_eval: t outside stored span");
    }
    const double x = (t - lo) / h;
    auto i = static_cast<std::size_t>(std::max(0.0, std::floor(x)));
    if (i > tr.size() - 2) i = tr.size() - 2;
    const double theta = (t - tr.time_at(i)) / h;
    return hermite(tr.samples()[i], tr.samples()[i + 1], tr.derivatives()[i],
                   tr.derivatives()[i + 1], h, theta);
}

Trajectory linear_oracle_integrate(const DdeProblem& p, const SolverConfig& c) {
    if (p.model != Model::LinearDecayFeedback) {
        throw Error("linear_oracle_integrate: requires the linear model");
    }
    validate(p, c);
    const long m = c.steps_per_delay;
    const double h = p.delay / static_cast<double>(m);
    const std::size_t n = node_count(p.horizon, h);
    const double r = p.feedback_gain;
    const double decay = std::exp(-h);

    std::vector<double> y(n + 1), dy(n + 1);

    // Delayed value at fractional node position x (in units of h): history on
    // the first interval, previous-interval Hermite afterwards.
    auto delayed_at = [&](double x) {
        const double shifted = x - static_cast<double>(m);
        if (shifted <= 0.0) {
            double tau = shifted * h;
            if (tau < -p.delay) tau = -p.delay;
            return p.history(tau);
        }
        auto k = static_cast<std::size_t>(std::floor(shifted));
        if (k > n - 1) k = n - 1;
        const double theta = shifted - static_cast<double>(k);
        return hermite(y[k], y[k + 1], dy[k], dy[k + 1], h, theta);
    };

    y[0] = p.history(0.0);
    dy[0] = -y[0] + r * delayed_at(0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double t1 = static_cast<double>(j + 1) * h;
        double feed = 0.0;
        if (r != 0.0) {
            const double t0j = static_cast<double>(j) * h;
            feed = integrate_adaptive(
                [&](double u) { return std::exp(u - t1) * delayed_at(u / h); }, t0j, t1,
                1e-12);
        }
        y[j + 1] = y[j] * decay + r * feed;
        check_finite(y[j + 1], t1);
        dy[j + 1] = -y[j + 1] + r * delayed_at(static_cast<double>(j + 1));
    }

    const ProblemSummary summary{p.model, p.feedback_gain, p.delay, p.horizon,
                                 c.steps_per_delay};
    return {0.0, h, std::move(y), std::move(dy), summary};
}

}  // namespace laglens::dde
