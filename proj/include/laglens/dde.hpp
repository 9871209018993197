#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace laglens::dde {

/// Right-hand-side catalog. The artifact ships a closed set of models so that
/// every code path stays testable; adding a model means extending the enum,
/// the rhs switch in dde.cpp and the CLI parser.
enum class Model {
    LinearDecayFeedback,  ///< y' = -y + r*y(t-T)
    CubicCounterexample,  ///< y' =  y - y(t-T) - y^3
};

using HistoryFn = std::function<double(double)>;

struct DdeProblem {
    Model model = Model::LinearDecayFeedback;
    double feedback_gain = 1.0;  ///< r; ignored by the cubic model
    double delay = 1.0;          ///< T > 0
    HistoryFn history;           ///< initial data on [-delay, 0], sampled on demand
    double horizon = 1.0;        ///< integrate over [0, horizon]
};

enum class Interpolation { CubicHermite };

struct SolverConfig {
    int steps_per_delay = 64;  ///< m >= 16; the step is delay/m, never set directly
    Interpolation interpolation = Interpolation::CubicHermite;
    double transient_guard = 0.0;
};

struct ProblemSummary {
    Model model = Model::LinearDecayFeedback;
    double feedback_gain = 0.0;
    double delay = 0.0;
    double horizon = 0.0;
    int steps_per_delay = 0;
};

/// Samples above this magnitude are treated as blow-up.
inline constexpr double kBlowupLimit = 1e12;

/// Uniformly sampled solution plus the nodal derivatives needed for cubic
/// Hermite dense output. Immutable once built; node i sits at t0 + i*step.
/// Trajectories loaded from CSV carry no derivatives and cannot be
/// dense-evaluated, but support every sample-based operation.
class Trajectory {
public:
    Trajectory(double t0, double step, std::vector<double> samples,
               std::vector<double> derivatives, ProblemSummary summary);

    double t0() const { return t0_; }
    double step() const { return step_; }
    std::size_t size() const { return samples_.size(); }
    double time_at(std::size_t i) const { return t0_ + step_ * static_cast<double>(i); }
    double back_time() const { return time_at(samples_.size() - 1); }
    const std::vector<double>& samples() const { return samples_; }
    const std::vector<double>& derivatives() const { return derivatives_; }
    bool has_derivatives() const { return !derivatives_.empty(); }
    const ProblemSummary& summary() const { return summary_; }

private:
    double t0_;
    double step_;
    std::vector<double> samples_;
    std::vector<double> derivatives_;
    ProblemSummary summary_;
};

/// Method-of-steps integration with the classical 4-stage Runge-Kutta scheme.
/// The grid is aligned to the delay (step = delay/m), so every derivative
/// discontinuity t = k*delay falls on a node and the formal order survives.
/// Delayed stage values are read from the history on the first delay interval
/// and from the cubic Hermite dense output afterwards.
Trajectory integrate(const DdeProblem& problem, const SolverConfig& config);

/// Cubic Hermite dense output; exact at the nodes, C1 across them.
double dense_eval(const Trajectory& traj, double t);

/// Reference integrator for the linear model: per step, variation of constants
/// y(t+h) = y(t) e^{-h} + r Int e^{-(t+h-u)} yhat(u-T) du with the delayed term
/// read from the history or from the previous interval's Hermite interpolant,
/// and the integral evaluated by adaptive Gauss-Kronrod quadrature to 1e-12.
/// Independent of the Runge-Kutta path; serves as ground truth in tests.
Trajectory linear_oracle_integrate(const DdeProblem& problem, const SolverConfig& config);

}  // namespace laglens::dde
