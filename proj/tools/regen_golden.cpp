// Maintenance tool: regenerates data/golden_pulse_oracle.csv, the committed
// variation-of-constants reference trajectory for the recurrent-pulse setup
// (r=1, T=30, history 20 e^{-(t+25)^2}, horizon 1200, 64 steps per delay).
// The regression test in tests/test_dde.cpp compares against this file.

#include <cmath>
#include <iostream>

#include "laglens/csv.hpp"
#include "laglens/dde.hpp"

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "data/golden_pulse_oracle.csv";

    laglens::dde::DdeProblem problem;
    problem.model = laglens::dde::Model::LinearDecayFeedback;
    problem.feedback_gain = 1.0;
    problem.delay = 30.0;
    problem.history = [](double t) { return 20.0 * std::exp(-(t + 25.0) * (t + 25.0)); };
    problem.horizon = 1200.0;

    laglens::dde::SolverConfig config;
    config.steps_per_delay = 64;

    const auto traj = laglens::dde::linear_oracle_integrate(problem, config);
    laglens::io::write_trajectory_csv(path, traj);
    std::cout << "wrote " << path << " (" << traj.size() << " samples)\n";
    return 0;
}
