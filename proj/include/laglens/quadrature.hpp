#pragma once

#include <functional>

namespace laglens {

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Panels are bisected until the local Kronrod-Gauss discrepancy falls
/// below the (absolute) tolerance share assigned to the panel.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12);

}  // namespace laglens
