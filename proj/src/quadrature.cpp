#include "laglens/quadrature.hpp"

#include <cmath>

#include "laglens/errors.hpp"

namespace laglens {
namespace {

// QUADPACK dqk15 nodes and weights (positive half-axis).
constexpr double kKronrodNodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0,
};
constexpr double kKronrodWeights[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018, 0.14065325971552592,
    0.16900472663926790, 0.19035057806478540, 0.20443294007529889, 0.20948214108472782,
};
// Gauss-7 weights, matching kKronrodNodes[1], [3], [5], [7].
constexpr double kGaussWeights[4] = {
    0.12948496616886969,
    0.27970539148927666,
    0.38183005050511894,
    0.41795918367346938,
};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const double fc = f(mid);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth) {
    const PanelResult r = gk15(f, a, b);
    if (!std::isfinite(r.kronrod)) {
        throw Error("quadrature: non-finite integrand value encountered");
    }
    if (r.error <= tol || depth >= 30) return r.kronrod;
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    if (a == b) return 0.0;
    return adapt(f, a, b, tol, 0);
}

}  // namespace laglens
