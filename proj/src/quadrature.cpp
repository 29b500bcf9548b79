#include "specmix/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace specmix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

GaussLegendre::GaussLegendre(int points) {
    if (points < 1) throw std::invalid_argument("GaussLegendre: points must be >= 1");
    const int n = points;
    nodes_.resize(n);
    weights_.resize(n);
    // Roots of P_n on [-1,1] by Newton from the Chebyshev estimate, then
    // mapped to [0,1]. Symmetric pairs share one solve.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes_[i] = 0.5 * (1.0 - x);
        nodes_[n - 1 - i] = 0.5 * (1.0 + x);
        weights_[i] = 0.5 * w;
        weights_[n - 1 - i] = 0.5 * w;
    }
}

double quadrature_trig_product(const std::vector<TrigFactor>& factors, int points) {
    const GaussLegendre rule(points);
    return rule.integrate([&](double x) {
        double v = 1.0;
        for (const auto& f : factors) {
            const double arg = f.mode * kPi * x;
            v *= f.function == Trig::Sin ? std::sin(arg) : std::cos(arg);
        }
        return v;
    });
}

}  // namespace specmix
