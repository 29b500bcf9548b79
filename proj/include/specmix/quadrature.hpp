#pragma once

#include <vector>

#include <Eigen/Core>

#include "specmix/trig.hpp"

namespace specmix {

// Gauss-Legendre rule mapped to [0,1]. Nodes and weights are computed by
// Newton iteration on the Legendre recurrence, so any point count works.
class GaussLegendre {
  public:
    explicit GaussLegendre(int points);

    int points() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t q = 0; q < nodes_.size(); ++q)
            acc += weights_[q] * f(nodes_[q]);
        return acc;
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Quadrature of a product of trigonometric factors on [0,1]. This is the
// validation oracle paired with integral_triple's closed forms; production
// code only uses it to project arbitrary initial data.
double quadrature_trig_product(const std::vector<TrigFactor>& factors, int points);

}  // namespace specmix
