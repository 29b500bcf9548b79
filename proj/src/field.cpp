#include "specmix/field.hpp"

#include <cmath>

#include "specmix/errors.hpp"
#include "specmix/quadrature.hpp"

namespace specmix {

namespace {
constexpr double kPi = 3.14159265358979323846;

double basis_factor(BasisKind basis, int mode, double x) {
    return basis == BasisKind::SineSine ? std::sin(mode * kPi * x) : std::cos(mode * kPi * x);
}
}  // namespace

SpectralField::SpectralField(ModeSpace s, Eigen::VectorXd c) : space(s), coeffs(std::move(c)) {
    if (coeffs.size() != space.dim())
        throw DimensionMismatch("SpectralField: coefficient count != space dim");
}

SpectralField SpectralField::zero(const ModeSpace& space) {
    return SpectralField(space, Eigen::VectorXd::Zero(space.dim()));
}

double reconstruct_at(const SpectralField& field, double x, double y) {
    const ModeSpace& sp = field.space;
    double v = 0.0;
    for (int idx = 0; idx < sp.dim(); ++idx) {
        const auto [m, n] = sp.mode_of(idx);
        v += field.coeffs(idx) * basis_factor(sp.basis(), m, x) * basis_factor(sp.basis(), n, y);
    }
    return v;
}

Eigen::MatrixXd reconstruct_grid(const SpectralField& field, int resolution) {
    if (resolution < 2) throw ValidationError("reconstruct_grid: resolution must be >= 2");
    const ModeSpace& sp = field.space;
    const int per = sp.modes_per_axis();
    const int lo = sp.min_mode();
    // Separable evaluation: phi = Fx^T C Fy with C the coefficient matrix.
    Eigen::MatrixXd C(per, per);
    for (int idx = 0; idx < sp.dim(); ++idx) {
        const auto [m, n] = sp.mode_of(idx);
        C(m - lo, n - lo) = field.coeffs(idx);
    }
    Eigen::MatrixXd F(resolution, per);
    for (int r = 0; r < resolution; ++r) {
        const double x = static_cast<double>(r) / (resolution - 1);
        for (int m = 0; m < per; ++m) F(r, m) = basis_factor(sp.basis(), lo + m, x);
    }
    return F * C * F.transpose();
}

double field_norm_sq(const SpectralField& field) {
    const ModeSpace& sp = field.space;
    double acc = 0.0;
    for (int idx = 0; idx < sp.dim(); ++idx) {
        const auto [m, n] = sp.mode_of(idx);
        acc += sp.sigma(m) * sp.sigma(n) * field.coeffs(idx) * field.coeffs(idx);
    }
    return acc;
}

double field_integral(const SpectralField& field) {
    const ModeSpace& sp = field.space;
    if (sp.basis() == BasisKind::CosineCosine) return field.coeffs(sp.index(0, 0));
    // int_0^1 sin(m pi x) dx = 2/(m pi) for odd m, else 0.
    double acc = 0.0;
    for (int idx = 0; idx < sp.dim(); ++idx) {
        const auto [m, n] = sp.mode_of(idx);
        if (m % 2 == 0 || n % 2 == 0) continue;
        acc += field.coeffs(idx) * (2.0 / (m * kPi)) * (2.0 / (n * kPi));
    }
    return acc;
}

Eigen::VectorXd gradient_energy_weights(const ModeSpace& space) {
    Eigen::VectorXd w(space.dim());
    for (int idx = 0; idx < space.dim(); ++idx) {
        const auto [i, j] = space.mode_of(idx);
        if (space.basis() == BasisKind::SineSine) {
            w(idx) = 0.25 * kPi * kPi *
                     (static_cast<double>(i) * i + static_cast<double>(j) * j);
        } else {
            // d/dx turns cos(i pi x) into a sine with mass 1/2 (zero mass at
            // i = 0, where the i^2 prefactor vanishes anyway).
            w(idx) = 0.5 * kPi * kPi *
                     (static_cast<double>(i) * i * space.sigma(j) +
                      static_cast<double>(j) * j * space.sigma(i));
        }
    }
    return w;
}

double gradient_energy(const SpectralField& field) {
    return gradient_energy_weights(field.space).dot(field.coeffs.cwiseAbs2());
}

double objective_Q(const SpectralField& field) {
    if (field.space.basis() != BasisKind::SineSine)
        throw BasisMismatch("objective_Q: defined for the sine basis; see gradient_energy");
    return gradient_energy(field);
}

double variance_about(const SpectralField& field, double mean0) {
    // ||phi - mean0||^2 = ||phi||^2 - 2 mean0 int phi + mean0^2
    return field_norm_sq(field) - 2.0 * mean0 * field_integral(field) + mean0 * mean0;
}

SpectralField project_function(const std::function<double(double, double)>& f,
                               const ModeSpace& space, int quad_points) {
    const GaussLegendre rule(quad_points);
    const auto& xs = rule.nodes();
    const auto& ws = rule.weights();
    const int q = rule.points();
    const int per = space.modes_per_axis();
    const int lo = space.min_mode();

    Eigen::MatrixXd samples(q, q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) samples(a, b) = f(xs[a], xs[b]);

    Eigen::MatrixXd F(per, q);  // basis factor x weight, per axis
    for (int m = 0; m < per; ++m)
        for (int a = 0; a < q; ++a)
            F(m, a) = basis_factor(space.basis(), lo + m, xs[a]) * ws[a];

    const Eigen::MatrixXd inner = F * samples * F.transpose();
    Eigen::VectorXd coeffs(space.dim());
    for (int idx = 0; idx < space.dim(); ++idx) {
        const auto [m, n] = space.mode_of(idx);
        coeffs(idx) = inner(m - lo, n - lo) / (space.sigma(m) * space.sigma(n));
    }
    return SpectralField(space, std::move(coeffs));
}

}  // namespace specmix
