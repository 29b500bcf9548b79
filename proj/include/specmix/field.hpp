#pragma once

#include <functional>

#include <Eigen/Core>

#include "specmix/basis.hpp"

namespace specmix {

// Truncated spectral expansion of the scalar: coefficients a_mn packed in
// ModeSpace order.
struct SpectralField {
    ModeSpace space;
    Eigen::VectorXd coeffs;

    SpectralField(ModeSpace s, Eigen::VectorXd c);
    static SpectralField zero(const ModeSpace& space);
};

double reconstruct_at(const SpectralField& field, double x, double y);

// Uniform samples including both boundaries, resolution points per axis.
Eigen::MatrixXd reconstruct_grid(const SpectralField& field, int resolution);

// sigma-weighted ||phi||^2 = sum sigma_m sigma_n a_mn^2 (Parseval).
double field_norm_sq(const SpectralField& field);

// integral of phi over the square (a_00 for cosine; lobe sums for sine).
double field_integral(const SpectralField& field);

// ||grad phi||^2. Sine basis: (pi^2/4) sum (i^2+j^2) a_ij^2; cosine basis:
// the sigma-weighted analogue (pi^2/2) sum (i^2 sigma_j + j^2 sigma_i) a_ij^2.
double gradient_energy(const SpectralField& field);

// Per-coefficient weights w with gradient_energy = sum w a^2.
Eigen::VectorXd gradient_energy_weights(const ModeSpace& space);

// Strict form of the sine-basis objective; throws BasisMismatch on cosine
// fields (their boundary conditions change the formula; use gradient_energy).
double objective_Q(const SpectralField& field);

// ||phi - mean0||^2 where mean0 is a reference spatial mean (the mixing
// variance uses the initial mean).
double variance_about(const SpectralField& field, double mean0);

// L2 projection of f onto the basis: a_mn = 1/(sigma_m sigma_n) <f, psi_mn>,
// inner products by tensor Gauss-Legendre quadrature.
SpectralField project_function(const std::function<double(double, double)>& f,
                               const ModeSpace& space, int quad_points = 64);

}  // namespace specmix
