#include "specmix/operator.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include "specmix/csv.hpp"
#include "specmix/errors.hpp"

namespace specmix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

OdeOperator::OdeOperator(ModeSpace s, double kappa_, const CouplingTensors* t)
    : space(s), kappa(kappa_), diffusion(s.dim()), tensors(t) {
    for (int idx = 0; idx < space.dim(); ++idx) {
        const auto [m, n] = space.mode_of(idx);
        diffusion(idx) =
            kappa * kPi * kPi * (static_cast<double>(m) * m + static_cast<double>(n) * n);
    }
    if (tensors && tensors->scalar_modes() != space.max_mode())
        throw DimensionMismatch("OdeOperator: tensors built for a different N");
}

Eigen::MatrixXd assemble_advection(const CouplingTensors& tensors,
                                   const VelocityCoefficients& vel) {
    if (vel.max_mode() != tensors.velocity_modes())
        throw DimensionMismatch("assemble_advection: vel.M != tensors.M");
    const ModeSpace space(BasisKind::SineSine, tensors.scalar_modes());
    Eigen::MatrixXd advection = Eigen::MatrixXd::Zero(space.dim(), space.dim());
    for (const auto& [key, value] : tensors.A()) {
        const auto [m, n, k, l, i, j] = key;
        advection(space.index(m, n), space.index(i, j)) += 4.0 * kPi * i * value * vel.alpha(k, l);
    }
    for (const auto& [key, value] : tensors.B()) {
        const auto [m, n, k, l, i, j] = key;
        advection(space.index(m, n), space.index(i, j)) += 4.0 * kPi * j * value * vel.beta(k, l);
    }
    return advection;
}

Eigen::VectorXd assemble_rhs(const OdeOperator& op, const Eigen::MatrixXd& advection,
                             const Eigen::VectorXd& a) {
    if (a.size() != op.space.dim())
        throw DimensionMismatch("assemble_rhs: state size != operator dim");
    if (advection.size() == 0) return -op.diffusion.cwiseProduct(a);
    if (advection.rows() != op.space.dim() || advection.cols() != op.space.dim())
        throw DimensionMismatch("assemble_rhs: advection shape != operator dim");
    return -(advection * a) - op.diffusion.cwiseProduct(a);
}

Eigen::VectorXd assemble_rhs(const OdeOperator& op, const VelocityCoefficients& vel,
                             const Eigen::VectorXd& a) {
    if (!op.tensors) throw ValidationError("assemble_rhs: operator has no coupling tensors");
    return assemble_rhs(op, assemble_advection(*op.tensors, vel), a);
}

double decay_rate_P(const OdeOperator& op, const Eigen::MatrixXd& advection,
                    const SpectralField& a) {
    const Eigen::VectorXd w = gradient_energy_weights(op.space);
    const Eigen::VectorXd rhs = assemble_rhs(op, advection, a.coeffs);
    return 2.0 * (w.cwiseProduct(a.coeffs)).dot(rhs);
}

double decay_rate_P(const OdeOperator& op, const VelocityCoefficients& vel,
                    const SpectralField& a) {
    if (!op.tensors) throw ValidationError("decay_rate_P: operator has no coupling tensors");
    return decay_rate_P(op, assemble_advection(*op.tensors, vel), a);
}

BilinearForm build_bilinear_form(const CouplingTensors& tensors) {
    const int N = tensors.scalar_modes();
    const int M = tensors.velocity_modes();
    const ModeSpace scalar_space(BasisKind::SineSine, N);

    BilinearForm form;
    form.scalar_modes = N;
    form.velocity_modes = M;
    form.Q_diag.resize(N * N);
    for (int idx = 0; idx < N * N; ++idx) {
        const auto [i, j] = scalar_space.mode_of(idx);
        form.Q_diag(idx) =
            0.25 * kPi * kPi * (static_cast<double>(i) * i + static_cast<double>(j) * j);
    }
    form.Z_diag.resize(M * M);
    for (int k = 1; k <= M; ++k)
        for (int l = 1; l <= M; ++l)
            form.Z_diag((k - 1) * M + (l - 1)) =
                1.0 + (static_cast<double>(k) * k) / (static_cast<double>(l) * l);

    std::vector<std::vector<Eigen::Triplet<double>>> triplets(N * N);
    for (const auto& [key, value] : tensors.A()) {
        const auto [m, n, k, l, i, j] = key;
        triplets[scalar_space.index(m, n)].emplace_back(
            (k - 1) * M + (l - 1), scalar_space.index(i, j), 4.0 * kPi * i * value);
    }
    for (const auto& [key, value] : tensors.B()) {
        const auto [m, n, k, l, i, j] = key;
        triplets[scalar_space.index(m, n)].emplace_back(
            (k - 1) * M + (l - 1), scalar_space.index(i, j),
            -4.0 * kPi * j * (static_cast<double>(k) / l) * value);
    }
    form.C_blocks.resize(N * N);
    for (int block = 0; block < N * N; ++block) {
        form.C_blocks[block].resize(M * M, N * N);
        form.C_blocks[block].setFromTriplets(triplets[block].begin(), triplets[block].end());
    }
    return form;
}

Eigen::VectorXd bilinear_advection_apply(const BilinearForm& form,
                                         const Eigen::VectorXd& alpha_packed,
                                         const Eigen::VectorXd& a) {
    const int dim = form.scalar_modes * form.scalar_modes;
    if (alpha_packed.size() != form.velocity_modes * form.velocity_modes)
        throw DimensionMismatch("bilinear_advection_apply: alpha length != M^2");
    if (a.size() != dim) throw DimensionMismatch("bilinear_advection_apply: state length != N^2");
    Eigen::VectorXd out(dim);
    for (int block = 0; block < dim; ++block)
        out(block) = alpha_packed.dot(form.C_blocks[block] * a);
    return out;
}

double stability_budget(const OdeOperator& op, double advection_norm, double c_stab) {
    const int N = op.space.max_mode();
    return c_stab / (op.kappa * kPi * kPi * 2.0 * N * N + advection_norm);
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& matrix) {
    os << "row,col,value\n";
    for (Eigen::Index r = 0; r < matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < matrix.cols(); ++c)
            os << r << ',' << c << ',' << format_double(matrix(r, c)) << '\n';
}

void write_diagonal_csv(std::ostream& os, const Eigen::VectorXd& diagonal) {
    os << "row,col,value\n";
    for (Eigen::Index r = 0; r < diagonal.size(); ++r)
        os << r << ',' << r << ',' << format_double(diagonal(r)) << '\n';
}

}  // namespace specmix
