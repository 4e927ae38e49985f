#include "blochsim/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace blochsim {

double EvolutionMatrix::orthogonality_error() const {
    const int dim = static_cast<int>(v.rows());
    return (v * v.transpose() - rmat::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

double EvolutionMatrix::determinant_error() const { return std::abs(v.determinant() - 1.0); }

EvolutionMatrix evolution_matrix(const HermitianOperator& h, double t, const GeneratorBasis& basis) {
    if (h.dim() != basis.N) throw validation_error("Hamiltonian/basis dimension mismatch");
    if (!h.is_hermitian())
        throw validation_error("Hamiltonian is not Hermitian: max |H - H^dagger| = " +
                               std::to_string(h.hermiticity_error()));

    Eigen::SelfAdjointEigenSolver<cmat> solver((h.m + h.m.adjoint()) / 2.0);
    const int n = basis.N;
    cmat u = cmat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const cxd phase = std::exp(cxd(0.0, -solver.eigenvalues()[i] * t));
        u += phase * (solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint());
    }

    const int dim = basis.count();
    std::vector<cmat> rotated(dim);
    for (int k = 0; k < dim; ++k) rotated[k] = u.adjoint() * basis.matrices[k] * u;

    EvolutionMatrix ev;
    ev.N = n;
    ev.t = t;
    ev.v.resize(dim, dim);
    for (int k = 0; k < dim; ++k)
        for (int j = 0; j < dim; ++j)
            ev.v(k, j) = 0.5 * (rotated[k] * basis.matrices[j]).trace().real();
    return ev;
}

BlochVector evolve_vector(const BlochVector& r, const EvolutionMatrix& v) {
    if (r.N != v.N || r.ambient_dim() != v.v.rows())
        throw validation_error("vector/evolution dimension mismatch");
    return BlochVector(r.N, v.v * r.components);
}

} // namespace blochsim
