#include "blochsim/observable.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace blochsim {

cmat Observable::fused_projector(int k) const {
    if (k < 0 || k >= outcome_count()) throw validation_error("partition index out of range");
    cmat p = cmat::Zero(N, N);
    for (int i : partition[k]) p += projectors[i];
    return p;
}

int Observable::block_of(int i) const {
    for (int k = 0; k < outcome_count(); ++k)
        for (int j : partition[k])
            if (j == i) return k;
    throw validation_error("eigenprojector index out of range");
}

namespace {

void attach_vertex_vectors(Observable& obs, const GeneratorBasis& basis) {
    obs.vertex_vectors.clear();
    obs.vertex_vectors.reserve(obs.N);
    for (const cmat& p : obs.projectors)
        obs.vertex_vectors.push_back(state_to_vector(HermitianOperator(p), basis));
}

void validate_projectors(const Observable& obs) {
    const int n = obs.N;
    cmat sum = cmat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const cmat& p = obs.projectors[i];
        if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw validation_error("projector " + std::to_string(i) + " is not Hermitian");
        if ((p * p - p).cwiseAbs().maxCoeff() > 1e-9 || std::abs(p.trace() - cxd(1.0)) > 1e-9)
            throw validation_error("projector " + std::to_string(i) + " is not rank-1 idempotent");
        sum += p;
    }
    if ((sum - cmat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
        throw validation_error("projectors do not sum to the identity");

    std::vector<char> seen(n, 0);
    for (const auto& block : obs.partition)
        for (int i : block) {
            if (i < 0 || i >= n) throw validation_error("partition index out of range");
            if (seen[i]) throw validation_error("partition blocks are not disjoint");
            seen[i] = 1;
        }
    if (!std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }))
        throw validation_error("partition does not cover {1..N}");
}

} // namespace

Observable observable_from_matrix(const HermitianOperator& a, const GeneratorBasis& basis,
                                  double degeneracy_tol) {
    if (!a.is_hermitian())
        throw validation_error("observable matrix is not Hermitian: max |A - A^dagger| = " +
                               std::to_string(a.hermiticity_error()));
    if (a.dim() != basis.N) throw validation_error("observable/basis dimension mismatch");

    Eigen::SelfAdjointEigenSolver<cmat> solver((a.m + a.m.adjoint()) / 2.0);
    const int n = a.dim();

    Observable obs;
    obs.N = n;
    obs.eigenvalues.resize(n);
    obs.projectors.resize(n);
    // solver sorts ascending; we keep eigenvalues descending
    for (int i = 0; i < n; ++i) {
        const int src = n - 1 - i;
        obs.eigenvalues[i] = solver.eigenvalues()[src];
        const Eigen::VectorXcd v = solver.eigenvectors().col(src);
        obs.projectors[i] = v * v.adjoint();
    }

    std::vector<int> current{0};
    for (int i = 1; i < n; ++i) {
        if (std::abs(obs.eigenvalues[i] - obs.eigenvalues[i - 1]) < degeneracy_tol) {
            current.push_back(i);
        } else {
            obs.partition.push_back(current);
            current = {i};
        }
    }
    obs.partition.push_back(current);

    attach_vertex_vectors(obs, basis);
    return obs;
}

Observable observable_from_parts(std::vector<double> eigenvalues, std::vector<cmat> projectors,
                                 std::vector<std::vector<int>> partition, const GeneratorBasis& basis) {
    Observable obs;
    obs.N = basis.N;
    if (static_cast<int>(eigenvalues.size()) != obs.N || static_cast<int>(projectors.size()) != obs.N)
        throw validation_error("observable needs N eigenvalues and N rank-1 projectors");
    obs.eigenvalues = std::move(eigenvalues);
    obs.projectors = std::move(projectors);
    obs.partition = std::move(partition);
    validate_projectors(obs);
    attach_vertex_vectors(obs, basis);
    return obs;
}

SimplexDecomposition decompose(const BlochVector& r, const Observable& obs) {
    if (r.N != obs.N) throw validation_error("vector/observable dimension mismatch");
    SimplexDecomposition dec;
    dec.barycentric.resize(obs.N);
    rvec parallel = rvec::Zero(r.ambient_dim());
    for (int i = 0; i < obs.N; ++i) {
        dec.barycentric[i] = transition_probability(r, obs, i);
        parallel += dec.barycentric[i] * obs.vertex_vectors[i].components;
    }
    dec.r_parallel = BlochVector(r.N, parallel);
    dec.r_perp = BlochVector(r.N, r.components - parallel);
    return dec;
}

double transition_probability(const BlochVector& r, const Observable& obs, int i) {
    if (i < 0 || i >= obs.N) throw validation_error("eigenstate index out of range");
    if (r.N != obs.N) throw validation_error("vector/observable dimension mismatch");
    const double n = obs.N;
    return (1.0 + (n - 1.0) * r.dot(obs.vertex_vectors[i])) / n;
}

double degenerate_probability(const BlochVector& r, const Observable& obs, int k) {
    if (k < 0 || k >= obs.outcome_count()) throw validation_error("partition index out of range");
    double p = 0.0;
    for (int i : obs.partition[k]) p += transition_probability(r, obs, i);
    return p;
}

HermitianOperator luders_update(const HermitianOperator& d, const Observable& obs, int k) {
    const cmat p = obs.fused_projector(k);
    const double prob = (d.m * p).trace().real();
    if (prob < 1e-12)
        throw validation_error("Luders update on a branch of probability " + std::to_string(prob) +
                               " (branch impossible)");
    return HermitianOperator((p * d.m * p) / prob);
}

double simplex_vertex_angle(int N) {
    if (N < 2) throw validation_error("simplex angle requires N >= 2");
    return std::acos(-1.0 / (N - 1.0));
}

BlochVector rotated_arc_vector(const Observable& obs, int i, int j, double alpha) {
    if (obs.N < 3) throw validation_error("rotated arc construction requires N >= 3");
    if (i == j) throw validation_error("rotated arc needs two distinct vertices");
    const double n = obs.N;
    const double root = std::sqrt(n * (n - 2.0));
    const double ci = std::cos(alpha) + std::sin(alpha) / root;
    const double cj = std::sin(alpha) * (n - 1.0) / root;
    rvec v = ci * obs.vertex_vectors[i].components + cj * obs.vertex_vectors[j].components;
    return BlochVector(obs.N, std::move(v));
}

} // namespace blochsim
