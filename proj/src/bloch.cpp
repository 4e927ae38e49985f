#include "blochsim/bloch.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace blochsim {

double HermitianOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<cmat> solver((m + m.adjoint()) / 2.0);
    return solver.eigenvalues().minCoeff();
}

bool HermitianOperator::is_state(double trace_tol, double psd_tol) const {
    return is_hermitian() && trace_deviation() <= trace_tol && min_eigenvalue() >= -psd_tol;
}

void HermitianOperator::require_state(double trace_tol, double psd_tol) const {
    if (!is_hermitian())
        throw validation_error("operator is not Hermitian: max |A - A^dagger| = " +
                               std::to_string(hermiticity_error()));
    const double tr_dev = trace_deviation();
    const double min_eig = min_eigenvalue();
    if (tr_dev > trace_tol || min_eig < -psd_tol)
        throw validation_error("operator is not a state: |Tr - 1| = " + std::to_string(tr_dev) +
                               ", min eigenvalue = " + std::to_string(min_eig));
}

HermitianOperator vector_to_state(const BlochVector& r, const GeneratorBasis& basis) {
    if (r.N != basis.N || r.ambient_dim() != basis.count())
        throw validation_error("Bloch vector length does not match N^2-1 for the basis");
    const int n = basis.N;
    cmat m = cmat::Identity(n, n);
    m += basis.c() * basis.combine(r.components);
    m /= static_cast<double>(n);
    return HermitianOperator(std::move(m));
}

BlochVector state_to_vector(const HermitianOperator& d, const GeneratorBasis& basis) {
    if (d.dim() != basis.N) throw validation_error("state/basis dimension mismatch");
    d.require_state();
    const int n = basis.N;
    const double scale = std::sqrt(n / (2.0 * (n - 1)));
    rvec r(basis.count());
    for (int j = 0; j < basis.count(); ++j)
        r[j] = scale * (d.m * basis.matrices[j]).trace().real();
    return BlochVector(n, std::move(r));
}

StateValidity is_valid_state(const BlochVector& r, const GeneratorBasis& basis) {
    const HermitianOperator d = vector_to_state(r, basis);
    StateValidity v;
    v.min_eigenvalue = d.min_eigenvalue();
    v.valid = v.min_eigenvalue >= -1e-9;
    return v;
}

double purity(const BlochVector& r) {
    const double n = r.N;
    return 1.0 - ((n - 1.0) / n) * (1.0 - r.components.squaredNorm());
}

BlochVector convex_mix(const std::vector<std::pair<double, BlochVector>>& terms) {
    if (terms.empty()) throw validation_error("convex_mix needs at least one term");
    double weight_sum = 0.0;
    for (const auto& [w, v] : terms) {
        if (w < 0.0) throw validation_error("convex_mix: negative weight " + std::to_string(w));
        require_same_space(v, terms.front().second);
        weight_sum += w;
    }
    if (std::abs(weight_sum - 1.0) > 1e-12)
        throw validation_error("convex_mix: weights sum to " + std::to_string(weight_sum) + ", expected 1");
    rvec acc = rvec::Zero(terms.front().second.ambient_dim());
    for (const auto& [w, v] : terms) acc += w * v.components;
    return BlochVector(terms.front().second.N, std::move(acc));
}

double largest_valid_radius(const BlochVector& direction, const GeneratorBasis& basis, double tol) {
    const double norm = direction.norm();
    if (norm < 1e-14) throw validation_error("largest_valid_radius needs a nonzero direction");
    const BlochVector unit(direction.N, direction.components / norm);

    // the state set is convex and contains the origin, so validity along a
    // ray is an interval [0, rho]
    double lo = 0.0, hi = 1.0;
    if (is_valid_state(unit, basis).valid) return 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const BlochVector probe(unit.N, mid * unit.components);
        (is_valid_state(probe, basis).valid ? lo : hi) = mid;
    }
    return lo;
}

double compress_state(const HermitianOperator& ambient, const std::vector<int>& split, int m_dim, int n_dim) {
    const int n0 = ambient.dim();
    ambient.require_state();
    if (split.empty()) throw validation_error("compress_state: empty split");
    std::vector<char> in_split(n0, 0);
    for (int idx : split) {
        if (idx < 0 || idx >= n0) throw validation_error("compress_state: split index out of range");
        if (in_split[idx]) throw validation_error("compress_state: duplicate split index");
        in_split[idx] = 1;
    }
    const int rank_p = static_cast<int>(split.size());
    if (m_dim < 1 || m_dim > rank_p)
        throw validation_error("compress_state: need 1 <= M <= rank(P)");
    if (n_dim < m_dim || n_dim > n0)
        throw validation_error("compress_state: need M <= N <= ambient dimension");
    if (n_dim - m_dim > n0 - rank_p)
        throw validation_error("compress_state: N - M exceeds the complement dimension");

    // a-family = split order, b-family = complement in index order
    std::vector<int> kept;
    kept.reserve(n_dim);
    for (int i = 0; i < m_dim; ++i) kept.push_back(split[i]);
    for (int idx = 0; idx < n0 && static_cast<int>(kept.size()) < n_dim; ++idx)
        if (!in_split[idx]) kept.push_back(idx);

    cmat p_m = cmat::Zero(n0, n0);
    for (int i = 0; i < m_dim; ++i) p_m(split[i], split[i]) = 1.0;
    cmat p_n = cmat::Zero(n0, n0);
    for (int idx : kept) p_n(idx, idx) = 1.0;

    const double weight = (ambient.m * p_n).trace().real();
    if (weight < 1e-12)
        throw validation_error("compress_state: Tr(D P_N) is numerically zero (degenerate compression)");
    const cmat compressed = (p_n * ambient.m * p_n) / weight;
    return (compressed * p_m).trace().real();
}

} // namespace blochsim
