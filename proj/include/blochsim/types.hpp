#pragma once

#include <Eigen/Dense>
#include <complex>

#include "blochsim/errors.hpp"

namespace blochsim {

using cxd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

/// A complex N x N matrix expected to be (numerically) Hermitian.
/// Carries diagnostics so callers can decide whether it qualifies as an
/// operator-state (unit trace, positive semidefinite within tolerance).
struct HermitianOperator {
    cmat m;

    HermitianOperator() = default;
    explicit HermitianOperator(cmat matrix) : m(std::move(matrix)) {}

    int dim() const { return static_cast<int>(m.rows()); }

    /// max |m - m^dagger| over entries
    double hermiticity_error() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

    double trace_deviation() const { return std::abs(m.trace() - cxd(1.0, 0.0)); }

    /// smallest eigenvalue of the Hermitian part
    double min_eigenvalue() const;

    bool is_hermitian(double tol = 1e-10) const { return hermiticity_error() <= tol; }

    /// unit trace and PSD within tolerances
    bool is_state(double trace_tol = 1e-9, double psd_tol = 1e-9) const;

    /// throws validation_error with diagnostics when not a state
    void require_state(double trace_tol = 1e-9, double psd_tol = 1e-9) const;

    static HermitianOperator identity(int n) { return HermitianOperator(cmat::Identity(n, n)); }
};

/// Real vector of dimension N^2-1 representing a point of B_1(R^{N^2-1}).
/// N is the Hilbert-space dimension it refers to.
struct BlochVector {
    int N = 0;
    rvec components;

    BlochVector() = default;
    BlochVector(int hilbert_dim, rvec c) : N(hilbert_dim), components(std::move(c)) {}

    static BlochVector zero(int hilbert_dim) {
        return BlochVector(hilbert_dim, rvec::Zero(hilbert_dim * hilbert_dim - 1));
    }

    int ambient_dim() const { return static_cast<int>(components.size()); }
    double norm() const { return components.norm(); }
    double dot(const BlochVector& other) const { return components.dot(other.components); }
};

inline void require_same_space(const BlochVector& a, const BlochVector& b) {
    if (a.N != b.N || a.ambient_dim() != b.ambient_dim())
        throw validation_error("Bloch vectors live in different spaces (N=" + std::to_string(a.N) +
                               " vs N=" + std::to_string(b.N) + ")");
}

} // namespace blochsim
