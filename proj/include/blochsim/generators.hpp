#pragma once

#include <vector>

#include "blochsim/types.hpp"

namespace blochsim {

/// Totally symmetric or antisymmetric rank-3 tensor over indices 0..dim-1.
/// Dense storage up to dim = 35 (N <= 6), coordinate list above that, since
/// dense memory grows like N^6.
class StructureTensor {
public:
    struct Entry {
        int i, j, k;
        double value;
    };

    StructureTensor() = default;
    StructureTensor(int dim, bool dense);

    int dim() const { return dim_; }
    bool dense() const { return dense_; }

    double operator()(int i, int j, int k) const;
    void set(int i, int j, int k, double value);

    /// w_i = sum_{j,k} T_ijk u_j v_k
    rvec contract(const rvec& u, const rvec& v) const;

    /// nonzero entries (|value| > 1e-13); for dense storage this scans
    const std::vector<Entry>& entries() const { return entries_; }

    /// call once after all set() calls; builds the nonzero list
    void finalize();

private:
    int dim_ = 0;
    bool dense_ = true;
    std::vector<double> values_;  // dense, size dim^3
    std::vector<Entry> entries_;  // nonzero list (always kept; sole storage when sparse)
};

/// The N^2-1 traceless Hermitian generators of SU(N), Hilbert-Schmidt
/// orthogonal with Tr L_i L_j = 2 delta_ij, plus their antisymmetric (f) and
/// symmetric (d) structure constants.
struct GeneratorBasis {
    int N = 0;
    std::vector<cmat> matrices;
    StructureTensor f;
    StructureTensor d;

    int count() const { return N * N - 1; }

    /// c_N = sqrt(N(N-1)/2), the radial scale of the Bloch expansion
    double c() const { return std::sqrt(N * (N - 1) / 2.0); }

    /// L_m = sum_i m_i L_i for a coefficient vector m
    cmat combine(const rvec& coeffs) const;
};

/// Canonical basis {U_jk, V_jk, W_l} ordered, for k = 2..N, as
/// (U_1k, V_1k, ..., U_{k-1,k}, V_{k-1,k}, W_{k-1}).
/// Reproduces the Pauli matrices at N=2 and the Gell-Mann matrices at N=3.
/// Throws validation_error when N < 2.
GeneratorBasis build_generators(int N);

/// f_ijk = (1/4i) Tr([L_i,L_j]_- L_k), d_ijk = (1/4) Tr([L_i,L_j]_+ L_k).
std::pair<StructureTensor, StructureTensor> structure_constants(const std::vector<cmat>& matrices);
std::pair<StructureTensor, StructureTensor> structure_constants(const GeneratorBasis& basis);

/// L'_i = sum_j Q_ij L_j for orthogonal Q; structure constants recomputed.
/// Rejects Q with max |QQ^T - I| > 1e-10.
GeneratorBasis rotate_basis(const GeneratorBasis& basis, const rmat& q);

/// (u * v)_i = c_N/(N-2) sum d_ijk u_j v_k. Undefined at N=2 (the coefficient
/// diverges); rejected with validation_error.
BlochVector star_product(const BlochVector& u, const BlochVector& v, const GeneratorBasis& basis);

/// (u ^ v)_i = sum f_ijk u_j v_k
BlochVector wedge_product(const BlochVector& u, const BlochVector& v, const GeneratorBasis& basis);

/// max over (i,j) of |Tr L_i L_j - 2 delta_ij|, plus max |Tr L_i|; used by
/// invariant checks
struct BasisDiagnostics {
    double max_trace = 0.0;
    double max_orthonormality_error = 0.0;
    double max_hermiticity_error = 0.0;
};
BasisDiagnostics check_basis(const GeneratorBasis& basis);

} // namespace blochsim
