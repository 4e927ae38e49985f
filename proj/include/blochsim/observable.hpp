#pragma once

#include <vector>

#include "blochsim/bloch.hpp"
#include "blochsim/generators.hpp"
#include "blochsim/types.hpp"

namespace blochsim {

/// An observable resolved into rank-1 eigenprojectors plus the degeneracy
/// partition {I_k} of {0..N-1}. Eigenvalues are sorted descending. Within a
/// degenerate cluster the individual rank-1 projectors come from the solver
/// and are not canonical; only the fused projectors P_{I_k} are. Vertex
/// vectors n_i are the Bloch images of the rank-1 projectors and span the
/// measurement simplex.
struct Observable {
    int N = 0;
    std::vector<double> eigenvalues;
    std::vector<cmat> projectors;
    std::vector<std::vector<int>> partition;
    std::vector<BlochVector> vertex_vectors;

    int outcome_count() const { return static_cast<int>(partition.size()); }

    /// P_{I_k} = sum of the rank-1 projectors in block k
    cmat fused_projector(int k) const;

    /// the partition block containing rank-1 index i
    int block_of(int i) const;

    /// degenerate eigenvalue attached to block k
    double block_eigenvalue(int k) const { return eigenvalues[partition[k].front()]; }
};

/// Eigendecomposition of a Hermitian matrix; eigenvalues closer than
/// degeneracy_tol are grouped into one partition block.
Observable observable_from_matrix(const HermitianOperator& a, const GeneratorBasis& basis,
                                  double degeneracy_tol = 1e-8);

/// Explicit construction (JSON route). Validates orthogonality, rank-1
/// projectors summing to I, and that the partition covers {0..N-1}.
Observable observable_from_parts(std::vector<double> eigenvalues, std::vector<cmat> projectors,
                                 std::vector<std::vector<int>> partition, const GeneratorBasis& basis);

/// r split against the observable's simplex: r = r_parallel + r_perp with
/// r_perp orthogonal to every vertex vector, and the unique barycentric
/// expansion r_parallel = sum_i barycentric[i] n_i. The coefficients are the
/// Born transition probabilities.
struct SimplexDecomposition {
    BlochVector r_parallel;
    BlochVector r_perp;
    std::vector<double> barycentric;
};

SimplexDecomposition decompose(const BlochVector& r, const Observable& obs);

/// (1/N)[1 + (N-1) r . n_i]; equals Tr(D(r) P_{a_i}).
double transition_probability(const BlochVector& r, const Observable& obs, int i);

/// sum over I_k of the rank-1 transition probabilities; equals Tr(D P_{I_k}).
double degenerate_probability(const BlochVector& r, const Observable& obs, int k);

/// P_{I_k} D P_{I_k} / Tr(D P_{I_k}); throws when the branch probability is
/// below 1e-12.
HermitianOperator luders_update(const HermitianOperator& d, const Observable& obs, int k);

/// cos(theta_N) = -1/(N-1), the angle between any two vertex vectors
double simplex_vertex_angle(int N);

/// The in-plane unit vector obtained by rotating n_i toward n_j by alpha:
/// n^alpha = (cos a + sin a / sqrt(N(N-2))) n_i + sin a (N-1)/sqrt(N(N-2)) n_j.
/// For alpha in (0, theta_N) it is not representative of any state (N >= 3).
BlochVector rotated_arc_vector(const Observable& obs, int i, int j, double alpha);

} // namespace blochsim
