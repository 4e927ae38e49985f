#pragma once

#include "blochsim/generators.hpp"
#include "blochsim/types.hpp"

namespace blochsim {

/// Image of exp(-iHt) conjugation in the Bloch ball: an element of
/// SO(N^2-1) acting on state vectors.
struct EvolutionMatrix {
    int N = 0;
    double t = 0.0;
    rmat v;

    /// max |VV^T - I|
    double orthogonality_error() const;
    /// |det V - 1|; looser than orthogonality since the determinant of a
    /// large orthogonal matrix amplifies float noise
    double determinant_error() const;
};

/// V_kj(t) = (1/2) Tr(U_t^dagger L_k U_t L_j) with U_t = exp(-iHt).
/// The exponential goes through the eigendecomposition of H.
EvolutionMatrix evolution_matrix(const HermitianOperator& h, double t, const GeneratorBasis& basis);

/// r(t) = V(t) r; preserves norm, purity and state validity.
BlochVector evolve_vector(const BlochVector& r, const EvolutionMatrix& v);

} // namespace blochsim
