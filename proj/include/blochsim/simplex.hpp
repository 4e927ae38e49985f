#pragma once

#include <vector>

#include "blochsim/observable.hpp"
#include "blochsim/types.hpp"

namespace blochsim {

/// mu(simplex_{N-1}) = (sqrt(N-1)/(N-1)!) (N/(N-1))^{N/2}
double simplex_volume_closed(int N);

/// Measure of a face simplex of the eigenbasis simplex: edges keep the full
/// length sqrt(2N/(N-1)), so this is not mu(simplex_{N-2}).
/// mu = (sqrt(N-1)/(N-2)!) (N/(N-1))^{(N-2)/2}
double face_volume_closed(int N);

/// radius of the inscribed ball, 1/(N-1); also the largest radius around the
/// origin guaranteed to hold only states
double inradius(int N);

/// Cayley-Menger determinant volume for N affinely independent vertices
/// given in any ambient dimension. Throws on degenerate vertex sets.
double simplex_volume_cayley_menger(const std::vector<rvec>& vertices);

/// Distance from r_parallel to the face opposite vertex i, via the closed
/// form (N/(N-1)) * barycentric_i.
double height_to_face(const SimplexDecomposition& dec, int i, const Observable& obs);

/// mu(A_i): measure of the sub-region spanned when vertex i is replaced by
/// the on-membrane point. mu(A_i) = (1/(N-1)) mu(face) h^i and the ratio
/// mu(A_i)/mu(simplex) reproduces the Born probability.
double region_measure(const SimplexDecomposition& dec, int i, const Observable& obs);

} // namespace blochsim
