#pragma once

#include <utility>
#include <vector>

#include "blochsim/generators.hpp"
#include "blochsim/types.hpp"

namespace blochsim {

/// D(r) = (1/N)(I + c_N sum_i r_i L_i). Hermitian, unit trace by
/// construction; positivity is NOT guaranteed and is the caller's check.
HermitianOperator vector_to_state(const BlochVector& r, const GeneratorBasis& basis);

/// r_j = sqrt(N / (2(N-1))) Tr(D L_j). Requires D to be a state; throws
/// validation_error with trace/eigenvalue diagnostics otherwise.
BlochVector state_to_vector(const HermitianOperator& d, const GeneratorBasis& basis);

struct StateValidity {
    bool valid = false;
    double min_eigenvalue = 0.0;
};

/// Valid iff the mapped operator has min eigenvalue >= -1e-9.
StateValidity is_valid_state(const BlochVector& r, const GeneratorBasis& basis);

/// Tr D^2 of the mapped state: 1 - ((N-1)/N)(1 - |r|^2).
double purity(const BlochVector& r);

/// Component-wise weighted sum. Weights must be nonnegative and sum to 1
/// within 1e-12.
BlochVector convex_mix(const std::vector<std::pair<double, BlochVector>>& terms);

/// Empirical scan: largest radius rho such that rho * direction is still a
/// valid state, found by bisection on the minimum eigenvalue. No closed form
/// is claimed; for N = 2 this is 1 in every direction.
double largest_valid_radius(const BlochVector& direction, const GeneratorBasis& basis,
                            double tol = 1e-10);

/// Finite-ambient truncation demo. `split` lists the ambient basis indices
/// spanning the target projector P; the a-family follows that order and the
/// b-family is the complement in index order. With P_M the first M a's and
/// P_N = P_M + first (N-M) b's, returns Tr(D_N P_M) for
/// D_N = P_N D P_N / Tr(D P_N). Throws when Tr(D P_N) < 1e-12.
double compress_state(const HermitianOperator& ambient, const std::vector<int>& split, int m_dim, int n_dim);

} // namespace blochsim
