#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "blochsim/density.hpp"
#include "blochsim/errors.hpp"

namespace blochsim {

/// Exact arithmetic carrier for the combinatorial results. Floats are
/// banned in this module: the claims are exact identities and the 2^n - 1
/// term sums would drown in rounding.
using Rational = mpq_class;
using BigInt = mpz_class;

std::string to_fraction_string(const Rational& q);

/// A membrane built from n equal-width cells, each either disintegrable (1)
/// or not (0). The all-zero structure produces no outcomes and is excluded.
struct CellularDensity {
    std::vector<bool> cells;  // index 0 = leftmost cell

    int n() const { return static_cast<int>(cells.size()); }
    int n_d() const;
    void validate() const;
};

/// Probability that the disintegration point falls left of the particle,
/// with the particle sitting at the boundary after cell n - i:
/// (# of d-cells among the leftmost n-i) / n_d, exact.
Rational cellular_probability(const CellularDensity& rho, int i);

/// Uniform average of cellular_probability over all 2^n - 1 admissible
/// structures, by exhaustive enumeration. Equals (n-i)/n exactly. n above
/// the cap (default 20, about 10^6 structures) is refused with a
/// resource_error pointing at the closed form. max_threads <= 0 picks the
/// hardware concurrency; partial sums are exact and merged associatively, so
/// the result is independent of the partitioning.
Rational average_over_structures(int n, int i, int max_threads = 0, int enumeration_cap = 20);

/// (n-i)/n, the uniform-membrane reference
Rational uniform_reference(int n, int i);

/// Exact verification of the two binomial identities behind the recurrence:
///   sum_k k/(k+1) C(n,k) = (2^n (n-1) + 1)/(n+1)
///   sum_k 1/(k+1) C(n,k) = (2^{n+1} - 1)/(n+1)
struct IdentityReport {
    int n = 0;
    Rational lhs_first, rhs_first;
    Rational lhs_second, rhs_second;
    bool first_holds = false;
    bool second_holds = false;
};
IdentityReport identity_check(int n);

/// Cellular approximation of an arbitrary density: m coarse cells of ell
/// elementary cells each. Picks per-coarse-cell d-counts minimizing
/// |n_i^d / n^d - mass(S_i)| under iterative renormalization of n^d.
struct DensityApproximation {
    CellularDensity cells;
    int m = 0, ell = 0;
    double max_deviation = 0.0;  // realized max_i |n_i^d/n^d - mass(S_i)|
};
DensityApproximation approximate_density(const DisintegrationDensity& target, int m, int ell);

/// Reorganize a multi-dimensional cellular membrane into a linear one: the
/// cells inside the measured region occupy the leftmost positions (in
/// enumeration order), the outside cells follow, and the split index is the
/// outside count, so cellular_probability(result, i) equals
/// (d-cells inside) / (d-cells total) exactly.
std::pair<CellularDensity, int> flatten_multidim(const std::vector<bool>& grid_cells,
                                                 const std::vector<bool>& region_mask);

} // namespace blochsim
