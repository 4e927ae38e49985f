#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "blochsim/errors.hpp"
#include "blochsim/rng.hpp"

namespace blochsim {

/// Disintegration law of a 1-membrane on [-1, 1]: an absolutely continuous
/// piecewise-constant part plus point masses. Total mass must be 1.
struct DisintegrationDensity {
    struct Piece {
        double lo, hi, height;
    };
    struct Atom {
        double x0, mass;
    };

    std::vector<Piece> pieces;
    std::vector<Atom> atoms;

    double total_mass() const;
    void validate() const;

    static DisintegrationDensity uniform();
    /// uniformly disintegrable only on [-eps, eps]; eps = 0 degenerates to a
    /// single atom at the origin (the pure-measurement limit)
    static DisintegrationDensity epsilon_model(double eps);
};

/// Outcome probabilities of a two-outcome membrane measurement with the
/// particle at coordinate x_p. boundary_flag marks the unstable-equilibrium
/// convention: an atom sitting exactly at x_p is split half-half.
struct SplitProbability {
    double p1 = 0.0;
    double p2 = 0.0;
    bool boundary_flag = false;
};

/// p1 = rho-measure of [-1, x_p], p2 of [x_p, 1].
SplitProbability density_probability(double x_p, const DisintegrationDensity& rho);

/// Closed-form epsilon-model probabilities:
///   p1 = 0 for x_p <= -eps, (1 + x_p/eps)/2 in between, 1 for x_p >= eps.
/// eps = 1 is the uniform (Born) case; eps = 0 the deterministic step, with
/// the x_p = 0 unstable equilibrium flagged and split half-half.
SplitProbability epsilon_probability(double x_p, double eps);

/// Inverse-CDF draw from a density (component choice by mass, then uniform
/// within the piece).
double sample_from_density(const DisintegrationDensity& rho, SampleRng& rng);

/// Two-outcome observable of a qubit: the +/- eigenstates along a unit axis
/// of the 3-dimensional Bloch ball.
struct DirectionObservable2D {
    Eigen::Vector3d axis;

    explicit DirectionObservable2D(const Eigen::Vector3d& a);
};

/// Probability of observing the given outcome signs in sequence, starting
/// from the eigenstate `initial`, under epsilon-model membranes. The state
/// updates to the obtained eigenvector after each step (first kind).
double sequential_probability(const Eigen::Vector3d& initial,
                              const std::vector<std::pair<DirectionObservable2D, int>>& steps,
                              double eps);

/// The fixed coplanar measurement triple used by the violation arguments:
/// angle(b, c) = pi/4, angle(a, b) = pi/2.
struct AbcGeometry {
    Eigen::Vector3d a, b, c;
};
AbcGeometry abc_geometry();

/// Sequential probabilities of the a/b/c experiment and the classical bound
/// P(b and c) - P(a and c) <= P(a-bar and b) they must satisfy in any
/// Kolmogorovian model.
struct KolmogorovReport {
    double eps = 0.0;
    double p_c_then_b = 0.0;   // P_c(c and b)
    double p_c_then_a = 0.0;   // P_c(c and a)
    double p_b_then_abar = 0.0;  // P_c(b and a-bar)
    double lhs = 0.0;          // p_c_then_b - p_c_then_a
    bool violated = false;
    bool in_proof_range = false;  // eps <= sqrt(2)/2, where the closed-form values hold
};
KolmogorovReport kolmogorov_check(double eps);

/// Classical control: evaluate the same inequality on an explicit joint
/// distribution over the eight (a, b, c) atoms; it can never be violated.
/// joint is indexed by bits (a << 2) | (b << 1) | c.
struct KolmogorovInequalityTerms {
    double p_bc = 0.0, p_ac = 0.0, p_abar_b = 0.0;
    bool holds = false;
};
KolmogorovInequalityTerms kolmogorov_inequality(const std::array<double, 8>& joint);

/// If p_bc = 1 and p_abar_c = 1, a two-dimensional Hilbert model forces
/// p_ab = 0; reports a contradiction when the premises hold and p_ab does
/// not vanish (tolerance 1e-9). No claim when the premises are unmet.
struct HilbertReport {
    bool premises_met = false;
    bool contradiction = false;
};
HilbertReport hilbert_consistency_check(double p_bc, double p_abar_c, double p_ab);

} // namespace blochsim
