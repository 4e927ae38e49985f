#include "blochsim/density.hpp"

#include <algorithm>
#include <cmath>

namespace blochsim {

double DisintegrationDensity::total_mass() const {
    double mass = 0.0;
    for (const auto& p : pieces) mass += p.height * (p.hi - p.lo);
    for (const auto& a : atoms) mass += a.mass;
    return mass;
}

void DisintegrationDensity::validate() const {
    for (const auto& p : pieces) {
        if (p.height < 0.0) throw validation_error("density piece with negative height");
        if (!(p.lo < p.hi)) throw validation_error("density piece with empty interval");
        if (p.lo < -1.0 - 1e-12 || p.hi > 1.0 + 1e-12)
            throw validation_error("density piece outside [-1, 1]");
    }
    for (const auto& a : atoms) {
        if (a.mass < 0.0) throw validation_error("density atom with negative mass");
        if (a.x0 < -1.0 || a.x0 > 1.0) throw validation_error("density atom outside [-1, 1]");
    }
    const double mass = total_mass();
    if (std::abs(mass - 1.0) > 1e-12)
        throw validation_error("density mass is " + std::to_string(mass) + ", expected 1");
}

DisintegrationDensity DisintegrationDensity::uniform() {
    DisintegrationDensity rho;
    rho.pieces.push_back({-1.0, 1.0, 0.5});
    return rho;
}

DisintegrationDensity DisintegrationDensity::epsilon_model(double eps) {
    if (eps < 0.0 || eps > 1.0) throw validation_error("epsilon must lie in [0, 1]");
    DisintegrationDensity rho;
    if (eps == 0.0) {
        rho.atoms.push_back({0.0, 1.0});
    } else {
        rho.pieces.push_back({-eps, eps, 0.5 / eps});
    }
    return rho;
}

SplitProbability density_probability(double x_p, const DisintegrationDensity& rho) {
    if (std::abs(x_p) > 1.0) throw validation_error("particle coordinate outside [-1, 1]");
    rho.validate();

    SplitProbability out;
    double left = 0.0;
    for (const auto& p : rho.pieces) {
        const double hi = std::min(p.hi, x_p);
        if (hi > p.lo) left += p.height * (hi - p.lo);
    }
    for (const auto& a : rho.atoms) {
        if (a.x0 < x_p) {
            left += a.mass;
        } else if (a.x0 == x_p) {
            left += 0.5 * a.mass;  // unstable equilibrium, split by convention
            out.boundary_flag = true;
        }
    }
    out.p1 = left;
    out.p2 = 1.0 - left;
    return out;
}

SplitProbability epsilon_probability(double x_p, double eps) {
    if (eps < 0.0 || eps > 1.0) throw validation_error("epsilon must lie in [0, 1]");
    if (std::abs(x_p) > 1.0) throw validation_error("particle coordinate outside [-1, 1]");

    SplitProbability out;
    if (eps == 0.0) {
        if (x_p > 0.0) {
            out.p1 = 1.0;
        } else if (x_p < 0.0) {
            out.p1 = 0.0;
        } else {
            out.p1 = 0.5;
            out.boundary_flag = true;
        }
    } else if (x_p <= -eps) {
        out.p1 = 0.0;
    } else if (x_p >= eps) {
        out.p1 = 1.0;
    } else {
        out.p1 = 0.5 * (1.0 + x_p / eps);
    }
    out.p2 = 1.0 - out.p1;
    return out;
}

double sample_from_density(const DisintegrationDensity& rho, SampleRng& rng) {
    double u = rng.next_unit() * rho.total_mass();
    for (const auto& p : rho.pieces) {
        const double mass = p.height * (p.hi - p.lo);
        if (u < mass) return p.lo + (p.hi - p.lo) * (u / mass);
        u -= mass;
    }
    for (const auto& a : rho.atoms) {
        if (u < a.mass) return a.x0;
        u -= a.mass;
    }
    return rho.atoms.empty() ? rho.pieces.back().hi : rho.atoms.back().x0;
}

DirectionObservable2D::DirectionObservable2D(const Eigen::Vector3d& a) : axis(a) {
    if (std::abs(axis.norm() - 1.0) > 1e-12)
        throw validation_error("direction observable needs a unit axis");
}

double sequential_probability(const Eigen::Vector3d& initial,
                              const std::vector<std::pair<DirectionObservable2D, int>>& steps,
                              double eps) {
    if (steps.empty()) throw validation_error("sequential_probability needs at least one step");
    if (std::abs(initial.norm() - 1.0) > 1e-12)
        throw validation_error("initial state must be an eigenstate (unit axis)");

    Eigen::Vector3d state = initial;
    double product = 1.0;
    for (const auto& [obs, sign] : steps) {
        if (sign != 1 && sign != -1) throw validation_error("outcome sign must be +1 or -1");
        // dot products of unit vectors can exceed 1 by rounding
        const double x_p = std::clamp(state.dot(obs.axis), -1.0, 1.0);
        const SplitProbability p = epsilon_probability(x_p, eps);
        product *= sign > 0 ? p.p1 : p.p2;
        state = sign > 0 ? obs.axis : Eigen::Vector3d(-obs.axis);
    }
    return product;
}

AbcGeometry abc_geometry() {
    AbcGeometry g;
    g.b = Eigen::Vector3d(0.0, 0.0, 1.0);
    g.c = Eigen::Vector3d(std::sqrt(0.5), 0.0, std::sqrt(0.5));
    g.a = Eigen::Vector3d(-1.0, 0.0, 0.0);
    return g;
}

KolmogorovReport kolmogorov_check(double eps) {
    if (eps < 0.0 || eps > 1.0) throw validation_error("epsilon must lie in [0, 1]");
    const AbcGeometry g = abc_geometry();
    const DirectionObservable2D oa(g.a), ob(g.b), oc(g.c);

    KolmogorovReport report;
    report.eps = eps;
    report.in_proof_range = eps <= std::sqrt(0.5) + 1e-12;
    report.p_c_then_b = sequential_probability(g.c, {{oc, 1}, {ob, 1}}, eps);
    report.p_c_then_a = sequential_probability(g.c, {{oc, 1}, {oa, 1}}, eps);
    report.p_b_then_abar = sequential_probability(g.c, {{ob, 1}, {oa, -1}}, eps);
    report.lhs = report.p_c_then_b - report.p_c_then_a;
    report.violated = report.lhs > report.p_b_then_abar + 1e-12;
    return report;
}

KolmogorovInequalityTerms kolmogorov_inequality(const std::array<double, 8>& joint) {
    double total = 0.0;
    for (double p : joint) {
        if (p < 0.0) throw validation_error("joint distribution with negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw validation_error("joint distribution does not sum to 1");

    auto prob = [&](int a_mask, int a_val, int b_mask, int b_val, int c_mask, int c_val) {
        double acc = 0.0;
        for (int bits = 0; bits < 8; ++bits) {
            const int a = (bits >> 2) & 1, b = (bits >> 1) & 1, c = bits & 1;
            if (a_mask && a != a_val) continue;
            if (b_mask && b != b_val) continue;
            if (c_mask && c != c_val) continue;
            acc += joint[bits];
        }
        return acc;
    };

    KolmogorovInequalityTerms terms;
    terms.p_bc = prob(0, 0, 1, 1, 1, 1);
    terms.p_ac = prob(1, 1, 0, 0, 1, 1);
    terms.p_abar_b = prob(1, 0, 1, 1, 0, 0);
    terms.holds = terms.p_bc - terms.p_ac <= terms.p_abar_b + 1e-12;
    return terms;
}

HilbertReport hilbert_consistency_check(double p_bc, double p_abar_c, double p_ab) {
    for (double p : {p_bc, p_abar_c, p_ab})
        if (p < 0.0 || p > 1.0) throw validation_error("probabilities must lie in [0, 1]");

    HilbertReport report;
    report.premises_met = std::abs(p_bc - 1.0) <= 1e-9 && std::abs(p_abar_c - 1.0) <= 1e-9;
    // |<b|c>| = 1 and |<a-bar|c>| = 1 force <a|b> = <a|c><c|b> + <a|c-bar><c-bar|b> = 0
    report.contradiction = report.premises_met && std::abs(p_ab) > 1e-9;
    return report;
}

} // namespace blochsim
