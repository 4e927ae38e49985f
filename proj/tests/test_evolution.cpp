#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blochsim/evolution.hpp"
#include "blochsim/bloch.hpp"
#include "test_helpers.hpp"

using namespace blochsim;

namespace {

// the known qubit precession matrix for H = (omega/2) sigma_3
rmat qubit_precession(double angle) {
    rmat v = rmat::Identity(3, 3);
    v(0, 0) = std::cos(angle);
    v(0, 1) = -std::sin(angle);
    v(1, 0) = std::sin(angle);
    v(1, 1) = std::cos(angle);
    return v;
}

// spin-1 precession for H = omega S_3: block rotations on the three
// coherence pairs. The (4,5) pair couples the outermost levels and turns at
// twice the angle (it carries the Delta m = 2 coherence); components 3 and 8
// stay fixed.
rmat qutrit_precession(double angle) {
    rmat v = rmat::Identity(8, 8);
    auto put_block = [&](int row, double a) {
        v(row, row) = std::cos(a);
        v(row, row + 1) = -std::sin(a);
        v(row + 1, row) = std::sin(a);
        v(row + 1, row + 1) = std::cos(a);
    };
    put_block(0, angle);
    put_block(3, 2.0 * angle);
    put_block(5, angle);
    return v;
}

} // namespace

TEST_CASE("t = 0 gives the identity") {
    std::mt19937_64 rng(1);
    for (int n : {2, 3, 4}) {
        const GeneratorBasis basis = build_generators(n);
        const HermitianOperator h(testutil::random_hermitian(n, rng));
        const EvolutionMatrix v = evolution_matrix(h, 0.0, basis);
        CHECK((v.v - rmat::Identity(v.v.rows(), v.v.cols())).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("qubit precession reproduces the explicit rotation matrix") {
    const GeneratorBasis basis = build_generators(2);
    const double omega = 1.7;
    cmat h(2, 2);
    h << omega / 2, 0, 0, -omega / 2;

    for (double angle : {0.0, M_PI / 4, M_PI / 2, M_PI}) {
        const EvolutionMatrix v = evolution_matrix(HermitianOperator(h), angle / omega, basis);
        CHECK((v.v - qubit_precession(angle)).cwiseAbs().maxCoeff() < 1e-12);
    }

    // r = (1,0,0) rotates to (0,1,0) after a quarter turn
    const EvolutionMatrix quarter = evolution_matrix(HermitianOperator(h), M_PI / 2 / omega, basis);
    const BlochVector r(2, (rvec(3) << 1, 0, 0).finished());
    const BlochVector rotated = evolve_vector(r, quarter);
    CHECK((rotated.components - (rvec(3) << 0, 1, 0).finished()).norm() < 1e-12);
}

TEST_CASE("spin-1 precession is block diagonal with fixed components 3 and 8") {
    const GeneratorBasis basis = build_generators(3);
    const double omega = 0.9;
    cmat h = cmat::Zero(3, 3);
    h(0, 0) = omega;
    h(2, 2) = -omega;  // omega * S_3

    for (double angle : {0.0, M_PI / 4, M_PI / 2, M_PI}) {
        const EvolutionMatrix v = evolution_matrix(HermitianOperator(h), angle / omega, basis);
        CHECK((v.v - qutrit_precession(angle)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("evolution matrices are special orthogonal") {
    std::mt19937_64 rng(33);
    for (int n : {2, 3, 4}) {
        const GeneratorBasis basis = build_generators(n);
        for (int trial = 0; trial < 5; ++trial) {
            const HermitianOperator h(testutil::random_hermitian(n, rng));
            std::uniform_real_distribution<double> time(-3.0, 3.0);
            const EvolutionMatrix v = evolution_matrix(h, time(rng), basis);
            CHECK(v.orthogonality_error() < 1e-10);
            CHECK(v.determinant_error() < 1e-8);
        }
    }
}

TEST_CASE("group property V(t+s) = V(t) V(s)") {
    std::mt19937_64 rng(35);
    for (int n : {2, 3}) {
        const GeneratorBasis basis = build_generators(n);
        const HermitianOperator h(testutil::random_hermitian(n, rng));
        const double t = 0.8, s = 1.9;
        const EvolutionMatrix vt = evolution_matrix(h, t, basis);
        const EvolutionMatrix vs = evolution_matrix(h, s, basis);
        const EvolutionMatrix vts = evolution_matrix(h, t + s, basis);
        CHECK((vts.v - vt.v * vs.v).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("evolution commutes with the Bloch map (conjugation oracle)") {
    std::mt19937_64 rng(37);
    for (int n : {2, 3, 4}) {
        const GeneratorBasis basis = build_generators(n);
        for (int trial = 0; trial < 5; ++trial) {
            const HermitianOperator h(testutil::random_hermitian(n, rng));
            const cmat d = testutil::random_density(n, rng);
            const double t = 1.3;

            // direct matrix conjugation
            Eigen::SelfAdjointEigenSolver<cmat> solver(h.m);
            cmat u = cmat::Zero(n, n);
            for (int i = 0; i < n; ++i)
                u += std::exp(cxd(0, -solver.eigenvalues()[i] * t)) *
                     (solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint());
            const cmat evolved_matrix = u * d * u.adjoint();

            const BlochVector r = state_to_vector(HermitianOperator(d), basis);
            const EvolutionMatrix v = evolution_matrix(h, t, basis);
            const BlochVector vr = evolve_vector(r, v);
            CHECK(testutil::max_abs_diff(vector_to_state(vr, basis).m, evolved_matrix) < 1e-10);

            // norm, purity, validity preserved
            CHECK(vr.norm() == doctest::Approx(r.norm()).epsilon(1e-10));
            CHECK(purity(vr) == doctest::Approx(purity(r)).epsilon(1e-10));
            CHECK(is_valid_state(vr, basis).valid == is_valid_state(r, basis).valid);
        }
    }
}

TEST_CASE("the origin is a fixed point") {
    std::mt19937_64 rng(39);
    const GeneratorBasis basis = build_generators(3);
    const EvolutionMatrix v =
        evolution_matrix(HermitianOperator(testutil::random_hermitian(3, rng)), 2.0, basis);
    CHECK(evolve_vector(BlochVector::zero(3), v).norm() < 1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
    const GeneratorBasis basis2 = build_generators(2);
    const GeneratorBasis basis3 = build_generators(3);
    std::mt19937_64 rng(41);
    const EvolutionMatrix v =
        evolution_matrix(HermitianOperator(testutil::random_hermitian(2, rng)), 1.0, basis2);
    CHECK_THROWS_AS(evolve_vector(BlochVector::zero(3), v), validation_error);
    CHECK_THROWS_AS(evolution_matrix(HermitianOperator(testutil::random_hermitian(3, rng)), 1.0, basis2),
                    validation_error);

    cmat non_hermitian(2, 2);
    non_hermitian << 0, 1, 0, 0;
    CHECK_THROWS_AS(evolution_matrix(HermitianOperator(non_hermitian), 1.0, basis2), validation_error);
}
