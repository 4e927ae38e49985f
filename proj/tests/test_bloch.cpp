#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blochsim/bloch.hpp"
#include "blochsim/observable.hpp"
#include "test_helpers.hpp"

using namespace blochsim;

namespace {

// the nine spin-1 eigenkets along the three Cartesian axes
std::vector<Eigen::VectorXcd> spin1_kets() {
    const cxd i(0.0, 1.0);
    const double s2 = std::sqrt(2.0);
    std::vector<Eigen::VectorXcd> kets(9, Eigen::VectorXcd(3));
    kets[0] << 0.5, s2 / 2.0, 0.5;                          // S1 = 1
    kets[1] << -1.0 / s2, 0.0, 1.0 / s2;                    // S1 = 0
    kets[2] << 0.5, -s2 / 2.0, 0.5;                         // S1 = -1
    kets[3] << -0.5 * i, 0.5 * s2, 0.5 * i;                 // S2 = 1 (times i/2 expanded)
    kets[4] << -i / s2, 0.0, -i / s2;                       // S2 = 0
    kets[5] << -0.5 * i, -0.5 * s2, 0.5 * i;                // S2 = -1
    kets[6] << 1.0, 0.0, 0.0;                               // S3 = 1
    kets[7] << 0.0, 1.0, 0.0;                               // S3 = 0
    kets[8] << 0.0, 0.0, 1.0;                               // S3 = -1
    return kets;
}

// frozen table of the nine 8-dimensional representatives
std::vector<rvec> spin1_table() {
    const double a = 0.5 * std::sqrt(1.5);  // (1/2) sqrt(3/2)
    const double s3 = std::sqrt(3.0);
    std::vector<rvec> table(9, rvec::Zero(8));
    table[0] << a, 0, -s3 / 8, s3 / 4, 0, a, 0, 1.0 / 8;
    table[1] << 0, 0, s3 / 4, -s3 / 2, 0, 0, 0, -0.25;
    table[2] << -a, 0, -s3 / 8, s3 / 4, 0, -a, 0, 1.0 / 8;
    table[3] << 0, a, -s3 / 8, -s3 / 4, 0, 0, a, 1.0 / 8;
    table[4] << 0, 0, s3 / 4, s3 / 2, 0, 0, 0, -0.25;
    table[5] << 0, -a, -s3 / 8, -s3 / 4, 0, 0, -a, 1.0 / 8;
    table[6] << 0, 0, s3 / 2, 0, 0, 0, 0, 0.5;
    table[7] << 0, 0, -s3 / 2, 0, 0, 0, 0, 0.5;
    table[8] << 0, 0, 0, 0, 0, 0, 0, -1.0;
    return table;
}

} // namespace

TEST_CASE("zero vector maps to the maximally mixed state") {
    for (int n : {2, 3, 5}) {
        const GeneratorBasis basis = build_generators(n);
        const HermitianOperator d = vector_to_state(BlochVector::zero(n), basis);
        CHECK(testutil::max_abs_diff(d.m, cmat::Identity(n, n) / double(n)) < 1e-15);
    }
}

TEST_CASE("the last canonical direction has the known negative eigenvalue for N>=3") {
    for (int n : {3, 4, 5}) {
        const GeneratorBasis basis = build_generators(n);
        rvec r = rvec::Zero(n * n - 1);
        r[n * n - 2] = 1.0;
        const HermitianOperator d = vector_to_state(BlochVector(n, r), basis);
        CHECK(d.min_eigenvalue() == doctest::Approx(-(n - 2.0) / n).epsilon(1e-12));
    }
}

TEST_CASE("state <-> vector round trip is the identity to 1e-12") {
    std::mt19937_64 rng(101);
    for (int n : {2, 3, 4, 5}) {
        const GeneratorBasis basis = build_generators(n);
        for (int trial = 0; trial < 50; ++trial) {
            const HermitianOperator d(testutil::random_density(n, rng));
            const BlochVector r = state_to_vector(d, basis);
            const HermitianOperator back = vector_to_state(r, basis);
            CHECK(testutil::max_abs_diff(d.m, back.m) < 1e-12);

            // reverse direction
            const BlochVector r2 = state_to_vector(back, basis);
            CHECK((r.components - r2.components).norm() < 1e-12);
        }
    }
}

TEST_CASE("maximally mixed state maps to zero") {
    const GeneratorBasis basis = build_generators(4);
    const BlochVector r =
        state_to_vector(HermitianOperator(cmat::Identity(4, 4) / 4.0), basis);
    CHECK(r.norm() < 1e-14);
}

TEST_CASE("non-states are rejected with diagnostics") {
    const GeneratorBasis basis = build_generators(2);
    cmat bad(2, 2);
    bad << 2.0, 0.0, 0.0, -1.0;  // trace 1 but negative eigenvalue
    CHECK_THROWS_AS(state_to_vector(HermitianOperator(bad), basis), validation_error);
    cmat bad_trace = cmat::Identity(2, 2);  // trace 2
    CHECK_THROWS_AS(state_to_vector(HermitianOperator(bad_trace), basis), validation_error);
}

TEST_CASE("spin-1 table: all nine representatives reproduced to 1e-12") {
    const GeneratorBasis basis = build_generators(3);
    const auto kets = spin1_kets();
    const auto table = spin1_table();
    for (int i = 0; i < 9; ++i) {
        const cmat proj = kets[i] * kets[i].adjoint();
        const BlochVector r = state_to_vector(HermitianOperator(proj), basis);
        CHECK((r.components - table[i]).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(r.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("validity: the inner ball of radius 1/(N-1) is filled with states") {
    std::mt19937_64 rng(55);
    std::normal_distribution<double> gauss;
    for (int n : {2, 3, 4}) {
        const GeneratorBasis basis = build_generators(n);
        for (int trial = 0; trial < 40; ++trial) {
            rvec dir(n * n - 1);
            for (int i = 0; i < dir.size(); ++i) dir[i] = gauss(rng);
            dir.normalize();
            std::uniform_real_distribution<double> radius(0.0, 1.0 / (n - 1.0));
            const BlochVector r(n, radius(rng) * dir);
            CHECK(is_valid_state(r, basis).valid);
        }
    }
}

TEST_CASE("validity: convex combinations of simplex vertices are states") {
    std::mt19937_64 rng(77);
    const GeneratorBasis basis = build_generators(3);
    const Observable obs = observable_from_matrix(
        HermitianOperator((cmat(3, 3) << 3, 0, 0, 0, 2, 0, 0, 0, 1).finished()), basis);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        double w1 = unit(rng), w2 = unit(rng), w3 = unit(rng);
        const double total = w1 + w2 + w3;
        std::vector<std::pair<double, BlochVector>> terms = {
            {w1 / total, obs.vertex_vectors[0]},
            {w2 / total, obs.vertex_vectors[1]},
            {w3 / total, obs.vertex_vectors[2]},
        };
        CHECK(is_valid_state(convex_mix(terms), basis).valid);
    }
}

TEST_CASE("purity agrees with the trace of the squared state") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 5}) {
        const GeneratorBasis basis = build_generators(n);
        CHECK(purity(BlochVector::zero(n)) == doctest::Approx(1.0 / n).epsilon(1e-15));
        for (int trial = 0; trial < 30; ++trial) {
            const HermitianOperator d(testutil::random_density(n, rng));
            const BlochVector r = state_to_vector(d, basis);
            const double tr_d2 = (d.m * d.m).trace().real();
            CHECK(purity(r) == doctest::Approx(tr_d2).epsilon(1e-12));
        }
        // pure states sit on the unit sphere
        const HermitianOperator pure(testutil::random_pure_state(n, rng));
        const BlochVector r = state_to_vector(pure, basis);
        CHECK(r.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(purity(r) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("pure states satisfy the star-idempotence criterion for N>=3") {
    std::mt19937_64 rng(9);
    for (int n : {3, 4}) {
        const GeneratorBasis basis = build_generators(n);
        for (int trial = 0; trial < 10; ++trial) {
            const BlochVector r =
                state_to_vector(HermitianOperator(testutil::random_pure_state(n, rng)), basis);
            const BlochVector starred = star_product(r, r, basis);
            CHECK((starred.components - r.components).norm() < 1e-10);
        }
    }
}

TEST_CASE("convex_mix basics and errors") {
    const GeneratorBasis basis = build_generators(2);
    const BlochVector up(2, (rvec(3) << 0, 0, 1).finished());
    const BlochVector down(2, (rvec(3) << 0, 0, -1).finished());

    const BlochVector same = convex_mix({{1.0, up}});
    CHECK((same.components - up.components).norm() == 0.0);

    CHECK_THROWS_AS(convex_mix({{0.4, up}, {0.4, down}}), validation_error);
    CHECK_THROWS_AS(convex_mix({{1.5, up}, {-0.5, down}}), validation_error);
    CHECK_THROWS_AS(convex_mix({{0.5, up}, {0.5, BlochVector::zero(3)}}), validation_error);
    CHECK_THROWS_AS(convex_mix({}), validation_error);
}

TEST_CASE("the two three-state decompositions of I/2 mix to the origin") {
    const GeneratorBasis basis = build_generators(2);
    const double s3 = std::sqrt(3.0);

    auto ket_to_vector = [&](const Eigen::Vector2cd& psi) {
        return state_to_vector(HermitianOperator(psi * psi.adjoint()), basis);
    };

    // equal weights over (b1, b1/2 + sqrt(3)/2 b2, b1/2 - sqrt(3)/2 b2)
    const BlochVector mix1 = convex_mix({
        {1.0 / 3, ket_to_vector({1.0, 0.0})},
        {1.0 / 3, ket_to_vector({0.5, s3 / 2})},
        {1.0 / 3, ket_to_vector({0.5, -s3 / 2})},
    });
    CHECK(mix1.norm() < 1e-14);

    // unequal weights 281/900, 97/450, 17/36 over the second triple
    const cxd i(0.0, 1.0);
    const BlochVector mix2 = convex_mix({
        {281.0 / 900, ket_to_vector({9.0 / std::sqrt(281.0), 10.0 * std::sqrt(2.0) * i / std::sqrt(281.0)})},
        {97.0 / 450, ket_to_vector({12.0 / std::sqrt(194.0), 5.0 * std::sqrt(2.0) * i / std::sqrt(194.0)})},
        {17.0 / 36, ket_to_vector({3.0 * i / std::sqrt(17.0), 2.0 * std::sqrt(2.0) / std::sqrt(17.0)})},
    });
    CHECK(mix2.norm() < 1e-13);
}

TEST_CASE("the Bloch map is affine over convex mixtures") {
    std::mt19937_64 rng(13);
    const GeneratorBasis basis = build_generators(3);
    for (int trial = 0; trial < 15; ++trial) {
        const cmat d1 = testutil::random_density(3, rng);
        const cmat d2 = testutil::random_density(3, rng);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double w = unit(rng);
        const BlochVector direct =
            state_to_vector(HermitianOperator(w * d1 + (1 - w) * d2), basis);
        const BlochVector mixed = convex_mix({{w, state_to_vector(HermitianOperator(d1), basis)},
                                              {1 - w, state_to_vector(HermitianOperator(d2), basis)}});
        CHECK((direct.components - mixed.components).norm() < 1e-12);
    }
}

TEST_CASE("largest valid radius: unit everywhere at N=2, face-limited beyond") {
    const GeneratorBasis basis2 = build_generators(2);
    std::mt19937_64 rng(61);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 10; ++trial) {
        rvec dir(3);
        for (int i = 0; i < 3; ++i) dir[i] = gauss(rng);
        CHECK(largest_valid_radius(BlochVector(2, dir), basis2) == doctest::Approx(1.0));
    }

    // N=3: opposite a vertex-state the states stop at the inscribed sphere
    const GeneratorBasis basis3 = build_generators(3);
    rvec vertex = rvec::Zero(8);
    vertex[2] = std::sqrt(3.0) / 2.0;
    vertex[7] = 0.5;
    CHECK(largest_valid_radius(BlochVector(3, vertex), basis3) == doctest::Approx(1.0));
    CHECK(largest_valid_radius(BlochVector(3, rvec(-vertex)), basis3) ==
          doctest::Approx(0.5).epsilon(1e-8));

    // the last canonical direction is face-limited too
    const GeneratorBasis basis4 = build_generators(4);
    rvec last = rvec::Zero(15);
    last[14] = 1.0;
    CHECK(largest_valid_radius(BlochVector(4, last), basis4) ==
          doctest::Approx(1.0 / 3).epsilon(1e-8));

    CHECK_THROWS_AS(largest_valid_radius(BlochVector::zero(2), basis2), validation_error);
}

TEST_CASE("compress_state: exact cases") {
    std::mt19937_64 rng(21);
    const int n0 = 8;
    const HermitianOperator d(testutil::random_density(n0, rng));
    std::vector<int> split{0, 1, 2, 3};

    // full-space compression with P = I
    std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(compress_state(d, all, n0, n0) == doctest::Approx(1.0).epsilon(1e-14));

    // a state supported inside the span of P_M
    cmat supported = cmat::Zero(n0, n0);
    supported(0, 0) = 0.5;
    supported(1, 1) = 0.5;
    supported(0, 1) = supported(1, 0) = 0.25;
    // N - M is bounded by the complement dimension (here 4)
    for (int n_dim : {2, 4, 6})
        CHECK(compress_state(HermitianOperator(supported), split, 2, n_dim) ==
              doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(compress_state(HermitianOperator(supported), split, 2, 8), validation_error);
}

TEST_CASE("compress_state approaches the full-trace oracle") {
    std::mt19937_64 rng(2024);
    const int n0 = 16;
    const HermitianOperator d(testutil::random_density(n0, rng, 8));
    std::vector<int> split{0, 1, 2, 3, 4, 5, 6, 7};

    cmat p = cmat::Zero(n0, n0);
    for (int idx : split) p(idx, idx) = 1.0;
    const double exact = (d.m * p).trace().real();  // direct trace oracle

    const double coarse = compress_state(d, split, 4, 8);
    const double fine = compress_state(d, split, 8, 16);
    CHECK(std::abs(fine - exact) < 1e-12);
    CHECK(std::abs(fine - exact) <= std::abs(coarse - exact));
}

TEST_CASE("compress_state rejects degenerate compressions and bad input") {
    const int n0 = 4;
    cmat edge = cmat::Zero(n0, n0);
    edge(3, 3) = 1.0;  // supported outside P_N for split {0}
    CHECK_THROWS_AS(compress_state(HermitianOperator(edge), {0}, 1, 1), validation_error);
    CHECK_THROWS_AS(compress_state(HermitianOperator(edge), {}, 1, 1), validation_error);
    CHECK_THROWS_AS(compress_state(HermitianOperator(edge), {0, 9}, 1, 1), validation_error);
    cmat mixed = cmat::Identity(n0, n0) / n0;
    CHECK_THROWS_AS(compress_state(HermitianOperator(mixed), {0, 1}, 2, 1), validation_error);
}
