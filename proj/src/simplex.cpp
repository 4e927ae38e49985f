#include "blochsim/simplex.hpp"

#include <cmath>

namespace blochsim {

namespace {
double factorial(int k) {
    double acc = 1.0;
    for (int i = 2; i <= k; ++i) acc *= i;
    return acc;
}
} // namespace

double simplex_volume_closed(int N) {
    if (N < 2) throw validation_error("simplex volume requires N >= 2");
    const double n = N;
    return std::sqrt(n - 1.0) / factorial(N - 1) * std::pow(n / (n - 1.0), n / 2.0);
}

double face_volume_closed(int N) {
    if (N < 2) throw validation_error("face volume requires N >= 2");
    const double n = N;
    return std::sqrt(n - 1.0) / factorial(N - 2) * std::pow(n / (n - 1.0), (n - 2.0) / 2.0);
}

double inradius(int N) {
    if (N < 2) throw validation_error("inradius requires N >= 2");
    return 1.0 / (N - 1.0);
}

double simplex_volume_cayley_menger(const std::vector<rvec>& vertices) {
    const int n = static_cast<int>(vertices.size());
    if (n < 2) throw validation_error("Cayley-Menger needs at least two vertices");
    for (const auto& v : vertices)
        if (v.size() != vertices.front().size())
            throw validation_error("Cayley-Menger vertices have mixed dimensions");

    rmat hat = rmat::Zero(n + 1, n + 1);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        hat(0, i + 1) = 1.0;
        hat(i + 1, 0) = 1.0;
        for (int j = 0; j < n; ++j) {
            const double d2 = (vertices[i] - vertices[j]).squaredNorm();
            hat(i + 1, j + 1) = d2;
            scale = std::max(scale, d2);
        }
    }
    const double det = hat.determinant();
    const double floor = 1e-20 * std::pow(std::max(1.0, scale), n);
    if (std::abs(det) <= floor)
        throw validation_error("Cayley-Menger: affinely dependent vertex set (|det| = " +
                               std::to_string(std::abs(det)) + ")");
    return std::sqrt(std::abs(det)) / (std::pow(2.0, (n - 1) / 2.0) * factorial(n - 1));
}

double height_to_face(const SimplexDecomposition& dec, int i, const Observable& obs) {
    if (i < 0 || i >= obs.N) throw validation_error("face index out of range");
    const double n = obs.N;
    return n / (n - 1.0) * dec.barycentric[i];
}

double region_measure(const SimplexDecomposition& dec, int i, const Observable& obs) {
    const double n = obs.N;
    return face_volume_closed(obs.N) * height_to_face(dec, i, obs) / (n - 1.0);
}

} // namespace blochsim
