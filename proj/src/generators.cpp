#include "blochsim/generators.hpp"

#include <cmath>

namespace blochsim {

namespace {
constexpr double kNonzeroCut = 1e-13;
constexpr int kDenseLimit = 35;  // N^2-1 at N=6
} // namespace

StructureTensor::StructureTensor(int dim, bool dense) : dim_(dim), dense_(dense) {
    if (dense_) values_.assign(static_cast<size_t>(dim_) * dim_ * dim_, 0.0);
}

double StructureTensor::operator()(int i, int j, int k) const {
    if (dense_) return values_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k];
    for (const auto& e : entries_)
        if (e.i == i && e.j == j && e.k == k) return e.value;
    return 0.0;
}

void StructureTensor::set(int i, int j, int k, double value) {
    if (dense_) {
        values_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k] = value;
    } else if (std::abs(value) > kNonzeroCut) {
        entries_.push_back({i, j, k, value});
    }
}

void StructureTensor::finalize() {
    if (!dense_) return;
    entries_.clear();
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) {
                const double v = (*this)(i, j, k);
                if (std::abs(v) > kNonzeroCut) entries_.push_back({i, j, k, v});
            }
}

rvec StructureTensor::contract(const rvec& u, const rvec& v) const {
    rvec w = rvec::Zero(dim_);
    for (const auto& e : entries_) w[e.i] += e.value * u[e.j] * v[e.k];
    return w;
}

GeneratorBasis build_generators(int N) {
    if (N < 2) throw validation_error("generator basis requires N >= 2, got " + std::to_string(N));

    GeneratorBasis basis;
    basis.N = N;
    basis.matrices.reserve(N * N - 1);

    // Order: for k = 2..N emit the U/V pairs against all lower rows, then W_{k-1}.
    for (int k = 2; k <= N; ++k) {
        for (int j = 1; j < k; ++j) {
            cmat u = cmat::Zero(N, N);
            u(j - 1, k - 1) = 1.0;
            u(k - 1, j - 1) = 1.0;
            basis.matrices.push_back(u);

            cmat v = cmat::Zero(N, N);
            v(j - 1, k - 1) = cxd(0.0, -1.0);
            v(k - 1, j - 1) = cxd(0.0, 1.0);
            basis.matrices.push_back(v);
        }
        const int l = k - 1;
        cmat w = cmat::Zero(N, N);
        const double scale = -std::sqrt(2.0 / (l * (l + 1.0)));
        w(l, l) = scale * l;
        for (int j = 0; j < l; ++j) w(j, j) = -scale;
        basis.matrices.push_back(w);
    }

    auto [f, d] = structure_constants(basis.matrices);
    basis.f = std::move(f);
    basis.d = std::move(d);
    return basis;
}

std::pair<StructureTensor, StructureTensor> structure_constants(const std::vector<cmat>& matrices) {
    const int dim = static_cast<int>(matrices.size());
    const bool dense = dim <= kDenseLimit;
    StructureTensor f(dim, dense);
    StructureTensor d(dim, dense);

    // tr3[i][j] entries give Tr(L_i L_j L_k); precompute the pair products once.
    std::vector<std::vector<cmat>> prod(dim);
    for (int i = 0; i < dim; ++i) {
        prod[i].resize(dim);
        for (int j = 0; j < dim; ++j) prod[i][j] = matrices[i] * matrices[j];
    }
    const int n = static_cast<int>(matrices.front().rows());
    auto tr3 = [&](int i, int j, int k) {
        cxd s = 0.0;
        const cmat& p = prod[i][j];
        const cmat& lk = matrices[k];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += p(a, b) * lk(b, a);
        return s;
    };

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                const cxd tij = tr3(i, j, k);
                const cxd tji = tr3(j, i, k);
                // (1/4i) Tr [L_i,L_j]_- L_k  and (1/4) Tr [L_i,L_j]_+ L_k
                f.set(i, j, k, 0.25 * (tij - tji).imag());
                d.set(i, j, k, 0.25 * (tij + tji).real());
            }
    f.finalize();
    d.finalize();
    return {std::move(f), std::move(d)};
}

std::pair<StructureTensor, StructureTensor> structure_constants(const GeneratorBasis& basis) {
    return structure_constants(basis.matrices);
}

GeneratorBasis rotate_basis(const GeneratorBasis& basis, const rmat& q) {
    const int dim = basis.count();
    if (q.rows() != dim || q.cols() != dim)
        throw validation_error("rotation matrix must be (N^2-1) x (N^2-1)");
    const double ortho = (q * q.transpose() - rmat::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (ortho > 1e-10)
        throw validation_error("rotation matrix is not orthogonal (|QQ^T - I| = " + std::to_string(ortho) + ")");

    GeneratorBasis rotated;
    rotated.N = basis.N;
    rotated.matrices.resize(dim);
    for (int i = 0; i < dim; ++i) {
        cmat acc = cmat::Zero(basis.N, basis.N);
        for (int j = 0; j < dim; ++j)
            if (q(i, j) != 0.0) acc += q(i, j) * basis.matrices[j];
        rotated.matrices[i] = std::move(acc);
    }
    auto [f, d] = structure_constants(rotated.matrices);
    rotated.f = std::move(f);
    rotated.d = std::move(d);
    return rotated;
}

cmat GeneratorBasis::combine(const rvec& coeffs) const {
    if (coeffs.size() != count()) throw validation_error("coefficient vector has wrong length");
    cmat acc = cmat::Zero(N, N);
    for (int i = 0; i < count(); ++i)
        if (coeffs[i] != 0.0) acc += coeffs[i] * matrices[i];
    return acc;
}

BlochVector star_product(const BlochVector& u, const BlochVector& v, const GeneratorBasis& basis) {
    require_same_space(u, v);
    if (u.N != basis.N) throw validation_error("vector/basis dimension mismatch");
    if (basis.N == 2)
        throw validation_error("star product is unsupported at N=2: the coefficient c_N/(N-2) diverges");
    const double coeff = basis.c() / (basis.N - 2);
    return BlochVector(u.N, coeff * basis.d.contract(u.components, v.components));
}

BlochVector wedge_product(const BlochVector& u, const BlochVector& v, const GeneratorBasis& basis) {
    require_same_space(u, v);
    if (u.N != basis.N) throw validation_error("vector/basis dimension mismatch");
    return BlochVector(u.N, basis.f.contract(u.components, v.components));
}

BasisDiagnostics check_basis(const GeneratorBasis& basis) {
    BasisDiagnostics diag;
    const int dim = basis.count();
    for (int i = 0; i < dim; ++i) {
        diag.max_trace = std::max(diag.max_trace, std::abs(basis.matrices[i].trace()));
        diag.max_hermiticity_error =
            std::max(diag.max_hermiticity_error,
                     (basis.matrices[i] - basis.matrices[i].adjoint()).cwiseAbs().maxCoeff());
        for (int j = 0; j < dim; ++j) {
            const double expected = (i == j) ? 2.0 : 0.0;
            const double got = (basis.matrices[i] * basis.matrices[j]).trace().real();
            diag.max_orthonormality_error = std::max(diag.max_orthonormality_error, std::abs(got - expected));
        }
    }
    return diag;
}

} // namespace blochsim
