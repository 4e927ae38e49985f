#include "blochsim/universal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

namespace blochsim {

std::string to_fraction_string(const Rational& q) {
    Rational canonical = q;
    canonical.canonicalize();
    return canonical.get_num().get_str() + "/" + canonical.get_den().get_str();
}

int CellularDensity::n_d() const {
    return static_cast<int>(std::count(cells.begin(), cells.end(), true));
}

void CellularDensity::validate() const {
    if (cells.empty()) throw validation_error("cellular density needs at least one cell");
    if (n_d() == 0)
        throw validation_error("totally non-disintegrable structure (no outcome can be produced)");
}

Rational cellular_probability(const CellularDensity& rho, int i) {
    rho.validate();
    const int n = rho.n();
    if (i < 0 || i > n) throw validation_error("split index must lie in [0, n]");
    int left = 0;
    for (int c = 0; c < n - i; ++c) left += rho.cells[c] ? 1 : 0;
    Rational q(left, rho.n_d());
    q.canonicalize();
    return q;
}

Rational uniform_reference(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw validation_error("need n >= 1 and 0 <= i <= n");
    Rational q(n - i, n);
    q.canonicalize();
    return q;
}

Rational average_over_structures(int n, int i, int max_threads, int enumeration_cap) {
    if (n < 1) throw validation_error("need n >= 1");
    if (i < 0 || i > n) throw validation_error("split index must lie in [0, n]");
    if (n > enumeration_cap)
        throw resource_error("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                             std::to_string(enumeration_cap) +
                             " (2^n - 1 structures); the exact closed form is (n-i)/n");

    // Structures are the bit masks 1..2^n-1; bit b holds cell n-1-b, so the
    // leftmost n-i cells are the mask shifted right by i. Per-mask terms are
    // popcount ratios; group the integer numerators by denominator
    // (= total d-count) and combine exactly at the end.
    const std::uint64_t total = (1ull << n) - 1;
    int threads = max_threads > 0 ? max_threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, 16));

    std::vector<std::vector<std::uint64_t>> left_sums(threads, std::vector<std::uint64_t>(n + 1, 0));
    auto worker = [&](int tid, std::uint64_t lo, std::uint64_t hi) {
        auto& sums = left_sums[tid];
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            const int k = std::popcount(mask);
            sums[k] += static_cast<std::uint64_t>(std::popcount(mask >> i));
        }
    };

    if (threads == 1 || total < 1u << 12) {
        worker(0, 1, total + 1);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = total / threads + 1;
        for (int tid = 0; tid < threads; ++tid) {
            const std::uint64_t lo = 1 + chunk * tid;
            const std::uint64_t hi = std::min(total + 1, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, tid, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    Rational acc(0);
    for (int k = 1; k <= n; ++k) {
        std::uint64_t sum = 0;
        for (int tid = 0; tid < threads; ++tid) sum += left_sums[tid][k];
        if (sum) {
            Rational term{BigInt(sum), BigInt(k)};
            term.canonicalize();
            acc += term;
        }
    }
    acc /= Rational(BigInt(total), 1);
    acc.canonicalize();
    return acc;
}

IdentityReport identity_check(int n) {
    if (n < 0) throw validation_error("identity check needs n >= 0");

    IdentityReport report;
    report.n = n;

    BigInt binom = 1;  // C(n, 0)
    Rational first(0), second(0);
    for (int k = 0; k <= n; ++k) {
        Rational term{binom, BigInt(k + 1)};
        term.canonicalize();
        second += term;
        if (k > 0) first += term * k;
        // advance to C(n, k+1)
        binom = binom * (n - k) / (k + 1);
    }

    BigInt two_n = 1;
    mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), n);

    report.lhs_first = first;
    report.rhs_first = Rational(two_n * (n - 1) + 1, BigInt(n + 1));
    report.lhs_second = second;
    report.rhs_second = Rational(2 * two_n - 1, BigInt(n + 1));
    report.lhs_first.canonicalize();
    report.rhs_first.canonicalize();
    report.lhs_second.canonicalize();
    report.rhs_second.canonicalize();
    report.first_holds = report.lhs_first == report.rhs_first;
    report.second_holds = report.lhs_second == report.rhs_second;
    return report;
}

namespace {

// rho-mass of the coarse cell [lo, hi); the final cell also owns x = 1
double cell_mass(const DisintegrationDensity& rho, double lo, double hi, bool last) {
    double mass = 0.0;
    for (const auto& p : rho.pieces) {
        const double a = std::max(p.lo, lo);
        const double b = std::min(p.hi, hi);
        if (b > a) mass += p.height * (b - a);
    }
    for (const auto& a : rho.atoms)
        if ((a.x0 >= lo && a.x0 < hi) || (last && a.x0 == hi)) mass += a.mass;
    return mass;
}

} // namespace

DensityApproximation approximate_density(const DisintegrationDensity& target, int m, int ell) {
    if (m < 1 || ell < 1) throw validation_error("approximate_density needs m, ell >= 1");
    target.validate();
    if (target.total_mass() <= 0.0) throw validation_error("approximate_density: degenerate target");

    std::vector<double> mass(m);
    const double width = 2.0 / m;
    for (int i = 0; i < m; ++i)
        mass[i] = cell_mass(target, -1.0 + i * width, -1.0 + (i + 1) * width, i == m - 1);

    const int n = m * ell;
    std::vector<int> counts(m);
    for (int i = 0; i < m; ++i)
        counts[i] = std::clamp(static_cast<int>(std::lround(mass[i] * n)), 0, ell);

    auto deviation = [&](const std::vector<int>& c) {
        long total = 0;
        for (int v : c) total += v;
        if (total == 0) return 2.0;
        double worst = 0.0;
        for (int i = 0; i < m; ++i)
            worst = std::max(worst, std::abs(static_cast<double>(c[i]) / total - mass[i]));
        return worst;
    };

    // renormalize: re-pick each count against the current total until stable
    std::vector<int> best = counts;
    double best_dev = deviation(best);
    for (int pass = 0; pass < 64; ++pass) {
        long total = 0;
        for (int v : counts) total += v;
        if (total == 0) {
            counts[std::distance(mass.begin(), std::max_element(mass.begin(), mass.end()))] = 1;
            total = 1;
        }
        bool changed = false;
        for (int i = 0; i < m; ++i) {
            int pick = counts[i];
            double err = std::abs(static_cast<double>(pick) / total - mass[i]);
            for (int cand = 0; cand <= ell; ++cand) {
                const double e = std::abs(static_cast<double>(cand) / total - mass[i]);
                if (e < err - 1e-15) {
                    err = e;
                    pick = cand;
                }
            }
            if (pick != counts[i]) {
                counts[i] = pick;
                changed = true;
            }
        }
        const double dev = deviation(counts);
        if (dev < best_dev) {
            best_dev = dev;
            best = counts;
        }
        if (!changed) break;
    }

    DensityApproximation out;
    out.m = m;
    out.ell = ell;
    out.max_deviation = best_dev;
    out.cells.cells.assign(n, false);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < best[i]; ++j) out.cells.cells[i * ell + j] = true;  // leftmost-first
    out.cells.validate();
    return out;
}

std::pair<CellularDensity, int> flatten_multidim(const std::vector<bool>& grid_cells,
                                                 const std::vector<bool>& region_mask) {
    if (grid_cells.empty()) throw validation_error("flatten_multidim: empty grid");
    if (grid_cells.size() != region_mask.size())
        throw validation_error("flatten_multidim: grid and mask shapes differ");

    CellularDensity linear;
    linear.cells.reserve(grid_cells.size());
    for (size_t c = 0; c < grid_cells.size(); ++c)
        if (region_mask[c]) linear.cells.push_back(grid_cells[c]);
    const int inside = static_cast<int>(linear.cells.size());
    for (size_t c = 0; c < grid_cells.size(); ++c)
        if (!region_mask[c]) linear.cells.push_back(grid_cells[c]);
    linear.validate();
    return {std::move(linear), static_cast<int>(grid_cells.size()) - inside};
}

} // namespace blochsim
