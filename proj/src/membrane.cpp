#include "blochsim/membrane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace blochsim {

void Schedule::validate() const {
    if (!(0.0 <= t1 && t1 <= t2 && t2 <= t3 && t3 <= t4 && t4 <= t5))
        throw validation_error("schedule must satisfy 0 <= t1 <= t2 <= t3 <= t4 <= t5");
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Decoherence: return "decoherence";
        case Phase::Collapse: return "collapse";
        case Phase::Purification: return "purification";
    }
    return "unknown";
}

std::vector<double> sample_uniform_lambda(const Observable& obs, SampleRng& rng) {
    std::vector<double> bary(obs.N);
    double total = 0.0;
    for (double& b : bary) {
        b = rng.next_exponential();
        total += b;
    }
    for (double& b : bary) b /= total;
    return bary;
}

int classify_region(const std::vector<double>& lambda_bary, const std::vector<double>& point_bary) {
    const int n = static_cast<int>(lambda_bary.size());
    if (static_cast<int>(point_bary.size()) != n)
        throw validation_error("lambda/point barycentric dimensions differ");

    constexpr double inf = std::numeric_limits<double>::infinity();
    double best = inf;
    int best_index = -1;
    bool tie = false;
    for (int k = 0; k < n; ++k) {
        double ratio;
        if (point_bary[k] > 0.0) {
            ratio = lambda_bary[k] / point_bary[k];
        } else if (lambda_bary[k] > 0.0) {
            ratio = inf;  // collapsed region, never selected
        } else {
            throw validation_error(
                "classify_region: point on the simplex boundary with lambda in the collapsed direction");
        }
        if (ratio < best) {
            best = ratio;
            best_index = k;
            tie = false;
        } else if (ratio == best) {
            tie = true;
        }
    }
    if (best_index < 0 || tie || best == inf) return -1;
    return best_index;
}

namespace {

std::vector<double> clamped_barycentric(const BlochVector& r, const Observable& obs) {
    std::vector<double> p(obs.N);
    for (int i = 0; i < obs.N; ++i) p[i] = std::max(0.0, transition_probability(r, obs, i));
    return p;
}

// draw until lambda falls strictly inside one region
int sample_region(const std::vector<double>& point_bary, const Observable& obs, SampleRng& rng,
                  std::vector<double>* lambda_out, int* resamples) {
    for (int attempt = 0; attempt < 1024; ++attempt) {
        std::vector<double> lambda = sample_uniform_lambda(obs, rng);
        const int region = classify_region(lambda, point_bary);
        if (region >= 0) {
            if (lambda_out) *lambda_out = std::move(lambda);
            return region;
        }
        if (resamples) ++*resamples;
    }
    throw validation_error("membrane sampling failed to leave the zero-measure tie set");
}

void append_segment(std::vector<TracePoint>& out, double t_from, double t_to, const BlochVector& a,
                    const BlochVector& b, Phase phase, int points, bool include_start) {
    if (t_to <= t_from) {
        // zero-duration segment; keep a single marker point
        if (include_start) out.push_back({t_from, b, phase});
        return;
    }
    for (int s = include_start ? 0 : 1; s <= points; ++s) {
        const double frac = static_cast<double>(s) / points;
        BlochVector r(a.N, a.components + frac * (b.components - a.components));
        out.push_back({t_from + frac * (t_to - t_from), std::move(r), phase});
    }
}

} // namespace

std::pair<int, MeasurementTrace> run_measurement(const BlochVector& r, const Observable& obs,
                                                 const GeneratorBasis& basis, SampleRng& rng,
                                                 const Schedule& schedule, int points_per_segment) {
    schedule.validate();
    if (points_per_segment < 1) throw validation_error("points_per_segment must be >= 1");

    const SimplexDecomposition dec = decompose(r, obs);
    const std::vector<double> p = clamped_barycentric(r, obs);

    MeasurementTrace trace;
    trace.schedule = schedule;
    trace.initial = r;
    trace.on_membrane = dec.r_parallel;

    const int region = sample_region(p, obs, rng, &trace.lambda_bary, &trace.resamples);
    const int k = obs.block_of(region);
    trace.outcome = k;

    const auto& block = obs.partition[k];
    double block_weight = 0.0;
    for (int i : block) block_weight += p[i];

    // on-membrane collapse target, Bloch image of the Luders update of r_parallel
    rvec collapsed = rvec::Zero(r.ambient_dim());
    for (int i : block) collapsed += (p[i] / block_weight) * obs.vertex_vectors[i].components;
    trace.collapsed = BlochVector(r.N, std::move(collapsed));

    if (obs.outcome_count() == 1) {
        trace.final_state = r;  // trivial observable: r -> r_parallel -> r
    } else if (block.size() == 1) {
        trace.final_state = obs.vertex_vectors[block.front()];
    } else {
        const HermitianOperator after = luders_update(vector_to_state(r, basis), obs, k);
        trace.final_state = state_to_vector(after, basis);
    }

    append_segment(trace.waypoints, 0.0, schedule.t1, trace.initial, trace.on_membrane,
                   Phase::Decoherence, points_per_segment, true);
    append_segment(trace.waypoints, schedule.t1, schedule.t2, trace.on_membrane, trace.on_membrane,
                   Phase::Collapse, 1, false);
    append_segment(trace.waypoints, schedule.t2, schedule.t3, trace.on_membrane, trace.collapsed,
                   Phase::Collapse, points_per_segment, false);
    append_segment(trace.waypoints, schedule.t3, schedule.t4, trace.collapsed, trace.collapsed,
                   Phase::Purification, 1, false);
    append_segment(trace.waypoints, schedule.t4, schedule.t5, trace.collapsed, trace.final_state,
                   Phase::Purification, points_per_segment, false);
    if (trace.waypoints.empty()) trace.waypoints.push_back({0.0, trace.final_state, Phase::Purification});

    return {k, std::move(trace)};
}

FrequencyReport estimate_probabilities(const BlochVector& r, const Observable& obs, std::uint64_t samples,
                                       const RngSpec& spec, int max_threads) {
    if (samples < 1) throw validation_error("estimate_probabilities needs samples >= 1");

    const std::vector<double> p = clamped_barycentric(r, obs);
    const int n = obs.N;
    const int blocks = obs.outcome_count();
    std::vector<int> block_of(n);
    for (int i = 0; i < n; ++i) block_of[i] = obs.block_of(i);

    int threads = max_threads > 0 ? max_threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(samples, 64))));

    std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(blocks, 0));
    std::vector<std::uint64_t> resamples(threads, 0);

    auto worker = [&](int tid, std::uint64_t lo, std::uint64_t hi) {
        std::vector<double> g(n);
        constexpr double inf = std::numeric_limits<double>::infinity();
        for (std::uint64_t s = lo; s < hi; ++s) {
            SampleRng rng(spec, s);
            int region = -1;
            while (region < 0) {
                // classification only needs ratios, so the Dirichlet
                // normalization constant cancels
                double best = inf;
                bool tie = false;
                for (int i = 0; i < n; ++i) {
                    const double gi = rng.next_exponential();
                    const double ratio = p[i] > 0.0 ? gi / p[i] : inf;
                    if (ratio < best) {
                        best = ratio;
                        region = i;
                        tie = false;
                    } else if (ratio == best) {
                        tie = true;
                    }
                }
                if (tie || best == inf) {
                    region = -1;
                    ++resamples[tid];
                }
            }
            ++counts[tid][block_of[region]];
        }
    };

    if (threads == 1) {
        worker(0, 0, samples);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (samples + threads - 1) / threads;
        for (int tid = 0; tid < threads; ++tid) {
            const std::uint64_t lo = chunk * tid;
            const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, tid, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    FrequencyReport report;
    report.samples = samples;
    report.seed = spec.seed;
    report.counts.assign(blocks, 0);
    for (int tid = 0; tid < threads; ++tid) {
        report.resamples += resamples[tid];
        for (int k = 0; k < blocks; ++k) report.counts[k] += counts[tid][k];
    }
    report.frequencies.resize(blocks);
    report.born_reference.resize(blocks);
    report.z_scores.resize(blocks);
    for (int k = 0; k < blocks; ++k) {
        report.frequencies[k] = static_cast<double>(report.counts[k]) / static_cast<double>(samples);
        // clamp away float noise so the binomial variance stays well defined
        report.born_reference[k] = std::clamp(degenerate_probability(r, obs, k), 0.0, 1.0);
        const double pk = report.born_reference[k];
        const double var = pk * (1.0 - pk) / static_cast<double>(samples);
        if (var > 0.0) {
            report.z_scores[k] = (report.frequencies[k] - pk) / std::sqrt(var);
        } else {
            report.z_scores[k] = report.frequencies[k] == pk
                                     ? 0.0
                                     : std::numeric_limits<double>::infinity();
        }
    }
    return report;
}

FrequencyReport estimate_probabilities_density(const BlochVector& r, const Observable& obs,
                                               const DisintegrationDensity& rho, std::uint64_t samples,
                                               const RngSpec& spec, int max_threads) {
    if (samples < 1) throw validation_error("estimate_probabilities_density needs samples >= 1");
    if (obs.N != 2 || obs.outcome_count() != 2)
        throw validation_error("nonuniform densities are defined for non-degenerate N=2 observables only");
    rho.validate();

    // coordinate of the on-membrane particle along n_1
    const double x_p = r.dot(obs.vertex_vectors[0]);
    const SplitProbability born = density_probability(x_p, rho);

    int threads = max_threads > 0 ? max_threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(samples, 64))));

    std::vector<std::uint64_t> first_counts(threads, 0);
    auto worker = [&](int tid, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t s = lo; s < hi; ++s) {
            SampleRng rng(spec, s);
            const double x = sample_from_density(rho, rng);
            bool outcome_first;
            if (x < x_p) {
                outcome_first = true;
            } else if (x > x_p) {
                outcome_first = false;
            } else {
                outcome_first = (rng.next_u64() & 1) != 0;  // unstable equilibrium
            }
            if (outcome_first) ++first_counts[tid];
        }
    };

    if (threads == 1) {
        worker(0, 0, samples);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (samples + threads - 1) / threads;
        for (int tid = 0; tid < threads; ++tid) {
            const std::uint64_t lo = chunk * tid;
            const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, tid, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::uint64_t first = 0;
    for (std::uint64_t c : first_counts) first += c;

    // map vertex outcomes onto partition blocks (identity for non-degenerate)
    FrequencyReport report;
    report.samples = samples;
    report.seed = spec.seed;
    report.counts = {first, samples - first};
    if (obs.block_of(0) == 1) std::swap(report.counts[0], report.counts[1]);
    report.born_reference = {born.p1, born.p2};
    if (obs.block_of(0) == 1) std::swap(report.born_reference[0], report.born_reference[1]);
    report.frequencies.resize(2);
    report.z_scores.resize(2);
    for (int k = 0; k < 2; ++k) {
        report.frequencies[k] = static_cast<double>(report.counts[k]) / static_cast<double>(samples);
        const double pk = report.born_reference[k];
        const double var = pk * (1.0 - pk) / static_cast<double>(samples);
        report.z_scores[k] = var > 0.0 ? (report.frequencies[k] - pk) / std::sqrt(var)
                             : (report.frequencies[k] == pk ? 0.0
                                                            : std::numeric_limits<double>::infinity());
    }
    return report;
}

BlochVector decohered_state(const BlochVector& r, const Observable& obs) {
    return decompose(r, obs).r_parallel;
}

} // namespace blochsim
