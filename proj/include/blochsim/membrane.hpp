#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blochsim/density.hpp"
#include "blochsim/observable.hpp"
#include "blochsim/rng.hpp"

namespace blochsim {

/// Order parameters of the tripartite process. The model does not fix the
/// timing; the defaults give each deterministic phase unit duration and an
/// instantaneous wait before disintegration and emersion.
struct Schedule {
    double t1 = 1.0;
    double t2 = 1.0;
    double t3 = 2.0;
    double t4 = 2.0;
    double t5 = 3.0;

    void validate() const;
};

enum class Phase { Decoherence, Collapse, Purification };
const char* phase_name(Phase p);

struct TracePoint {
    double t;
    BlochVector r;
    Phase phase;
};

/// Full record of one measurement run: the piecewise-linear path
/// r -> r_parallel -> s_parallel -> s, the sampled disintegration point and
/// the outcome block.
struct MeasurementTrace {
    Schedule schedule;
    std::vector<double> lambda_bary;
    int outcome = -1;
    int resamples = 0;
    BlochVector initial;
    BlochVector on_membrane;   // r_parallel
    BlochVector collapsed;     // s_parallel_{I_k}
    BlochVector final_state;   // s_{I_k}
    std::vector<TracePoint> waypoints;
};

/// Uniform point on the (N-1)-simplex: N exponential spacings normalized to
/// sum 1 (flat Dirichlet).
std::vector<double> sample_uniform_lambda(const Observable& obs, SampleRng& rng);

/// Index i of the region A_i (vertex i replaced by the on-membrane point)
/// containing lambda: the unique argmin of lambda_k / point_k.
/// Returns -1 on a tie (unstable equilibrium; caller resamples). Throws
/// validation_error when the point sits on the simplex boundary and lambda
/// lies in the collapsed direction (0/0 ratio).
int classify_region(const std::vector<double>& lambda_bary, const std::vector<double>& point_bary);

/// One full tripartite run. Returns the outcome block index and the trace.
std::pair<int, MeasurementTrace> run_measurement(const BlochVector& r, const Observable& obs,
                                                 const GeneratorBasis& basis, SampleRng& rng,
                                                 const Schedule& schedule = {},
                                                 int points_per_segment = 32);

struct FrequencyReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts;   // per partition block
    std::vector<double> frequencies;
    std::vector<double> born_reference;  // Tr D(r) P_{I_k}
    std::vector<double> z_scores;
    std::uint64_t resamples = 0;
};

/// Monte Carlo outcome frequencies. Sample index space is partitioned
/// deterministically across workers and every draw depends only on
/// (spec, sample index), so the counts are identical for any worker count.
/// max_threads <= 0 picks the hardware concurrency.
FrequencyReport estimate_probabilities(const BlochVector& r, const Observable& obs, std::uint64_t samples,
                                       const RngSpec& spec, int max_threads = 0);

/// Same contract as estimate_probabilities but the 1-membrane disintegrates
/// according to rho instead of uniformly. Requires N = 2 and a non-degenerate
/// observable; outcome k follows the vertex order, and born_reference holds
/// the rho-measures of the two segments.
FrequencyReport estimate_probabilities_density(const BlochVector& r, const Observable& obs,
                                               const DisintegrationDensity& rho, std::uint64_t samples,
                                               const RngSpec& spec, int max_threads = 0);

/// r_parallel: the state with all coherences in the observable eigenbasis
/// removed, sum_i P(r -> n_i) n_i.
BlochVector decohered_state(const BlochVector& r, const Observable& obs);

} // namespace blochsim
