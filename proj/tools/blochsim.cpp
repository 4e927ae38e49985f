// Command-line front end: binds the library modules into reproducible,
// manifest-tracked experiments. All randomness enters through --seed (fixed
// default, never wall clock); BLOCHSIM_THREADS caps Monte Carlo workers.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "blochsim/bloch.hpp"
#include "blochsim/density.hpp"
#include "blochsim/evolution.hpp"
#include "blochsim/generators.hpp"
#include "blochsim/json_io.hpp"
#include "blochsim/membrane.hpp"
#include "blochsim/simplex.hpp"
#include "blochsim/universal.hpp"
#include "blochsim/version.hpp"

namespace bs = blochsim;
using bs::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

int env_thread_cap() {
    const char* raw = std::getenv("BLOCHSIM_THREADS");
    if (!raw) return 0;
    const int value = std::atoi(raw);
    return value > 0 ? value : 0;
}

int effective_threads(int requested) {
    const int cap = env_thread_cap();
    if (requested <= 0) return cap;      // library picks hardware concurrency, capped
    if (cap <= 0) return requested;
    return std::min(requested, cap);
}

// flags > config file > defaults
struct ConfigFile {
    json data = json::object();

    void load(const std::string& path) {
        if (!path.empty()) data = bs::read_json_file(path);
    }

    template <typename T>
    void apply(const CLI::App* cmd, const std::string& flag, const std::string& key, T& target) const {
        if (cmd->count("--" + flag) > 0) return;
        const std::string name = cmd->get_name();
        if (data.contains(name) && data[name].contains(key)) {
            target = data[name][key].get<T>();
        } else if (data.contains(key)) {
            target = data[key].get<T>();
        }
    }
};

struct ManifestWriter {
    std::string command;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;

    void write(const std::string& path) const {
        if (path.empty()) return;
        json j;
        j["command"] = command;
        j["parameters"] = parameters;
        j["seed"] = seed;
        j["versions"] = std::string(bs::kLibraryName) + " " + bs::kLibraryVersion;
        json outs = json::array();
        for (const std::string& out : outputs)
            outs.push_back({{"path", out}, {"fnv1a64", bs::hash_file(out)}});
        j["outputs"] = std::move(outs);
        bs::write_text_file(path, j.dump(2) + "\n");
    }
};

json frequency_report_json(const bs::FrequencyReport& report, const std::string& state_hash,
                           const std::string& observable_hash) {
    json j;
    j["seed"] = report.seed;
    j["samples"] = report.samples;
    j["state_hash"] = state_hash;
    j["observable_hash"] = observable_hash;
    j["counts"] = report.counts;
    j["frequencies"] = report.frequencies;
    j["born_reference"] = report.born_reference;
    j["z_scores"] = report.z_scores;
    j["resamples"] = report.resamples;
    return j;
}

bs::Schedule parse_schedule(const std::string& spec) {
    bs::Schedule schedule;
    if (spec.empty()) return schedule;
    std::istringstream in(spec);
    std::vector<double> values;
    std::string token;
    while (std::getline(in, token, ',')) values.push_back(std::stod(token));
    if (values.size() != 5)
        throw bs::validation_error("schedule must be five comma-separated times t1,..,t5");
    schedule = {values[0], values[1], values[2], values[3], values[4]};
    schedule.validate();
    return schedule;
}

void cmd_gens(int n, const std::string& out_path, ManifestWriter& manifest,
              const std::string& manifest_path) {
    const bs::GeneratorBasis basis = bs::build_generators(n);
    bs::write_text_file(out_path, bs::basis_to_json(basis).dump(2) + "\n");
    manifest.outputs.push_back(out_path);
    manifest.write(manifest_path);
    std::cout << "wrote " << basis.count() << " generators for N=" << n << " to " << out_path << "\n";
}

void cmd_map(const std::string& in_path, const std::string& to, const std::string& out_path,
             ManifestWriter& manifest, const std::string& manifest_path) {
    const json in = bs::read_json_file(in_path);
    if (!in.contains("N")) throw bs::validation_error("state JSON needs an \"N\" key");
    const bs::GeneratorBasis basis = bs::build_generators(in.at("N").get<int>());
    const bs::BlochVector r = bs::state_from_json(in, basis);
    json out;
    if (to == "bloch") {
        out = bs::bloch_to_json(r);
    } else if (to == "matrix") {
        out = bs::state_matrix_to_json(bs::vector_to_state(r, basis));
    } else {
        throw bs::validation_error("--to must be \"bloch\" or \"matrix\"");
    }
    bs::write_text_file(out_path, out.dump(2) + "\n");
    manifest.outputs.push_back(out_path);
    manifest.write(manifest_path);
}

void cmd_measure(const std::string& state_path, const std::string& observable_path,
                 std::uint64_t samples, std::uint64_t seed, const std::string& density_spec,
                 int threads, const std::string& out_path, const std::string& manifest_path,
                 ManifestWriter& manifest) {
    const json state_json = bs::read_json_file(state_path);
    const json obs_json = bs::read_json_file(observable_path);
    if (!state_json.contains("N")) throw bs::validation_error("state JSON needs an \"N\" key");
    const bs::GeneratorBasis basis = bs::build_generators(state_json.at("N").get<int>());

    const bs::BlochVector r = bs::state_from_json(state_json, basis);
    const auto validity = bs::is_valid_state(r, basis);
    if (!validity.valid)
        throw bs::validation_error("input is not a state (min eigenvalue " +
                                   std::to_string(validity.min_eigenvalue) + ")");
    const bs::Observable obs = bs::observable_from_json(obs_json, basis);

    const bs::RngSpec spec{seed, 0};
    bs::FrequencyReport report;
    if (density_spec.empty() || density_spec == "uniform") {
        report = bs::estimate_probabilities(r, obs, samples, spec, threads);
    } else {
        const bs::DisintegrationDensity rho = bs::density_from_json(bs::read_json_file(density_spec));
        report = bs::estimate_probabilities_density(r, obs, rho, samples, spec, threads);
    }

    const json out =
        frequency_report_json(report, bs::hash_file(state_path), bs::hash_file(observable_path));
    bs::write_text_file(out_path, out.dump(2) + "\n");
    manifest.outputs.push_back(out_path);
    manifest.write(manifest_path);

    for (size_t k = 0; k < report.frequencies.size(); ++k)
        std::cout << "outcome " << k << ": frequency " << bs::format_double(report.frequencies[k])
                  << "  born " << bs::format_double(report.born_reference[k]) << "  z "
                  << bs::format_double(report.z_scores[k]) << "\n";
}

void cmd_trace(const std::string& state_path, const std::string& observable_path, std::uint64_t seed,
               const std::string& schedule_spec, int points, const std::string& out_path,
               ManifestWriter& manifest, const std::string& manifest_path) {
    const json state_json = bs::read_json_file(state_path);
    if (!state_json.contains("N")) throw bs::validation_error("state JSON needs an \"N\" key");
    const bs::GeneratorBasis basis = bs::build_generators(state_json.at("N").get<int>());
    const bs::BlochVector r = bs::state_from_json(state_json, basis);
    const bs::Observable obs = bs::observable_from_json(bs::read_json_file(observable_path), basis);
    const bs::Schedule schedule = parse_schedule(schedule_spec);

    bs::SampleRng rng(bs::RngSpec{seed, 0}, 0);
    const auto [outcome, trace] = bs::run_measurement(r, obs, basis, rng, schedule, points);

    std::ostringstream csv;
    csv << "t";
    for (int i = 1; i <= r.ambient_dim(); ++i) csv << ",r_" << i;
    csv << ",phase\n";
    for (const auto& point : trace.waypoints) {
        csv << bs::format_double(point.t);
        for (int i = 0; i < r.ambient_dim(); ++i) csv << "," << bs::format_double(point.r.components[i]);
        csv << "," << bs::phase_name(point.phase) << "\n";
    }
    bs::write_text_file(out_path, csv.str());
    manifest.outputs.push_back(out_path);
    manifest.write(manifest_path);
    std::cout << "outcome block " << outcome << " (resamples " << trace.resamples << ")\n";
}

void cmd_universal(int n, int i, bool scan, const std::string& out_path, int cap) {
    std::ostringstream out;
    if (scan) {
        out << "i,average,uniform\n";
        for (int split = 0; split <= n; ++split)
            out << split << "," << bs::to_fraction_string(bs::average_over_structures(n, split, 0, cap))
                << "," << bs::to_fraction_string(bs::uniform_reference(n, split)) << "\n";
    } else {
        if (i < 0) throw bs::validation_error("universal needs --i (or --scan)");
        out << "average " << bs::to_fraction_string(bs::average_over_structures(n, i, 0, cap))
            << "  uniform " << bs::to_fraction_string(bs::uniform_reference(n, i)) << "\n";
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        bs::write_text_file(out_path, out.str());
    }
}

int cmd_identities(int n_max) {
    bool all_ok = true;
    for (int n = 0; n <= n_max; ++n) {
        const bs::IdentityReport report = bs::identity_check(n);
        if (!report.first_holds || !report.second_holds) {
            all_ok = false;
            std::cout << "n=" << n << " FAILED: " << bs::to_fraction_string(report.lhs_first) << " vs "
                      << bs::to_fraction_string(report.rhs_first) << ", "
                      << bs::to_fraction_string(report.lhs_second) << " vs "
                      << bs::to_fraction_string(report.rhs_second) << "\n";
        }
    }
    std::cout << (all_ok ? "both identities hold exactly for n <= " + std::to_string(n_max)
                         : "identity check FAILED")
              << "\n";
    return all_ok ? kExitOk : kExitValidation;
}

void cmd_simplex(int n) {
    const bs::GeneratorBasis basis = bs::build_generators(n);
    const bs::HermitianOperator diag = [&] {
        bs::cmat m = bs::cmat::Zero(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = n - i;  // non-degenerate spectrum
        return bs::HermitianOperator(m);
    }();
    const bs::Observable obs = bs::observable_from_matrix(diag, basis);
    std::vector<bs::rvec> vertices;
    for (const auto& v : obs.vertex_vectors) vertices.push_back(v.components);

    std::cout << "N = " << n << "\n"
              << "simplex volume (closed form)  " << bs::format_double(bs::simplex_volume_closed(n)) << "\n"
              << "simplex volume (Cayley-Menger) "
              << bs::format_double(bs::simplex_volume_cayley_menger(vertices)) << "\n"
              << "face volume                   " << bs::format_double(bs::face_volume_closed(n)) << "\n"
              << "inradius                      " << bs::format_double(bs::inradius(n)) << "\n"
              << "vertex angle (rad)            " << bs::format_double(bs::simplex_vertex_angle(n)) << "\n";
}

void cmd_evolve(const std::string& h_path, double t, const std::string& format,
                const std::string& out_path, ManifestWriter& manifest, const std::string& manifest_path) {
    const json h_json = bs::read_json_file(h_path);
    if (!h_json.contains("N") || !h_json.contains("matrix"))
        throw bs::validation_error("Hamiltonian JSON needs \"N\" and \"matrix\"");
    const int n = h_json.at("N").get<int>();
    const bs::GeneratorBasis basis = bs::build_generators(n);
    const bs::HermitianOperator h(bs::complex_matrix_from_json(h_json.at("matrix")));
    if (h.dim() != n) throw bs::validation_error("Hamiltonian size does not match N");
    const bs::EvolutionMatrix ev = bs::evolution_matrix(h, t, basis);

    std::string payload;
    if (format == "csv") {
        std::ostringstream csv;
        for (int r = 0; r < ev.v.rows(); ++r) {
            for (int c = 0; c < ev.v.cols(); ++c) csv << (c ? "," : "") << bs::format_double(ev.v(r, c));
            csv << "\n";
        }
        payload = csv.str();
    } else if (format == "json") {
        json j;
        j["N"] = n;
        j["t"] = t;
        json rows = json::array();
        for (int r = 0; r < ev.v.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < ev.v.cols(); ++c) row.push_back(ev.v(r, c));
            rows.push_back(std::move(row));
        }
        j["V"] = std::move(rows);
        payload = j.dump(2) + "\n";
    } else {
        throw bs::validation_error("--format must be csv or json");
    }

    if (out_path.empty()) {
        std::cout << payload;
    } else {
        bs::write_text_file(out_path, payload);
        manifest.outputs.push_back(out_path);
        manifest.write(manifest_path);
    }
}

void cmd_epsilon_scan(int eps_steps, int xp_steps, const std::string& out_path,
                      ManifestWriter& manifest, const std::string& manifest_path) {
    if (eps_steps < 2 || xp_steps < 2) throw bs::validation_error("epsilon-scan needs at least 2 steps");
    std::ostringstream csv;
    csv << "epsilon,x_p,p1\n";
    for (int e = 0; e < eps_steps; ++e) {
        const double eps = static_cast<double>(e) / (eps_steps - 1);
        for (int x = 0; x < xp_steps; ++x) {
            const double x_p = -1.0 + 2.0 * x / (xp_steps - 1);
            csv << bs::format_double(eps) << "," << bs::format_double(x_p) << ","
                << bs::format_double(bs::epsilon_probability(x_p, eps).p1) << "\n";
        }
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        bs::write_text_file(out_path, csv.str());
        manifest.outputs.push_back(out_path);
        manifest.write(manifest_path);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extended Bloch representation & hidden-measurement simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags > config > defaults)");

    std::uint64_t seed = bs::RngSpec{}.seed;
    int threads = 0;

    // gens
    auto* gens = app.add_subcommand("gens", "emit a generator basis as JSON");
    int gens_n = 2;
    std::string gens_out = "generators.json", gens_manifest;
    gens->add_option("--n", gens_n, "Hilbert dimension")->required();
    gens->add_option("--out", gens_out, "output path");
    gens->add_option("--manifest", gens_manifest, "manifest path");

    // map
    auto* map_cmd = app.add_subcommand("map", "convert a state between matrix and Bloch forms");
    std::string map_in, map_to = "bloch", map_out = "state_out.json", map_manifest;
    map_cmd->add_option("--in", map_in)->required();
    map_cmd->add_option("--to", map_to, "bloch | matrix");
    map_cmd->add_option("--out", map_out);
    map_cmd->add_option("--manifest", map_manifest);

    // measure
    auto* measure = app.add_subcommand("measure", "Monte Carlo membrane measurement");
    std::string meas_state, meas_obs, meas_density, meas_out = "measure.json", meas_manifest;
    std::uint64_t meas_samples = 1000000;
    measure->add_option("--state", meas_state)->required();
    measure->add_option("--observable", meas_obs)->required();
    measure->add_option("--samples", meas_samples);
    measure->add_option("--seed", seed);
    measure->add_option("--density", meas_density, "density JSON path or \"uniform\"");
    measure->add_option("--threads", threads, "worker count (capped by BLOCHSIM_THREADS)");
    measure->add_option("--out", meas_out);
    measure->add_option("--manifest", meas_manifest, "defaults to <out>.manifest.json");

    // trace
    auto* trace = app.add_subcommand("trace", "single-run trajectory CSV");
    std::string trace_state, trace_obs, trace_schedule, trace_out = "trace.csv", trace_manifest;
    int trace_points = 32;
    trace->add_option("--state", trace_state)->required();
    trace->add_option("--observable", trace_obs)->required();
    trace->add_option("--seed", seed);
    trace->add_option("--schedule", trace_schedule, "t1,t2,t3,t4,t5");
    trace->add_option("--points", trace_points, "waypoints per segment");
    trace->add_option("--out", trace_out);
    trace->add_option("--manifest", trace_manifest);

    // universal
    auto* universal = app.add_subcommand("universal", "exact cellular averages");
    int uni_n = 2, uni_i = -1, uni_cap = 20;
    bool uni_scan = false;
    std::string uni_out;
    universal->add_option("--n", uni_n)->required();
    universal->add_option("--i", uni_i);
    universal->add_flag("--scan", uni_scan, "emit CSV over all i");
    universal->add_option("--out", uni_out);
    universal->add_option("--cap", uni_cap, "enumeration cap");

    // identities
    auto* identities = app.add_subcommand("identities", "verify the exact binomial identities");
    int iden_max = 256;
    identities->add_option("--n-max", iden_max);

    // simplex
    auto* simplex = app.add_subcommand("simplex", "measurement simplex geometry");
    int simplex_n = 2;
    simplex->add_option("--n", simplex_n)->required();

    // evolve
    auto* evolve = app.add_subcommand("evolve", "SO(N^2-1) evolution matrix of a Hamiltonian");
    std::string evolve_h, evolve_format = "csv", evolve_out;
    double evolve_t = 0.0;
    evolve->add_option("--hamiltonian", evolve_h)->required();
    evolve->add_option("--t", evolve_t)->required();
    evolve->add_option("--format", evolve_format, "csv | json");
    evolve->add_option("--out", evolve_out, "path (stdout when absent)");
    std::string evolve_manifest;
    evolve->add_option("--manifest", evolve_manifest);

    // epsilon-scan
    auto* escan = app.add_subcommand("epsilon-scan", "epsilon-model probability surface CSV");
    int escan_eps_steps = 21, escan_xp_steps = 41;
    std::string escan_out, escan_manifest;
    escan->add_option("--eps-steps", escan_eps_steps);
    escan->add_option("--xp-steps", escan_xp_steps);
    escan->add_option("--out", escan_out);
    escan->add_option("--manifest", escan_manifest);

    try {
        app.parse(argc, argv);

        ConfigFile config;
        config.load(config_path);
        config.apply(measure, "seed", "seed", seed);
        config.apply(measure, "samples", "samples", meas_samples);
        config.apply(measure, "threads", "threads", threads);
        config.apply(trace, "seed", "seed", seed);
        config.apply(trace, "schedule", "schedule", trace_schedule);
        config.apply(universal, "cap", "enumeration_cap", uni_cap);

        ManifestWriter manifest;
        manifest.seed = seed;

        if (gens->parsed()) {
            manifest.command = "gens";
            manifest.parameters = {{"n", gens_n}, {"out", gens_out}};
            cmd_gens(gens_n, gens_out, manifest, gens_manifest);
        } else if (map_cmd->parsed()) {
            manifest.command = "map";
            manifest.parameters = {{"in", map_in}, {"to", map_to}, {"out", map_out}};
            cmd_map(map_in, map_to, map_out, manifest, map_manifest);
        } else if (measure->parsed()) {
            manifest.command = "measure";
            manifest.parameters = {{"state", meas_state},   {"observable", meas_obs},
                                   {"samples", meas_samples}, {"density", meas_density},
                                   {"out", meas_out}};
            if (meas_manifest.empty()) meas_manifest = meas_out + ".manifest.json";
            cmd_measure(meas_state, meas_obs, meas_samples, seed, meas_density,
                        effective_threads(threads), meas_out, meas_manifest, manifest);
        } else if (trace->parsed()) {
            manifest.command = "trace";
            manifest.parameters = {{"state", trace_state},
                                   {"observable", trace_obs},
                                   {"schedule", trace_schedule},
                                   {"points", trace_points},
                                   {"out", trace_out}};
            cmd_trace(trace_state, trace_obs, seed, trace_schedule, trace_points, trace_out, manifest,
                      trace_manifest);
        } else if (universal->parsed()) {
            cmd_universal(uni_n, uni_i, uni_scan, uni_out, uni_cap);
        } else if (identities->parsed()) {
            return cmd_identities(iden_max);
        } else if (simplex->parsed()) {
            cmd_simplex(simplex_n);
        } else if (evolve->parsed()) {
            manifest.command = "evolve";
            manifest.parameters = {{"hamiltonian", evolve_h}, {"t", evolve_t}, {"out", evolve_out}};
            cmd_evolve(evolve_h, evolve_t, evolve_format, evolve_out, manifest, evolve_manifest);
        } else if (escan->parsed()) {
            manifest.command = "epsilon-scan";
            manifest.parameters = {{"eps_steps", escan_eps_steps}, {"xp_steps", escan_xp_steps}};
            cmd_epsilon_scan(escan_eps_steps, escan_xp_steps, escan_out, manifest, escan_manifest);
        }
        return kExitOk;
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help
        app.exit(err);
        return kExitValidation;
    } catch (const bs::resource_error& err) {
        std::cerr << "resource error: " << err.what() << "\n";
        return kExitResource;
    } catch (const bs::io_error& err) {
        std::cerr << "io error: " << err.what() << "\n";
        return kExitIo;
    } catch (const bs::validation_error& err) {
        std::cerr << "validation error: " << err.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitValidation;
    }
}
