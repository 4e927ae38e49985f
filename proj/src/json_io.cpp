#include "blochsim/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace blochsim {

json complex_matrix_to_json(const cmat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

cmat complex_matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw validation_error("matrix JSON must be a non-empty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.at(0).size());
    cmat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j.at(r).size()) != cols) throw validation_error("ragged matrix JSON");
        for (int c = 0; c < cols; ++c) {
            const json& entry = j.at(r).at(c);
            if (!entry.is_array() || entry.size() != 2)
                throw validation_error("matrix entries must be [re, im] pairs");
            m(r, c) = cxd(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return m;
}

json basis_to_json(const GeneratorBasis& basis) {
    json j;
    j["N"] = basis.N;
    json mats = json::array();
    for (const cmat& m : basis.matrices) mats.push_back(complex_matrix_to_json(m));
    j["matrices"] = std::move(mats);
    auto tensor = [](const StructureTensor& t) {
        json entries = json::array();
        for (const auto& e : t.entries()) entries.push_back({e.i, e.j, e.k, e.value});
        return entries;
    };
    j["f"] = tensor(basis.f);
    j["d"] = tensor(basis.d);
    return j;
}

json state_matrix_to_json(const HermitianOperator& d) {
    json j;
    j["N"] = d.dim();
    j["matrix"] = complex_matrix_to_json(d.m);
    return j;
}

json bloch_to_json(const BlochVector& r) {
    json j;
    j["N"] = r.N;
    j["bloch"] = std::vector<double>(r.components.data(), r.components.data() + r.components.size());
    return j;
}

BlochVector state_from_json(const json& j, const GeneratorBasis& basis) {
    const bool has_matrix = j.contains("matrix");
    const bool has_bloch = j.contains("bloch");
    if (has_matrix == has_bloch)
        throw validation_error("state JSON must carry exactly one of \"matrix\" or \"bloch\"");
    const int n = j.at("N").get<int>();
    if (n != basis.N) throw validation_error("state JSON dimension does not match the basis");
    if (has_matrix) {
        HermitianOperator d(complex_matrix_from_json(j.at("matrix")));
        if (d.dim() != n) throw validation_error("state matrix size does not match N");
        return state_to_vector(d, basis);
    }
    const auto values = j.at("bloch").get<std::vector<double>>();
    if (static_cast<int>(values.size()) != n * n - 1)
        throw validation_error("bloch vector length must be N^2-1");
    return BlochVector(n, Eigen::Map<const rvec>(values.data(), values.size()));
}

Observable observable_from_json(const json& j, const GeneratorBasis& basis) {
    if (j.contains("matrix")) {
        const int n = j.at("N").get<int>();
        if (n != basis.N) throw validation_error("observable JSON dimension does not match the basis");
        HermitianOperator a(complex_matrix_from_json(j.at("matrix")));
        if (a.dim() != n) throw validation_error("observable matrix size does not match N");
        const double tol = j.value("degeneracy_tol", 1e-8);
        return observable_from_matrix(a, basis, tol);
    }
    if (j.contains("projectors")) {
        std::vector<cmat> projectors;
        for (const json& p : j.at("projectors")) projectors.push_back(complex_matrix_from_json(p));
        return observable_from_parts(j.at("eigenvalues").get<std::vector<double>>(), std::move(projectors),
                                     j.at("partition").get<std::vector<std::vector<int>>>(), basis);
    }
    throw validation_error("observable JSON needs either \"matrix\" or \"projectors\"");
}

DisintegrationDensity density_from_json(const json& j) {
    DisintegrationDensity rho;
    for (const json& p : j.value("pieces", json::array())) {
        if (!p.is_array() || p.size() != 3)
            throw validation_error("density pieces must be [x_lo, x_hi, height] triples");
        rho.pieces.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
    }
    for (const json& a : j.value("atoms", json::array())) {
        if (!a.is_array() || a.size() != 2) throw validation_error("density atoms must be [x0, mass] pairs");
        rho.atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    }
    rho.validate();
    return rho;
}

json density_to_json(const DisintegrationDensity& rho) {
    json j;
    json pieces = json::array();
    for (const auto& p : rho.pieces) pieces.push_back({p.lo, p.hi, p.height});
    json atoms = json::array();
    for (const auto& a : rho.atoms) atoms.push_back({a.x0, a.mass});
    j["pieces"] = std::move(pieces);
    j["atoms"] = std::move(atoms);
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw io_error("cannot parse " + path + ": " + err.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw io_error("write failed for " + path);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char byte : bytes) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path + " for hashing");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(buffer.str())));
    return out;
}

std::string format_double(double value) {
    char out[64];
    std::snprintf(out, sizeof(out), "%.17g", value);
    return out;
}

} // namespace blochsim
