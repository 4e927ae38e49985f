#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "blochsim/density.hpp"
#include "blochsim/generators.hpp"
#include "blochsim/observable.hpp"
#include "blochsim/types.hpp"

namespace blochsim {

using json = nlohmann::json;

/// complex matrices as rows of [re, im] pairs
json complex_matrix_to_json(const cmat& m);
cmat complex_matrix_from_json(const json& j);

/// { "N", "matrices": [...], "f": [[i,j,k,v],...], "d": [...] }
json basis_to_json(const GeneratorBasis& basis);

json state_matrix_to_json(const HermitianOperator& d);
json bloch_to_json(const BlochVector& r);

/// Accepts { "N", "matrix" } or { "N", "bloch" } (exactly one of the two
/// keys); matrices are validated as states and mapped through the basis.
BlochVector state_from_json(const json& j, const GeneratorBasis& basis);

/// Accepts { "N", "matrix", "degeneracy_tol"? } or
/// { "eigenvalues", "projectors", "partition" }.
Observable observable_from_json(const json& j, const GeneratorBasis& basis);

/// { "pieces": [[lo, hi, height],...], "atoms": [[x0, mass],...] }
DisintegrationDensity density_from_json(const json& j);
json density_to_json(const DisintegrationDensity& rho);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64 over the file bytes, as 16 hex digits
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_file(const std::string& path);

std::string format_double(double value);  // 17 significant digits

} // namespace blochsim
