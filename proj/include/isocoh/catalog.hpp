// Surface construction: Hirzebruch and del Pezzo catalogs, and validated
// loading of user-supplied surface descriptions.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "isocoh/cone.hpp"
#include "isocoh/lattice.hpp"

namespace isocoh {

/// F_n in the basis (C0, f): C0^2 = -n, C0.f = 1, f^2 = 0, K = -2C0-(n+2)f.
SurfaceModel make_hirzebruch(Integer n);

/// dP_k in the basis (H, E1..Ek), k in 0..8.
SurfaceModel make_del_pezzo(int k);

/**
 * All classes aH - sum b_i E_i with D^2 = -1 and D.K = -1 inside the box
 * a in [0,6], b_i in [-1,3]. For k <= 8 this box contains every (-1)-curve
 * of dP_k. Sorted by degree, then with E1 before E2 and so on.
 */
std::vector<DivisorClass> enumerate_minus_one_curves(int k);

/// Catalog lookup by name: "dp0".."dp8", "f<n>" (case-insensitive).
SurfaceModel catalog_surface(std::string_view name);
bool is_catalog_name(std::string_view name);
std::vector<std::string> catalog_names();

/** Serialized form of a SurfaceModel, one-to-one with the JSON spec file. */
struct SurfaceSpec {
  std::string name;
  Integer rank = 0;
  std::vector<std::vector<Integer>> intersection_matrix;
  std::vector<Integer> canonical_class;
  Integer chi_structure_sheaf = 1;
  std::vector<std::vector<Integer>> negative_curves;
  std::vector<std::vector<Integer>> mori_generators;
  std::vector<std::vector<Integer>> effective_generators;
  std::string regime;
};

enum class ValidationFailure {
  malformed_field,
  rank_not_positive,
  matrix_shape,
  matrix_asymmetric,
  vector_length,
  zero_generator,
  curve_not_negative,
  parity,
  unknown_regime,
  signature,
};

std::string_view to_string(ValidationFailure failure);

/** A surface description violated an invariant; names the offending field. */
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationFailure failure, std::string field, const std::string& message);
  ValidationFailure failure() const { return failure_; }
  const std::string& field() const { return field_; }

 private:
  ValidationFailure failure_;
  std::string field_;
};

struct LoadOptions {
  /// Also require signature (1, rank-1), as the Hodge index theorem demands.
  bool strict = false;
};

/**
 * Validates `spec` and builds the model. Checks, in order: rank, matrix
 * shape and symmetry, vector lengths, regime, nonzero cone generators,
 * negativity of listed curves, Riemann-Roch parity of every listed class,
 * and (strict mode only) the signature.
 *
 * Irreducibility of the listed negative curves, and the claim that the
 * generator lists generate the respective cones, are taken on trust.
 */
SurfaceModel load_surface(const SurfaceSpec& spec, const LoadOptions& options = {});

SurfaceSpec spec_of(const SurfaceModel& surface);

/// Number of (positive, negative, zero) eigenvalue signs of the form.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};
Signature signature(const IntersectionForm& form);

nlohmann::json to_json(const SurfaceSpec& spec);
/// Throws ValidationError(malformed_field) on missing keys or wrong types.
SurfaceSpec spec_from_json(const nlohmann::json& j);
SurfaceSpec read_spec_file(const std::filesystem::path& path);

/// A catalog name or a path to a JSON spec file.
SurfaceModel resolve_surface(std::string_view name_or_path, const LoadOptions& options = {});

}  // namespace isocoh
