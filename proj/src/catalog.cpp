#include "isocoh/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace isocoh {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<Integer> parse_suffix(std::string_view s) {
  if (s.empty()) return std::nullopt;
  Integer v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

SurfaceModel make_hirzebruch(Integer n) {
  if (n < 0) throw std::invalid_argument("Hirzebruch degree must be non-negative, got " + std::to_string(n));
  SurfaceModel::Data data;
  data.name = "F" + std::to_string(n);
  data.basis = {"C0", "f"};
  data.form = IntersectionForm({{checked::neg(n), 1}, {1, 0}});
  data.canonical_class = DivisorClass{-2, checked::neg(checked::add(n, 2))};
  data.chi_structure_sheaf = 1;
  const DivisorClass c0{1, 0};
  const DivisorClass fiber{0, 1};
  if (n > 0) data.negative_curves = {c0};
  data.mori_generators = {c0, fiber};
  data.effective_generators = {c0, fiber};
  data.regime = Regime::toric_convex_fan;
  return SurfaceModel(std::move(data));
}

std::vector<DivisorClass> enumerate_minus_one_curves(int k) {
  if (k < 0 || k > 8) throw std::invalid_argument("del Pezzo index must be in 0..8, got " + std::to_string(k));
  constexpr Integer kMaxDegree = 6;
  constexpr Integer kLow = -1;
  constexpr Integer kHigh = 3;

  std::vector<DivisorClass> found;
  std::vector<Integer> b(k, kLow);
  for (Integer a = 0; a <= kMaxDegree; ++a) {
    std::fill(b.begin(), b.end(), kLow);
    while (true) {
      Integer sum = 0;
      Integer squares = 0;
      for (Integer bi : b) {
        sum += bi;
        squares += bi * bi;
      }
      // D^2 = a^2 - sum b_i^2 = -1 and D.K = -3a + sum b_i = -1.
      if (a * a - squares == -1 && sum - 3 * a == -1) {
        std::vector<Integer> coeffs{a};
        for (Integer bi : b) coeffs.push_back(-bi);
        found.emplace_back(std::move(coeffs));
      }
      int pos = k - 1;
      while (pos >= 0 && b[pos] == kHigh) b[pos--] = kLow;
      if (pos < 0) break;
      ++b[pos];
    }
  }
  std::sort(found.begin(), found.end(), [](const DivisorClass& x, const DivisorClass& y) {
    if (x[0] != y[0]) return x[0] < y[0];
    const auto xs = x.coefficients().subspan(1);
    const auto ys = y.coefficients().subspan(1);
    return std::lexicographical_compare(ys.begin(), ys.end(), xs.begin(), xs.end());
  });
  return found;
}

SurfaceModel make_del_pezzo(int k) {
  if (k < 0 || k > 8) throw std::invalid_argument("del Pezzo index must be in 0..8, got " + std::to_string(k));
  const std::size_t rank = static_cast<std::size_t>(k) + 1;
  SurfaceModel::Data data;
  data.name = "dP" + std::to_string(k);
  data.basis = {"H"};
  for (int i = 1; i <= k; ++i) data.basis.push_back("E" + std::to_string(i));
  std::vector<Integer> diag(rank, -1);
  diag[0] = 1;
  data.form = IntersectionForm::diagonal(diag);
  std::vector<Integer> canonical(rank, 1);
  canonical[0] = -3;
  data.canonical_class = DivisorClass(std::move(canonical));
  data.chi_structure_sheaf = 1;
  data.negative_curves = enumerate_minus_one_curves(k);
  if (k == 0) {
    data.mori_generators = {DivisorClass{1}};
  } else if (k == 1) {
    data.mori_generators = {DivisorClass{0, 1}, DivisorClass{1, -1}};
  } else {
    data.mori_generators = data.negative_curves;
  }
  data.effective_generators = data.mori_generators;
  data.regime = Regime::del_pezzo;
  return SurfaceModel(std::move(data));
}

bool is_catalog_name(std::string_view name) {
  const std::string n = lowercase(name);
  if (n.rfind("dp", 0) == 0) {
    auto k = parse_suffix(std::string_view(n).substr(2));
    return k && *k >= 0 && *k <= 8;
  }
  if (n.rfind("f", 0) == 0) {
    auto d = parse_suffix(std::string_view(n).substr(1));
    return d && *d >= 0;
  }
  return false;
}

SurfaceModel catalog_surface(std::string_view name) {
  const std::string n = lowercase(name);
  if (!is_catalog_name(n)) {
    std::string valid;
    for (const auto& v : catalog_names()) valid += (valid.empty() ? "" : ", ") + v;
    throw std::invalid_argument("unknown catalog surface '" + std::string(name) +
                                "'; valid names: " + valid + " (or f<n> for any n >= 0)");
  }
  if (n.rfind("dp", 0) == 0)
    return make_del_pezzo(static_cast<int>(*parse_suffix(std::string_view(n).substr(2))));
  return make_hirzebruch(*parse_suffix(std::string_view(n).substr(1)));
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (int k = 0; k <= 8; ++k) names.push_back("dp" + std::to_string(k));
  for (int n = 0; n <= 4; ++n) names.push_back("f" + std::to_string(n));
  return names;
}

std::string_view to_string(ValidationFailure failure) {
  switch (failure) {
    case ValidationFailure::malformed_field: return "malformed_field";
    case ValidationFailure::rank_not_positive: return "rank_not_positive";
    case ValidationFailure::matrix_shape: return "matrix_shape";
    case ValidationFailure::matrix_asymmetric: return "matrix_asymmetric";
    case ValidationFailure::vector_length: return "vector_length";
    case ValidationFailure::zero_generator: return "zero_generator";
    case ValidationFailure::curve_not_negative: return "curve_not_negative";
    case ValidationFailure::parity: return "parity";
    case ValidationFailure::unknown_regime: return "unknown_regime";
    case ValidationFailure::signature: return "signature";
  }
  return "unknown";
}

ValidationError::ValidationError(ValidationFailure failure, std::string field,
                                 const std::string& message)
    : std::runtime_error(std::string(to_string(failure)) + " in " + field + ": " + message),
      failure_(failure),
      field_(std::move(field)) {}

Signature signature(const IntersectionForm& form) {
  // Congruent diagonalisation over the rationals. When no nonzero diagonal
  // entry is left, e_i + e_j with a_ij != 0 gives one (its square is 2 a_ij).
  using boost::multiprecision::cpp_rational;
  const std::size_t r = form.rank();
  std::vector<std::vector<cpp_rational>> a(r, std::vector<cpp_rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = form.at(i, j);

  auto swap_index = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };

  Signature sig;
  for (std::size_t p = 0; p < r; ++p) {
    std::size_t pivot = r;
    for (std::size_t i = p; i < r && pivot == r; ++i)
      if (a[i][i] != 0) pivot = i;
    if (pivot == r) {
      for (std::size_t i = p; i < r && pivot == r; ++i)
        for (std::size_t j = i + 1; j < r && pivot == r; ++j)
          if (a[i][j] != 0) {
            for (std::size_t k = 0; k < r; ++k) a[i][k] += a[j][k];
            for (std::size_t k = 0; k < r; ++k) a[k][i] += a[k][j];
            pivot = i;
          }
    }
    if (pivot == r) {
      sig.zero += static_cast<int>(r - p);
      return sig;
    }
    swap_index(p, pivot);
    const cpp_rational d = a[p][p];
    (d > 0 ? sig.positive : sig.negative) += 1;
    for (std::size_t i = p + 1; i < r; ++i) {
      const cpp_rational factor = a[i][p] / d;
      if (factor == 0) continue;
      for (std::size_t j = p; j < r; ++j) a[i][j] -= factor * a[p][j];
    }
    for (std::size_t j = p + 1; j < r; ++j) a[p][j] = 0;
  }
  return sig;
}

SurfaceModel load_surface(const SurfaceSpec& spec, const LoadOptions& options) {
  using VF = ValidationFailure;
  if (spec.rank <= 0)
    throw ValidationError(VF::rank_not_positive, "rank", "rank must be positive, got " + std::to_string(spec.rank));
  const auto r = static_cast<std::size_t>(spec.rank);

  if (spec.intersection_matrix.size() != r)
    throw ValidationError(VF::matrix_shape, "intersection_matrix",
                          "expected " + std::to_string(r) + " rows, got " +
                              std::to_string(spec.intersection_matrix.size()));
  for (std::size_t i = 0; i < r; ++i)
    if (spec.intersection_matrix[i].size() != r)
      throw ValidationError(VF::matrix_shape, "intersection_matrix",
                            "row " + std::to_string(i) + " has length " +
                                std::to_string(spec.intersection_matrix[i].size()));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (spec.intersection_matrix[i][j] != spec.intersection_matrix[j][i])
        throw ValidationError(VF::matrix_asymmetric, "intersection_matrix",
                              "entries (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") and (" + std::to_string(j) + "," + std::to_string(i) +
                                  ") differ");

  auto check_length = [&](const std::vector<Integer>& v, const std::string& field) {
    if (v.size() != r)
      throw ValidationError(VF::vector_length, field,
                            "expected length " + std::to_string(r) + ", got " + std::to_string(v.size()));
  };
  check_length(spec.canonical_class, "canonical_class");
  auto indexed = [](const char* list, std::size_t i) {
    return std::string(list) + "[" + std::to_string(i) + "]";
  };
  for (std::size_t i = 0; i < spec.negative_curves.size(); ++i)
    check_length(spec.negative_curves[i], indexed("negative_curves", i));
  for (std::size_t i = 0; i < spec.mori_generators.size(); ++i)
    check_length(spec.mori_generators[i], indexed("mori_generators", i));
  for (std::size_t i = 0; i < spec.effective_generators.size(); ++i)
    check_length(spec.effective_generators[i], indexed("effective_generators", i));

  auto regime = parse_regime(spec.regime);
  if (!regime)
    throw ValidationError(VF::unknown_regime, "regime", "unknown regime '" + spec.regime + "'");

  for (std::size_t i = 0; i < spec.mori_generators.size(); ++i)
    if (DivisorClass(spec.mori_generators[i]).is_zero())
      throw ValidationError(VF::zero_generator, indexed("mori_generators", i), "generator is zero");
  for (std::size_t i = 0; i < spec.effective_generators.size(); ++i)
    if (DivisorClass(spec.effective_generators[i]).is_zero())
      throw ValidationError(VF::zero_generator, indexed("effective_generators", i), "generator is zero");

  const IntersectionForm form(spec.intersection_matrix);
  const DivisorClass canonical(spec.canonical_class);
  for (std::size_t i = 0; i < spec.negative_curves.size(); ++i) {
    const DivisorClass c(spec.negative_curves[i]);
    const Integer self = form.pair(c, c);
    if (self >= 0)
      throw ValidationError(VF::curve_not_negative, indexed("negative_curves", i),
                            "self-intersection " + std::to_string(self) + " is not negative");
  }

  auto check_parity = [&](const std::vector<std::vector<Integer>>& list, const char* field) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const DivisorClass c(list[i]);
      const Integer twice = form.pair(c, c - canonical);
      if (twice % 2 != 0)
        throw ValidationError(VF::parity, indexed(field, i),
                              "D.(D-K) = " + std::to_string(twice) + " is odd");
    }
  };
  check_parity(spec.negative_curves, "negative_curves");
  check_parity(spec.mori_generators, "mori_generators");
  check_parity(spec.effective_generators, "effective_generators");

  if (options.strict) {
    const Signature sig = signature(form);
    if (sig.positive != 1 || sig.zero != 0)
      throw ValidationError(VF::signature, "intersection_matrix",
                            "signature (" + std::to_string(sig.positive) + "," +
                                std::to_string(sig.negative) + "," + std::to_string(sig.zero) +
                                ") violates the Hodge index theorem; expected (1," +
                                std::to_string(r - 1) + ",0)");
  }

  SurfaceModel::Data data;
  data.name = spec.name;
  data.form = form;
  data.canonical_class = canonical;
  data.chi_structure_sheaf = spec.chi_structure_sheaf;
  auto to_classes = [](const std::vector<std::vector<Integer>>& list) {
    std::vector<DivisorClass> out;
    for (const auto& v : list) out.emplace_back(v);
    return out;
  };
  data.negative_curves = to_classes(spec.negative_curves);
  data.mori_generators = to_classes(spec.mori_generators);
  data.effective_generators = to_classes(spec.effective_generators);
  data.regime = *regime;
  if (is_catalog_name(spec.name)) {
    const std::string n = lowercase(spec.name);
    if (n.rfind("dp", 0) == 0) {
      data.basis = {"H"};
      for (std::size_t i = 1; i < r; ++i) data.basis.push_back("E" + std::to_string(i));
    } else if (r == 2) {
      data.basis = {"C0", "f"};
    }
  }
  return SurfaceModel(std::move(data));
}

SurfaceSpec spec_of(const SurfaceModel& surface) {
  SurfaceSpec spec;
  spec.name = surface.name();
  spec.rank = static_cast<Integer>(surface.rank());
  spec.intersection_matrix = surface.form().rows();
  auto vec = [](const DivisorClass& d) {
    return std::vector<Integer>(d.coefficients().begin(), d.coefficients().end());
  };
  auto vecs = [&](const std::vector<DivisorClass>& list) {
    std::vector<std::vector<Integer>> out;
    for (const auto& d : list) out.push_back(vec(d));
    return out;
  };
  spec.canonical_class = vec(surface.canonical_class());
  spec.chi_structure_sheaf = surface.chi_structure_sheaf();
  spec.negative_curves = vecs(surface.negative_curves());
  spec.mori_generators = vecs(surface.mori_generators());
  spec.effective_generators = vecs(surface.effective_generators());
  spec.regime = std::string(to_string(surface.regime()));
  return spec;
}

nlohmann::json to_json(const SurfaceSpec& spec) {
  return nlohmann::json{
      {"name", spec.name},
      {"rank", spec.rank},
      {"intersection_matrix", spec.intersection_matrix},
      {"canonical_class", spec.canonical_class},
      {"chi_structure_sheaf", spec.chi_structure_sheaf},
      {"negative_curves", spec.negative_curves},
      {"mori_generators", spec.mori_generators},
      {"effective_generators", spec.effective_generators},
      {"regime", spec.regime},
  };
}

SurfaceSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw ValidationError(ValidationFailure::malformed_field, "<document>", "expected a JSON object");
  auto field = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key))
      throw ValidationError(ValidationFailure::malformed_field, key, "missing key");
    return j.at(key);
  };
  auto get = [&]<class T>(const char* key, T& out) {
    try {
      out = field(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(ValidationFailure::malformed_field, key, e.what());
    }
  };
  SurfaceSpec spec;
  get("name", spec.name);
  get("rank", spec.rank);
  get("intersection_matrix", spec.intersection_matrix);
  get("canonical_class", spec.canonical_class);
  get("chi_structure_sheaf", spec.chi_structure_sheaf);
  get("negative_curves", spec.negative_curves);
  get("mori_generators", spec.mori_generators);
  get("effective_generators", spec.effective_generators);
  get("regime", spec.regime);
  for (const auto& [key, value] : j.items()) {
    static const std::vector<std::string> known{
        "name", "rank", "intersection_matrix", "canonical_class", "chi_structure_sheaf",
        "negative_curves", "mori_generators", "effective_generators", "regime"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ValidationError(ValidationFailure::malformed_field, key, "unexpected key");
  }
  return spec;
}

SurfaceSpec read_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open surface spec file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(ValidationFailure::malformed_field, "<document>", e.what());
  }
  return spec_from_json(j);
}

SurfaceModel resolve_surface(std::string_view name_or_path, const LoadOptions& options) {
  if (is_catalog_name(name_or_path)) return catalog_surface(name_or_path);
  const std::filesystem::path path{std::string(name_or_path)};
  if (std::filesystem::exists(path)) return load_surface(read_spec_file(path), options);
  return catalog_surface(name_or_path);  // throws with the list of valid names
}

}  // namespace isocoh
