// Picard-lattice arithmetic on smooth projective surfaces: divisor classes,
// the intersection pairing, Riemann-Roch and Serre duality.
//
// All coefficients are exact 64-bit integers. Every arithmetic operation is
// overflow-checked and throws OverflowError instead of wrapping.
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isocoh {

using Integer = std::int64_t;

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Thrown when two objects of different Picard rank are combined. */
class RankMismatchError : public LatticeError {
 public:
  RankMismatchError(std::size_t expected, std::size_t actual);
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

/** Thrown when D.(D-K) is odd, i.e. the surface data is inconsistent. */
class IntegralityError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class OverflowError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

namespace checked {
Integer add(Integer a, Integer b);
Integer sub(Integer a, Integer b);
Integer mul(Integer a, Integer b);
Integer neg(Integer a);
/// Ceiling of a / b for a >= 0, b > 0, computed as (a + b - 1) / b.
Integer ceil_div(Integer a, Integer b);
}  // namespace checked

/**
 * A divisor class as a coefficient vector in the basis fixed by the owning
 * surface. The class itself does not know its surface; operations that take
 * a surface reject vectors of the wrong length.
 */
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::vector<Integer> coefficients)
      : coeffs_(std::move(coefficients)) {}
  DivisorClass(std::initializer_list<Integer> coefficients)
      : coeffs_(coefficients) {}

  static DivisorClass zero(std::size_t rank) {
    return DivisorClass(std::vector<Integer>(rank, 0));
  }
  static DivisorClass unit(std::size_t rank, std::size_t index);

  std::size_t rank() const { return coeffs_.size(); }
  Integer operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const Integer> coefficients() const { return coeffs_; }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  DivisorClass operator-() const;
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) {
    return a += b;
  }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) {
    return a -= b;
  }
  friend DivisorClass operator*(Integer k, const DivisorClass& d);

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

  /// "[2,1,0]"
  std::string to_string() const;

 private:
  std::vector<Integer> coeffs_;
};

/// Parses "2,1,0" (surrounding brackets and spaces tolerated).
DivisorClass parse_class(std::string_view text);

/** Symmetric integer matrix defining the intersection pairing. */
class IntersectionForm {
 public:
  IntersectionForm() = default;
  /// Throws std::invalid_argument if `rows` is not square and symmetric.
  explicit IntersectionForm(std::vector<std::vector<Integer>> rows);

  static IntersectionForm diagonal(std::span<const Integer> entries);

  std::size_t rank() const { return rank_; }
  Integer at(std::size_t i, std::size_t j) const {
    return entries_[i * rank_ + j];
  }
  std::vector<std::vector<Integer>> rows() const;

  /// d^T M e. Throws RankMismatchError.
  Integer pair(const DivisorClass& d, const DivisorClass& e) const;

  friend bool operator==(const IntersectionForm&,
                         const IntersectionForm&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> entries_;
};

class Cone;

enum class Regime { del_pezzo, toric_convex_fan, trivial_canonical, general };

std::string_view to_string(Regime regime);
std::optional<Regime> parse_regime(std::string_view text);

/**
 * Everything the algorithms need to know about a surface, expressed in the
 * Picard lattice. Instances are immutable once built; construct them through
 * the catalog functions or load_surface(), which validate the data.
 */
class SurfaceModel {
 public:
  struct Data {
    std::string name;
    std::vector<std::string> basis;
    IntersectionForm form;
    DivisorClass canonical_class;
    Integer chi_structure_sheaf = 1;
    std::vector<DivisorClass> negative_curves;
    std::vector<DivisorClass> mori_generators;
    std::vector<DivisorClass> effective_generators;
    Regime regime = Regime::general;
  };

  /// Checks only rank consistency; semantic validation lives in the catalog.
  explicit SurfaceModel(Data data);

  const std::string& name() const { return data_.name; }
  const std::vector<std::string>& basis() const { return data_.basis; }
  std::size_t rank() const { return data_.form.rank(); }
  const IntersectionForm& form() const { return data_.form; }
  const DivisorClass& canonical_class() const { return data_.canonical_class; }
  Integer chi_structure_sheaf() const { return data_.chi_structure_sheaf; }
  const std::vector<DivisorClass>& negative_curves() const {
    return data_.negative_curves;
  }
  const std::vector<DivisorClass>& mori_generators() const {
    return data_.mori_generators;
  }
  const std::vector<DivisorClass>& effective_generators() const {
    return data_.effective_generators;
  }
  const Cone& effective_cone() const { return *effective_cone_; }
  Regime regime() const { return data_.regime; }
  const Data& data() const { return data_; }

  /// Throws RankMismatchError unless d.rank() == rank().
  void require_rank(const DivisorClass& d) const;

 private:
  Data data_;
  std::shared_ptr<const Cone> effective_cone_;
};

Integer intersect(const SurfaceModel& surface, const DivisorClass& d,
                  const DivisorClass& e);

/// chi(O_S) + D.(D-K)/2. Throws IntegralityError when D.(D-K) is odd.
Integer euler_characteristic(const SurfaceModel& surface,
                             const DivisorClass& d);

/// K - D.
DivisorClass serre_dual(const SurfaceModel& surface, const DivisorClass& d);

}  // namespace isocoh
