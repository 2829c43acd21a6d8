// Rational polyhedral cones given by generators, with exact membership.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "isocoh/lattice.hpp"

namespace isocoh {

namespace detail {
struct MembershipMemo;
}

/**
 * Outcome of an exact membership query. Exactly one of the two certificates
 * is set: a non-negative rational combination of generators (as integer
 * numerators over a common positive denominator) or a separating functional
 * z with z.g >= 0 for every generator g and z.d < 0.
 *
 * Coordinates of the functional are plain dot products with the coefficient
 * vectors, not intersection numbers.
 */
struct MembershipCertificate {
  bool member = false;
  std::vector<Integer> multipliers;  // size = number of generators
  Integer denominator = 1;
  std::vector<Integer> separator;    // size = dimension
};

/**
 * A cone in V-representation. Membership is decided by an exact phase-one
 * simplex (Bland's rule, fraction-free revised form). The fast path works in
 * 128-bit integers and falls back to arbitrary precision on overflow.
 *
 * Each cone carries a small memo of recently useful bases and separating
 * functionals. The memo only short-circuits queries whose answer it can
 * certify exactly, so results never depend on query history. Access to it
 * is serialized with a mutex.
 */
class Cone {
 public:
  Cone(std::size_t dimension, std::vector<DivisorClass> generators);
  ~Cone();
  Cone(const Cone& other);
  Cone& operator=(const Cone& other);
  Cone(Cone&&) noexcept;
  Cone& operator=(Cone&&) noexcept;

  std::size_t dimension() const { return dimension_; }
  const std::vector<DivisorClass>& generators() const { return generators_; }

  bool contains(const DivisorClass& d) const;

  /// Solves the feasibility problem from scratch, bypassing the memo.
  MembershipCertificate certify(const DivisorClass& d) const;

 private:
  std::size_t dimension_;
  std::vector<DivisorClass> generators_;
  std::unique_ptr<detail::MembershipMemo> memo_;
};

bool cone_contains(const Cone& cone, const DivisorClass& d);

}  // namespace isocoh
