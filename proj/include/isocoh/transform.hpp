// The isoparametric transform: removal of the fixed part forced by negative
// curves that meet an effective class negatively, iterated until nef.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "isocoh/lattice.hpp"

namespace isocoh {

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/** The iteration cap was hit, or the fixed point was not nef. */
class NonAbutmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixedTerm {
  DivisorClass curve;
  Integer multiplicity = 0;
  friend bool operator==(const FixedTerm&, const FixedTerm&) = default;
};

/// Terms appear in the order of the surface's negative_curves list.
struct FixedPart {
  std::vector<FixedTerm> terms;
  bool empty() const { return terms.empty(); }
  DivisorClass total(std::size_t rank) const;
  friend bool operator==(const FixedPart&, const FixedPart&) = default;
};

struct TransformStep {
  FixedPart fixed_part;
  DivisorClass result;
  friend bool operator==(const TransformStep&, const TransformStep&) = default;
};

struct TransformTrace {
  DivisorClass input;
  std::vector<TransformStep> steps;
  DivisorClass limit;
  friend bool operator==(const TransformTrace&, const TransformTrace&) = default;
};

struct TransformOptions {
  std::size_t max_iterations = 1000;
};

/// d.g >= 0 for every Mori generator g.
bool is_nef(const SurfaceModel& surface, const DivisorClass& d);

/// Membership in the cone spanned by the effective generators.
bool is_effective(const SurfaceModel& surface, const DivisorClass& d);

/// Negative curves D_i with d.D_i < 0, in catalog order.
std::vector<DivisorClass> negatively_met_curves(const SurfaceModel& surface,
                                                const DivisorClass& d);

/// d - F with F = sum ceil((-D_i.d) / (-D_i^2)) D_i over the curves meeting
/// d negatively. Throws PreconditionError if d is not effective.
std::pair<DivisorClass, FixedPart> isoparametric_step(const SurfaceModel& surface,
                                                      const DivisorClass& d);

/// Same as isoparametric_step without the effectiveness check.
std::pair<DivisorClass, FixedPart> isoparametric_step_unchecked(const SurfaceModel& surface,
                                                                const DivisorClass& d);

/**
 * Applies the step until the fixed part is empty. The input must be
 * effective (PreconditionError otherwise). Throws NonAbutmentError if the
 * cap is exceeded or the final class fails is_nef, both of which indicate
 * inconsistent surface data.
 */
TransformTrace iterate_to_nef(const SurfaceModel& surface, const DivisorClass& d,
                              const TransformOptions& options = {});

/// Lines of the form "step k: - m × [curve] → [class]", then "limit: [..]".
std::string render_text(const TransformTrace& trace);
nlohmann::json to_json(const TransformTrace& trace);

}  // namespace isocoh
