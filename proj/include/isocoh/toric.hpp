// Brute-force h0 for torus-invariant divisors on smooth complete toric
// surfaces: the number of lattice points in the section polytope. It never
// touches the transform or any vanishing theorem, so it serves as an
// independent oracle for the cohomology pipeline.
#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "isocoh/lattice.hpp"

namespace isocoh {

using Vector2 = std::array<Integer, 2>;

/// The half-plane <u, normal> >= -offset.
struct Halfplane {
  Vector2 normal;
  Integer offset = 0;
};

struct HalfplaneSet {
  std::vector<Halfplane> constraints;
};

/**
 * A smooth complete fan in Z^2 together with the map from ray divisors to
 * Picard classes of a paired SurfaceModel, and a fixed integral right
 * inverse of that map.
 */
class ToricSurface {
 public:
  /// `ray_classes[i]` is the Picard class of the divisor of `rays[i]`.
  /// Rays must be primitive, counterclockwise, with consecutive pairs
  /// forming unimodular cones that cover the plane.
  ToricSurface(std::vector<Vector2> rays, std::vector<DivisorClass> ray_classes);

  const std::vector<Vector2>& rays() const { return rays_; }
  std::size_t picard_rank() const { return picard_rank_; }

  /// Image of a ray-coefficient vector in the Picard lattice.
  DivisorClass class_of(const std::vector<Integer>& ray_coefficients) const;
  /// A ray-coefficient vector mapping back to d.
  std::vector<Integer> lift(const DivisorClass& d) const;

  /// -a_i where v_{i-1} + v_{i+1} = a_i v_i.
  std::vector<Integer> ray_self_intersections() const;

 private:
  std::vector<Vector2> rays_;
  std::size_t picard_rank_;
  std::vector<DivisorClass> ray_classes_;       // class_map, column by column
  std::vector<std::vector<Integer>> lift_map_;  // one ray vector per basis element
};

struct ToricModel {
  ToricSurface toric;
  SurfaceModel surface;
};

/// "f0".."f4" (any f<n>), "dp1", "dp2", "dp3"; case-insensitive.
ToricModel toric_model(std::string_view name);
bool has_toric_model(std::string_view name);

HalfplaneSet polytope_of_divisor(const ToricSurface& t, const DivisorClass& d);
HalfplaneSet polytope_of_ray_divisor(const ToricSurface& t,
                                     const std::vector<Integer>& ray_coefficients);

/// Throws std::domain_error if the constraints do not bound a polytope.
Integer count_lattice_points(const HalfplaneSet& p);

Integer oracle_h0(const ToricSurface& t, const DivisorClass& d);

}  // namespace isocoh
