#include "isocoh/toric.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "isocoh/catalog.hpp"

namespace isocoh {

namespace {

using Wide = __int128;

Integer det2(const Vector2& a, const Vector2& b) {
  return checked::sub(checked::mul(a[0], b[1]), checked::mul(a[1], b[0]));
}

Integer dot2(const Vector2& a, const Vector2& b) {
  return checked::add(checked::mul(a[0], b[0]), checked::mul(a[1], b[1]));
}

// Smallest-support integral solution with entries in {-1, 0, 1}.
std::optional<std::vector<Integer>> small_preimage(const std::vector<DivisorClass>& columns,
                                                   const DivisorClass& target) {
  const std::size_t n = columns.size();
  std::optional<std::vector<Integer>> best;
  std::size_t best_support = n + 1;
  std::vector<Integer> x(n, -1);
  while (true) {
    const auto support = static_cast<std::size_t>(
        std::count_if(x.begin(), x.end(), [](Integer v) { return v != 0; }));
    if (support < best_support) {
      DivisorClass image = DivisorClass::zero(target.rank());
      for (std::size_t i = 0; i < n; ++i)
        if (x[i] != 0) image += x[i] * columns[i];
      if (image == target) {
        best = x;
        best_support = support;
      }
    }
    std::size_t pos = 0;
    while (pos < n && x[pos] == 1) x[pos++] = -1;
    if (pos == n) break;
    ++x[pos];
  }
  return best;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

ToricSurface::ToricSurface(std::vector<Vector2> rays, std::vector<DivisorClass> ray_classes)
    : rays_(std::move(rays)), ray_classes_(std::move(ray_classes)) {
  const std::size_t n = rays_.size();
  if (n < 3) throw std::invalid_argument("a complete fan needs at least three rays");
  if (ray_classes_.size() != n)
    throw std::invalid_argument("one Picard class is required per ray");
  picard_rank_ = ray_classes_.front().rank();
  for (const auto& c : ray_classes_)
    if (c.rank() != picard_rank_) throw RankMismatchError(picard_rank_, c.rank());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = rays_[i];
    if (std::gcd(v[0], v[1]) != 1)
      throw std::invalid_argument("ray " + std::to_string(i) + " is not primitive");
    // Unimodular consecutive cones, counterclockwise, wrapping once around.
    if (det2(v, rays_[(i + 1) % n]) != 1)
      throw std::invalid_argument("rays " + std::to_string(i) + " and " +
                                  std::to_string((i + 1) % n) + " do not span a smooth cone");
  }
  // Each cone turns counterclockwise by less than pi, so the fan winds once
  // iff exactly one cone passes from the lower to the upper half-plane.
  int crossings = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (rays_[i][1] < 0 && rays_[(i + 1) % n][1] >= 0) ++crossings;
  if (crossings != 1) throw std::invalid_argument("rays do not wind once around the origin");

  for (std::size_t j = 0; j < picard_rank_; ++j) {
    auto x = small_preimage(ray_classes_, DivisorClass::unit(picard_rank_, j));
    if (!x)
      throw std::invalid_argument("ray classes do not span basis element " + std::to_string(j));
    lift_map_.push_back(std::move(*x));
  }
}

DivisorClass ToricSurface::class_of(const std::vector<Integer>& ray_coefficients) const {
  if (ray_coefficients.size() != rays_.size())
    throw RankMismatchError(rays_.size(), ray_coefficients.size());
  DivisorClass d = DivisorClass::zero(picard_rank_);
  for (std::size_t i = 0; i < rays_.size(); ++i) d += ray_coefficients[i] * ray_classes_[i];
  return d;
}

std::vector<Integer> ToricSurface::lift(const DivisorClass& d) const {
  if (d.rank() != picard_rank_) throw RankMismatchError(picard_rank_, d.rank());
  std::vector<Integer> c(rays_.size(), 0);
  for (std::size_t j = 0; j < picard_rank_; ++j)
    for (std::size_t i = 0; i < rays_.size(); ++i)
      c[i] = checked::add(c[i], checked::mul(d[j], lift_map_[j][i]));
  return c;
}

std::vector<Integer> ToricSurface::ray_self_intersections() const {
  const std::size_t n = rays_.size();
  std::vector<Integer> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& prev = rays_[(i + n - 1) % n];
    const auto& next = rays_[(i + 1) % n];
    const Vector2 sum{checked::add(prev[0], next[0]), checked::add(prev[1], next[1])};
    // sum = a v_i; a = det(prev, sum) / det(prev, v_i) with det(prev, v_i) = 1.
    out.push_back(checked::neg(det2(prev, sum)));
  }
  return out;
}

namespace {

struct ToricEntry {
  std::vector<Vector2> rays;
  std::vector<DivisorClass> classes;
  SurfaceModel surface;
};

ToricEntry toric_entry(const std::string& name) {
  if (name.rfind("f", 0) == 0 && is_catalog_name(name)) {
    SurfaceModel s = catalog_surface(name);
    const Integer n = -s.form().at(0, 0);
    return {{{1, 0}, {0, 1}, {-1, n}, {0, -1}},
            {DivisorClass{0, 1}, DivisorClass{1, 0}, DivisorClass{0, 1}, DivisorClass{1, n}},
            std::move(s)};
  }
  if (name == "dp1")
    return {{{1, 0}, {1, 1}, {0, 1}, {-1, -1}},
            {DivisorClass{1, -1}, DivisorClass{0, 1}, DivisorClass{1, -1}, DivisorClass{1, 0}},
            make_del_pezzo(1)};
  if (name == "dp2")
    return {{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}},
            {DivisorClass{1, -1, 0}, DivisorClass{0, 1, 0}, DivisorClass{1, -1, -1},
             DivisorClass{0, 0, 1}, DivisorClass{1, 0, -1}},
            make_del_pezzo(2)};
  if (name == "dp3")
    return {{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
            {DivisorClass{1, -1, 0, -1}, DivisorClass{0, 1, 0, 0}, DivisorClass{1, -1, -1, 0},
             DivisorClass{0, 0, 1, 0}, DivisorClass{1, 0, -1, -1}, DivisorClass{0, 0, 0, 1}},
            make_del_pezzo(3)};
  throw std::invalid_argument("no toric model named '" + name +
                              "'; valid names: f0..f4 (any f<n>), dp1, dp2, dp3");
}

}  // namespace

bool has_toric_model(std::string_view name) {
  const std::string n = lowercase(name);
  return (n.rfind("f", 0) == 0 && is_catalog_name(n)) || n == "dp1" || n == "dp2" || n == "dp3";
}

ToricModel toric_model(std::string_view name) {
  ToricEntry e = toric_entry(lowercase(name));
  ToricSurface t(e.rays, e.classes);
  const SurfaceModel& s = e.surface;

  // The identification of ray divisors with Picard classes must respect the
  // linear relations, the canonical class and the self-intersections.
  for (const Vector2 m : {Vector2{1, 0}, Vector2{0, 1}}) {
    std::vector<Integer> relation;
    for (const auto& v : t.rays()) relation.push_back(dot2(m, v));
    if (!t.class_of(relation).is_zero())
      throw std::logic_error("ray classes of " + s.name() + " violate a linear relation");
  }
  if (t.class_of(std::vector<Integer>(t.rays().size(), -1)) != s.canonical_class())
    throw std::logic_error("ray classes of " + s.name() + " do not sum to -K");
  const auto self = t.ray_self_intersections();
  for (std::size_t i = 0; i < e.classes.size(); ++i)
    if (intersect(s, e.classes[i], e.classes[i]) != self[i])
      throw std::logic_error("self-intersection of ray " + std::to_string(i) + " on " + s.name() +
                             " disagrees with the fan");
  return {std::move(t), std::move(e.surface)};
}

HalfplaneSet polytope_of_ray_divisor(const ToricSurface& t,
                                     const std::vector<Integer>& ray_coefficients) {
  if (ray_coefficients.size() != t.rays().size())
    throw RankMismatchError(t.rays().size(), ray_coefficients.size());
  HalfplaneSet p;
  for (std::size_t i = 0; i < t.rays().size(); ++i)
    p.constraints.push_back({t.rays()[i], ray_coefficients[i]});
  return p;
}

HalfplaneSet polytope_of_divisor(const ToricSurface& t, const DivisorClass& d) {
  return polytope_of_ray_divisor(t, t.lift(d));
}

namespace {

Wide floor_div(Wide a, Wide b) {
  if (b < 0) a = -a, b = -b;
  Wide q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

}  // namespace

Integer count_lattice_points(const HalfplaneSet& p) {
  const auto& cs = p.constraints;
  for (const auto& c : cs)
    if (c.normal[0] == 0 && c.normal[1] == 0)
      throw std::invalid_argument("half-plane with zero normal");

  // Bounded iff no nonzero direction u has <u, n> >= 0 for all normals; the
  // extreme directions of that cone are perpendicular to some normal.
  auto is_recession = [&](const Vector2& u) {
    for (const auto& c : cs)
      if (dot2(u, c.normal) < 0) return false;
    return true;
  };
  if (cs.empty()) throw std::domain_error("no constraints: the feasible set is the whole plane");
  for (const auto& c : cs) {
    const Vector2 perp{-c.normal[1], c.normal[0]};
    if (is_recession(perp) || is_recession({-perp[0], -perp[1]}))
      throw std::domain_error("half-planes do not bound a polytope (incomplete fan)");
  }

  // Vertices are feasible intersections of two boundary lines; coordinates are
  // kept as exact fractions (x_num / den, y_num / den).
  bool any = false;
  Wide xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const auto& a = cs[i];
      const auto& b = cs[j];
      const Wide den = static_cast<Wide>(a.normal[0]) * b.normal[1] -
                       static_cast<Wide>(a.normal[1]) * b.normal[0];
      if (den == 0) continue;
      const Wide xn = -static_cast<Wide>(a.offset) * b.normal[1] +
                      static_cast<Wide>(b.offset) * a.normal[1];
      const Wide yn = -static_cast<Wide>(b.offset) * a.normal[0] +
                      static_cast<Wide>(a.offset) * b.normal[0];
      bool feasible = true;
      for (const auto& c : cs) {
        Wide lhs = xn * c.normal[0] + yn * c.normal[1] + static_cast<Wide>(c.offset) * den;
        if (den < 0) lhs = -lhs;
        if (lhs < 0) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      const Wide x_lo = ceil_div(xn, den), x_hi = floor_div(xn, den);
      const Wide y_lo = ceil_div(yn, den), y_hi = floor_div(yn, den);
      if (!any) {
        xmin = x_lo, xmax = x_hi, ymin = y_lo, ymax = y_hi;
        any = true;
      } else {
        xmin = std::min(xmin, x_lo), xmax = std::max(xmax, x_hi);
        ymin = std::min(ymin, y_lo), ymax = std::max(ymax, y_hi);
      }
    }
  }
  if (!any) return 0;

  constexpr Wide kMaxCandidates = Wide(1) << 32;
  if ((xmax - xmin + 1) * (ymax - ymin + 1) > kMaxCandidates)
    throw std::domain_error("polytope too large for a bounding-box scan");

  Integer count = 0;
  for (Wide x = xmin; x <= xmax; ++x) {
    for (Wide y = ymin; y <= ymax; ++y) {
      bool inside = true;
      for (const auto& c : cs)
        if (x * c.normal[0] + y * c.normal[1] + c.offset < 0) {
          inside = false;
          break;
        }
      if (inside) ++count;
    }
  }
  return count;
}

Integer oracle_h0(const ToricSurface& t, const DivisorClass& d) {
  return count_lattice_points(polytope_of_divisor(t, d));
}

}  // namespace isocoh
