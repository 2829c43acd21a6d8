#include "isocoh/transform.hpp"

#include "isocoh/cone.hpp"

namespace isocoh {

DivisorClass FixedPart::total(std::size_t rank) const {
  DivisorClass sum = DivisorClass::zero(rank);
  for (const auto& t : terms) sum += t.multiplicity * t.curve;
  return sum;
}

bool is_nef(const SurfaceModel& surface, const DivisorClass& d) {
  surface.require_rank(d);
  for (const auto& g : surface.mori_generators())
    if (intersect(surface, d, g) < 0) return false;
  return true;
}

bool is_effective(const SurfaceModel& surface, const DivisorClass& d) {
  surface.require_rank(d);
  return surface.effective_cone().contains(d);
}

std::vector<DivisorClass> negatively_met_curves(const SurfaceModel& surface,
                                                const DivisorClass& d) {
  surface.require_rank(d);
  std::vector<DivisorClass> out;
  for (const auto& c : surface.negative_curves())
    if (intersect(surface, d, c) < 0) out.push_back(c);
  return out;
}

std::pair<DivisorClass, FixedPart> isoparametric_step_unchecked(const SurfaceModel& surface,
                                                                const DivisorClass& d) {
  surface.require_rank(d);
  FixedPart fixed;
  for (const auto& c : surface.negative_curves()) {
    const Integer product = intersect(surface, d, c);
    if (product >= 0) continue;
    const Integer self = intersect(surface, c, c);
    fixed.terms.push_back({c, checked::ceil_div(checked::neg(product), checked::neg(self))});
  }
  DivisorClass result = d;
  for (const auto& t : fixed.terms) result -= t.multiplicity * t.curve;
  return {std::move(result), std::move(fixed)};
}

std::pair<DivisorClass, FixedPart> isoparametric_step(const SurfaceModel& surface,
                                                      const DivisorClass& d) {
  if (!is_effective(surface, d))
    throw PreconditionError("isoparametric transform is undefined on the non-effective class " +
                            d.to_string());
  return isoparametric_step_unchecked(surface, d);
}

TransformTrace iterate_to_nef(const SurfaceModel& surface, const DivisorClass& d,
                              const TransformOptions& options) {
  if (!is_effective(surface, d))
    throw PreconditionError("cannot iterate the transform on the non-effective class " +
                            d.to_string());
  TransformTrace trace{d, {}, d};
  while (true) {
    auto [next, fixed] = isoparametric_step_unchecked(surface, trace.limit);
    if (fixed.empty()) break;
    if (trace.steps.size() >= options.max_iterations)
      throw NonAbutmentError("isoparametric transform of " + d.to_string() + " did not abut within " +
                             std::to_string(options.max_iterations) + " iterations");
    trace.limit = next;
    trace.steps.push_back({std::move(fixed), std::move(next)});
  }
  if (!is_nef(surface, trace.limit))
    throw NonAbutmentError("transform of " + d.to_string() + " stopped at " +
                           trace.limit.to_string() +
                           ", which is not nef; the negative curve list is incomplete");
  return trace;
}

std::string render_text(const TransformTrace& trace) {
  std::string out = "input: " + trace.input.to_string() + "\n";
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    out += "step " + std::to_string(k + 1) + ":";
    for (const auto& t : trace.steps[k].fixed_part.terms)
      out += " - " + std::to_string(t.multiplicity) + " × " + t.curve.to_string();
    out += " → " + trace.steps[k].result.to_string() + "\n";
  }
  out += "limit: " + trace.limit.to_string() + " (" + std::to_string(trace.steps.size()) +
         (trace.steps.size() == 1 ? " step" : " steps") + ")\n";
  return out;
}

nlohmann::json to_json(const TransformTrace& trace) {
  auto vec = [](const DivisorClass& d) {
    return std::vector<Integer>(d.coefficients().begin(), d.coefficients().end());
  };
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    nlohmann::json fixed = nlohmann::json::array();
    for (const auto& t : trace.steps[k].fixed_part.terms)
      fixed.push_back({{"curve", vec(t.curve)}, {"multiplicity", t.multiplicity}});
    steps.push_back({{"step", k + 1}, {"fixed_part", fixed}, {"result", vec(trace.steps[k].result)}});
  }
  return {{"input", vec(trace.input)}, {"steps", steps}, {"limit", vec(trace.limit)}};
}

}  // namespace isocoh
