#include "isocoh/cohomology.hpp"

namespace isocoh {

std::string_view to_string(CertificateStatus status) {
  return status == CertificateStatus::certified ? "certified" : "uncertified";
}

std::string_view to_string(VanishingRule rule) {
  switch (rule) {
    case VanishingRule::kawamata_viehweg: return "kawamata_viehweg";
    case VanishingRule::demazure: return "demazure";
    case VanishingRule::kodaira_region: return "kodaira_region";
    case VanishingRule::none: return "none";
  }
  return "none";
}

VanishingCertificate VanishingCertificate::make(VanishingRule rule, std::string detail) {
  return {rule == VanishingRule::none ? CertificateStatus::uncertified
                                      : CertificateStatus::certified,
          rule, std::move(detail)};
}

bool is_ample(const SurfaceModel& surface, const DivisorClass& d) {
  surface.require_rank(d);
  for (const auto& g : surface.mori_generators())
    if (intersect(surface, d, g) <= 0) return false;
  return intersect(surface, d, d) > 0;
}

VanishingCertificate certify_vanishing(const SurfaceModel& surface, const DivisorClass& d_nef) {
  if (!is_nef(surface, d_nef))
    throw PreconditionError("vanishing certification needs a nef class, got " + d_nef.to_string());
  using R = VanishingRule;
  switch (surface.regime()) {
    case Regime::toric_convex_fan:
      return VanishingCertificate::make(
          R::demazure, "nef class on a complete toric surface (fan with convex support)");
    case Regime::del_pezzo:
      return VanishingCertificate::make(
          R::kawamata_viehweg, "del Pezzo surface: D - K is nef and big since -K is ample");
    case Regime::trivial_canonical:
      if (is_ample(surface, d_nef))
        return VanishingCertificate::make(R::kodaira_region,
                                          "K = 0 and D is ample (Nakai-Moishezon)");
      return VanishingCertificate::make(
          R::none, "K = 0 and D lies on the boundary of the nef cone (D.C = 0 for some curve or D^2 = 0)");
    case Regime::general:
      break;
  }
  const DivisorClass shifted = d_nef - surface.canonical_class();
  const Integer square = intersect(surface, shifted, shifted);
  if (is_nef(surface, shifted) && square > 0)
    return VanishingCertificate::make(
        R::kawamata_viehweg, "D - K is nef and big, (D - K)^2 = " + std::to_string(square));
  if (is_ample(surface, shifted))
    return VanishingCertificate::make(R::kodaira_region, "D - K is ample");
  return VanishingCertificate::make(
      R::none, "D - K is not nef and big (self-intersection " + std::to_string(square) + ")");
}

ZerothCohomology zeroth_cohomology(const SurfaceModel& surface, const DivisorClass& d,
                                   const TransformOptions& options) {
  surface.require_rank(d);
  ZerothCohomology out;
  if (!is_effective(surface, d)) {
    out.h0 = 0;
    out.certificate =
        VanishingCertificate::make(VanishingRule::none, "class is not effective, so h0 = 0");
    return out;
  }
  out.effective = true;
  out.trace = iterate_to_nef(surface, d, options);
  out.certificate = certify_vanishing(surface, out.trace->limit);
  if (out.certificate.certified()) out.h0 = euler_characteristic(surface, out.trace->limit);
  return out;
}

CohomologyResult cohomology(const SurfaceModel& surface, const DivisorClass& d,
                            const TransformOptions& options) {
  CohomologyResult result;
  result.chi = euler_characteristic(surface, d);
  auto main = zeroth_cohomology(surface, d, options);
  auto dual = zeroth_cohomology(surface, serre_dual(surface, d), options);
  result.h0 = main.h0;
  result.h2 = dual.h0;
  result.certificate = std::move(main.certificate);
  result.trace = std::move(main.trace);
  result.dual_certificate = std::move(dual.certificate);
  result.dual_trace = std::move(dual.trace);
  if (result.h0 && result.h2) {
    const Integer h1 = checked::sub(checked::add(*result.h0, *result.h2), result.chi);
    if (h1 < 0)
      throw ConsistencyError("negative h1 = " + std::to_string(h1) + " for " + d.to_string() +
                             " on " + surface.name() + " (h0 = " + std::to_string(*result.h0) +
                             ", h2 = " + std::to_string(*result.h2) +
                             ", chi = " + std::to_string(result.chi) + ")");
    result.h1 = h1;
  }
  return result;
}

Integer del_pezzo_h0(const SurfaceModel& surface, const DivisorClass& d) {
  if (surface.regime() != Regime::del_pezzo)
    throw std::invalid_argument("del_pezzo_h0 needs a del Pezzo surface, got " + surface.name());
  if (!is_effective(surface, d))
    throw PreconditionError("del_pezzo_h0 needs an effective class, got " + d.to_string());
  DivisorClass shifted = d;
  for (const auto& c : surface.negative_curves()) {
    const Integer product = intersect(surface, d, c);
    if (product < 0) shifted += product * c;
  }
  return euler_characteristic(surface, shifted);
}

Integer hirzebruch_h0(const SurfaceModel& surface, const DivisorClass& d) {
  const auto& form = surface.form();
  const bool shaped = surface.regime() == Regime::toric_convex_fan && surface.rank() == 2 &&
                      form.at(0, 0) <= 0 && form.at(0, 1) == 1 && form.at(1, 1) == 0;
  const Integer n = shaped ? -form.at(0, 0) : 0;
  if (!shaped || surface.canonical_class() != DivisorClass{-2, -(n + 2)})
    throw std::invalid_argument("hirzebruch_h0 needs a Hirzebruch surface in the (C0, f) basis, got " +
                                surface.name());
  if (!is_effective(surface, d))
    throw PreconditionError("hirzebruch_h0 needs an effective class, got " + d.to_string());
  if (n == 0) return euler_characteristic(surface, d);
  const DivisorClass c0{1, 0};
  const Integer product = intersect(surface, d, c0);
  const Integer heaviside = product < 0 ? 1 : 0;
  const Integer multiplicity = heaviside * checked::ceil_div(heaviside * -product, n);
  return euler_characteristic(surface, d - multiplicity * c0);
}

namespace {

std::string show(const std::optional<Integer>& v) { return v ? std::to_string(*v) : "?"; }

nlohmann::json maybe(const std::optional<Integer>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string render_text(const CohomologyResult& r) {
  std::string out = "h0=" + show(r.h0) + " h1=" + show(r.h1) + " h2=" + show(r.h2) +
                    " chi=" + std::to_string(r.chi) + "\n";
  out += "certificate: " + std::string(to_string(r.certificate.status)) + " " +
         std::string(to_string(r.certificate.rule)) + " (" + r.certificate.detail + ")\n";
  out += "serre dual certificate: " + std::string(to_string(r.dual_certificate.status)) + " " +
         std::string(to_string(r.dual_certificate.rule)) + " (" + r.dual_certificate.detail + ")\n";
  if (r.trace) out += render_text(*r.trace);
  return out;
}

nlohmann::json to_json(const VanishingCertificate& c) {
  return {{"status", to_string(c.status)}, {"rule", to_string(c.rule)}, {"detail", c.detail}};
}

nlohmann::json to_json(const CohomologyResult& r) {
  return {
      {"h0", maybe(r.h0)},
      {"h1", maybe(r.h1)},
      {"h2", maybe(r.h2)},
      {"chi", r.chi},
      {"certificate", to_json(r.certificate)},
      {"trace", r.trace ? to_json(*r.trace) : nlohmann::json(nullptr)},
      {"serre_dual",
       {{"certificate", to_json(r.dual_certificate)},
        {"trace", r.dual_trace ? to_json(*r.dual_trace) : nlohmann::json(nullptr)}}},
  };
}

}  // namespace isocoh
