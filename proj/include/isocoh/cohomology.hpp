// Line bundle cohomology from the iterated transform and vanishing theorems.
#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "isocoh/lattice.hpp"
#include "isocoh/transform.hpp"

namespace isocoh {

/** h1 came out negative: the surface data contradicts itself. */
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CertificateStatus { certified, uncertified };
enum class VanishingRule { kawamata_viehweg, demazure, kodaira_region, none };

std::string_view to_string(CertificateStatus status);
std::string_view to_string(VanishingRule rule);

/** Why the higher cohomology of a nef class vanishes, if we know it does. */
struct VanishingCertificate {
  CertificateStatus status = CertificateStatus::uncertified;
  VanishingRule rule = VanishingRule::none;
  std::string detail;

  bool certified() const { return status == CertificateStatus::certified; }
  static VanishingCertificate make(VanishingRule rule, std::string detail);
};

/// Ample by Nakai-Moishezon against the Mori generators: d.g > 0 for every
/// generator and d^2 > 0.
bool is_ample(const SurfaceModel& surface, const DivisorClass& d);

/**
 * Decides whether h^i(d_nef) = 0 for i > 0 follows from a vanishing theorem:
 *  - toric_convex_fan: Demazure, always;
 *  - del_pezzo: Kawamata-Viehweg, always (-K is ample);
 *  - trivial_canonical: Kodaira, only when d_nef is ample;
 *  - general: Kawamata-Viehweg when d_nef - K is nef and big, else Kodaira
 *    when d_nef - K is ample, else uncertified.
 * Throws PreconditionError when d_nef is not nef.
 */
VanishingCertificate certify_vanishing(const SurfaceModel& surface, const DivisorClass& d_nef);

/** h0 of one class, as obtained by the transform-and-index route. */
struct ZerothCohomology {
  bool effective = false;
  std::optional<Integer> h0;  // unknown when the limit is uncertified
  VanishingCertificate certificate;
  std::optional<TransformTrace> trace;
};

ZerothCohomology zeroth_cohomology(const SurfaceModel& surface, const DivisorClass& d,
                                   const TransformOptions& options = {});

struct CohomologyResult {
  std::optional<Integer> h0;
  std::optional<Integer> h1;
  std::optional<Integer> h2;
  Integer chi = 0;
  VanishingCertificate certificate;       // for d itself
  std::optional<TransformTrace> trace;    // absent when d is not effective
  VanishingCertificate dual_certificate;  // for K - d, which yields h2
  std::optional<TransformTrace> dual_trace;
};

/**
 * h0 by the transform, h2 = h0(K - d) by the same route, h1 from the index.
 * Unknown values stay unknown; they are never replaced by chi.
 * Throws ConsistencyError if the computed h1 is negative.
 */
CohomologyResult cohomology(const SurfaceModel& surface, const DivisorClass& d,
                            const TransformOptions& options = {});

/// chi(d + sum (d.D_i) D_i) over (-1)-curves with d.D_i < 0.
Integer del_pezzo_h0(const SurfaceModel& surface, const DivisorClass& d);

/// chi(d - theta(-d.C0) ceil(-d.C0 / n) C0) on F_n, with theta(0) = 0.
Integer hirzebruch_h0(const SurfaceModel& surface, const DivisorClass& d);

std::string render_text(const CohomologyResult& result);
nlohmann::json to_json(const VanishingCertificate& certificate);
nlohmann::json to_json(const CohomologyResult& result);

}  // namespace isocoh
