#include <gtest/gtest.h>

#include <random>

#include "isocoh/catalog.hpp"
#include "isocoh/cohomology.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace isocoh {
namespace {

SurfaceModel k3() { return testing::fixture("k3_elliptic.json"); }

TEST(Certify, Examples) {
  const auto dp1 = make_del_pezzo(1);
  const auto c1 = certify_vanishing(dp1, {2, 0});
  EXPECT_TRUE(c1.certified());
  EXPECT_EQ(c1.rule, VanishingRule::kawamata_viehweg);

  const auto f2 = make_hirzebruch(2);
  const auto c2 = certify_vanishing(f2, {0, 1});
  EXPECT_TRUE(c2.certified());
  EXPECT_EQ(c2.rule, VanishingRule::demazure);

  const auto s = k3();
  const DivisorClass fibre{0, 1};
  ASSERT_TRUE(is_nef(s, fibre));
  ASSERT_EQ(intersect(s, fibre, fibre), 0);
  const auto c3 = certify_vanishing(s, fibre);
  EXPECT_FALSE(c3.certified());
  EXPECT_EQ(c3.rule, VanishingRule::none);
}

TEST(Certify, AmpleClassOnTrivialCanonicalSurface) {
  const auto s = k3();
  const DivisorClass d{1, 3};  // d.C = 1, d.f = 1, d^2 = 4
  ASSERT_TRUE(is_ample(s, d));
  const auto c = certify_vanishing(s, d);
  EXPECT_TRUE(c.certified());
  EXPECT_EQ(c.rule, VanishingRule::kodaira_region);
}

TEST(Certify, NonNefInputIsRejected) {
  EXPECT_THROW(certify_vanishing(make_hirzebruch(2), {1, 0}), PreconditionError);
}

TEST(Cohomology, Examples) {
  const auto r1 = cohomology(make_del_pezzo(1), {2, 1});
  EXPECT_EQ(r1.h0, 6);
  EXPECT_EQ(r1.h1, 0);
  EXPECT_EQ(r1.h2, 0);
  EXPECT_EQ(r1.chi, 6);

  const auto r2 = cohomology(make_hirzebruch(2), {1, 0});
  EXPECT_EQ(r2.h0, 1);
  EXPECT_EQ(r2.h1, 1);
  EXPECT_EQ(r2.h2, 0);
  EXPECT_EQ(r2.chi, 0);

  for (const auto& s : testing::catalog_surfaces()) {
    const auto r = cohomology(s, DivisorClass::zero(s.rank()));
    EXPECT_EQ(r.h0, 1) << s.name();
    EXPECT_EQ(r.h1, 0) << s.name();
    EXPECT_EQ(r.h2, 0) << s.name();
    EXPECT_EQ(r.chi, 1) << s.name();
  }
}

TEST(Cohomology, UncertifiedIsUnknownNotChi) {
  const auto r = cohomology(k3(), {0, 1});
  EXPECT_FALSE(r.h0.has_value());
  EXPECT_FALSE(r.h1.has_value());
  EXPECT_EQ(r.chi, 2);
  EXPECT_FALSE(r.certificate.certified());
  const auto j = nlohmann::json::parse(to_json(r).dump());
  EXPECT_TRUE(j["h0"].is_null());
  EXPECT_EQ(j["certificate"]["status"], "uncertified");
}

TEST(Cohomology, RenderedText) {
  const auto text = render_text(cohomology(make_del_pezzo(1), {2, 1}));
  EXPECT_EQ(text.rfind("h0=6 h1=0 h2=0 chi=6\ncertificate: certified kawamata_viehweg", 0), 0u)
      << text;
}

TEST(ClosedForms, DelPezzoExamples) {
  EXPECT_EQ(del_pezzo_h0(make_del_pezzo(2), {1, 1, 1}), 3);
  EXPECT_EQ(del_pezzo_h0(make_del_pezzo(1), {2, 1}), 6);
  const auto dp3 = make_del_pezzo(3);
  EXPECT_EQ(del_pezzo_h0(dp3, -dp3.canonical_class()), 7);
}

TEST(ClosedForms, HirzebruchExamples) {
  const auto f2 = make_hirzebruch(2);
  EXPECT_EQ(hirzebruch_h0(f2, {1, 1}), 2);
  EXPECT_EQ(hirzebruch_h0(f2, {1, 2}), 4);
  const auto f0 = make_hirzebruch(0);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      EXPECT_EQ(hirzebruch_h0(f0, {a, b}), testing::count_bidegree_monomials(a, b));
}

TEST(ClosedForms, WrongSurfaceOrClass) {
  EXPECT_THROW(del_pezzo_h0(make_hirzebruch(1), {1, 0}), std::invalid_argument);
  EXPECT_THROW(hirzebruch_h0(make_del_pezzo(1), {1, 0}), std::invalid_argument);
  EXPECT_THROW(del_pezzo_h0(make_del_pezzo(1), {-1, 0}), PreconditionError);
  EXPECT_THROW(hirzebruch_h0(make_hirzebruch(3), {0, -1}), PreconditionError);
}

TEST(ClosedForms, AgreeWithPipelineOnSmallBoxes) {
  for (const auto& s : testing::catalog_surfaces()) {
    if (s.rank() > 4) continue;  // larger ranks are swept by the acceptance suite
    const bool dp = s.regime() == Regime::del_pezzo;
    testing::for_each_in_box(s.rank(), -4, 4, [&](const DivisorClass& d) {
      if (!is_effective(s, d)) return;
      const auto h0 = cohomology(s, d).h0;
      ASSERT_TRUE(h0.has_value());
      ASSERT_EQ(*h0, dp ? del_pezzo_h0(s, d) : hirzebruch_h0(s, d)) << s.name() << d.to_string();
    });
  }
}

TEST(Properties, DualityIndexAndVanishing) {
  std::mt19937_64 rng(37);
  auto surfaces = testing::catalog_surfaces();
  surfaces.push_back(testing::fixture("gdp2.json"));
  for (const auto& s : surfaces)
    for (int i = 0; i < 300; ++i) {
      const auto d = testing::random_class(rng, s.rank(), -6, 6);
      const auto r = cohomology(s, d);
      const auto dual = cohomology(s, serre_dual(s, d));
      ASSERT_EQ(r.h2, dual.h0) << s.name() << d.to_string();
      ASSERT_EQ(r.h0, dual.h2) << s.name() << d.to_string();
      if (!is_effective(s, d)) ASSERT_EQ(r.h0, 0);
      if (r.h0 && r.h1 && r.h2) {
        ASSERT_GE(*r.h1, 0);
        ASSERT_EQ(*r.h0 - *r.h1 + *r.h2, r.chi);
      }
    }
}

TEST(Properties, EveryClassIsCertifiedOnRationalCatalogSurfaces) {
  std::mt19937_64 rng(41);
  for (const auto& s : testing::catalog_surfaces())
    for (int i = 0; i < 300; ++i) {
      const auto d = testing::random_class(rng, s.rank(), -6, 6);
      const auto r = cohomology(s, d);
      ASSERT_TRUE(r.h0 && r.h1 && r.h2) << s.name() << d.to_string();
    }
}

TEST(Properties, InconsistentDataIsReportedNotHidden) {
  // With chi(O) = 3, -C0 has chi = 2 while neither it nor K + C0 is effective.
  auto spec = spec_of(make_hirzebruch(2));
  spec.chi_structure_sheaf = 3;
  const auto broken = load_surface(spec);
  EXPECT_THROW(cohomology(broken, {-1, 0}), ConsistencyError);
}

}  // namespace
}  // namespace isocoh
