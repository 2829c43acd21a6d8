#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "isocoh/catalog.hpp"
#include "isocoh/transform.hpp"
#include "support.hpp"

namespace isocoh {
namespace {

TEST(IsNef, Examples) {
  const auto f2 = make_hirzebruch(2);
  EXPECT_TRUE(is_nef(f2, {0, 1}));
  EXPECT_FALSE(is_nef(f2, {1, 0}));
  const auto dp3 = make_del_pezzo(3);
  EXPECT_TRUE(is_nef(dp3, -dp3.canonical_class()));
  for (const auto& c : dp3.negative_curves())
    EXPECT_EQ(intersect(dp3, -dp3.canonical_class(), c), 1);
}

TEST(IsEffective, Examples) {
  const auto dp1 = make_del_pezzo(1);
  EXPECT_TRUE(is_effective(dp1, {2, 1}));
  EXPECT_FALSE(is_effective(dp1, {1, -2}));
  for (const auto& s : testing::catalog_surfaces())
    EXPECT_TRUE(is_effective(s, DivisorClass::zero(s.rank()))) << s.name();
}

TEST(Step, Examples) {
  const auto dp1 = make_del_pezzo(1);
  auto [r1, f1] = isoparametric_step(dp1, {2, 1});
  EXPECT_EQ(r1, (DivisorClass{2, 0}));
  ASSERT_EQ(f1.terms.size(), 1u);
  EXPECT_EQ(f1.terms[0], (FixedTerm{{0, 1}, 1}));

  const auto f2 = make_hirzebruch(2);
  auto [r2, fp2] = isoparametric_step(f2, {1, 1});
  EXPECT_EQ(r2, (DivisorClass{0, 1}));
  ASSERT_EQ(fp2.terms.size(), 1u);
  EXPECT_EQ(fp2.terms[0], (FixedTerm{{1, 0}, 1}));
  EXPECT_EQ(fp2.total(2), (DivisorClass{1, 0}));
}

TEST(Step, NonEffectiveInputIsAPreconditionError) {
  const auto dp1 = make_del_pezzo(1);
  EXPECT_THROW(isoparametric_step(dp1, {1, -2}), PreconditionError);
  EXPECT_THROW(iterate_to_nef(dp1, {-1, 0}), PreconditionError);
}

TEST(Iterate, Examples) {
  const auto dp1 = make_del_pezzo(1);
  const auto t1 = iterate_to_nef(dp1, {2, 1});
  EXPECT_EQ(t1.limit, (DivisorClass{2, 0}));
  EXPECT_EQ(t1.steps.size(), 1u);

  const auto f2 = make_hirzebruch(2);
  const auto t2 = iterate_to_nef(f2, {1, 2});
  EXPECT_EQ(t2.limit, (DivisorClass{1, 2}));
  EXPECT_TRUE(t2.steps.empty());
}

TEST(Iterate, Gdp2FourStepTrace) {
  const auto s = testing::fixture("gdp2.json");
  const DivisorClass e1_e2{0, 1, -1}, e2{0, 0, 1};
  const auto t = iterate_to_nef(s, {2, 2, 0});
  ASSERT_EQ(t.steps.size(), 4u);
  const std::vector<DivisorClass> results = {{2, 1, 1}, {2, 1, 0}, {2, 0, 1}, {2, 0, 0}};
  const std::vector<DivisorClass> curves = {e1_e2, e2, e1_e2, e2};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(t.steps[i].result, results[i]) << i;
    ASSERT_EQ(t.steps[i].fixed_part.terms.size(), 1u) << i;
    EXPECT_EQ(t.steps[i].fixed_part.terms[0], (FixedTerm{curves[i], 1})) << i;
  }
  EXPECT_EQ(t.limit, (DivisorClass{2, 0, 0}));
}

TEST(Iterate, CapIsEnforced) {
  const auto s = testing::fixture("gdp2.json");
  EXPECT_THROW(iterate_to_nef(s, {2, 2, 0}, {.max_iterations = 3}), NonAbutmentError);
  EXPECT_NO_THROW(iterate_to_nef(s, {2, 2, 0}, {.max_iterations = 4}));
}

TEST(Iterate, RenderedTextAndJson) {
  const auto s = testing::fixture("gdp2.json");
  const auto t = iterate_to_nef(s, {2, 2, 0});
  const auto text = render_text(t);
  EXPECT_NE(text.find("step 1: - 1 × [0,1,-1] → [2,1,1]"), std::string::npos) << text;
  EXPECT_NE(text.find("limit: [2,0,0] (4 steps)"), std::string::npos) << text;
  const auto j = nlohmann::json::parse(to_json(t).dump());
  EXPECT_EQ(j["steps"].size(), 4u);
  EXPECT_EQ(j["limit"], nlohmann::json({2, 0, 0}));
  EXPECT_EQ(j["steps"][0]["fixed_part"][0]["multiplicity"], 1);
}

std::vector<SurfaceModel> surfaces_with_fixture() {
  auto all = testing::catalog_surfaces();
  all.push_back(testing::fixture("gdp2.json"));
  return all;
}

// Effective classes from a random sample, plus the whole box on small ranks.
std::vector<DivisorClass> effective_sample(const SurfaceModel& s, std::mt19937_64& rng) {
  std::vector<DivisorClass> out;
  if (s.rank() <= 3) {
    testing::for_each_in_box(s.rank(), -8, 8, [&](const DivisorClass& d) {
      if (is_effective(s, d)) out.push_back(d);
    });
  } else {
    for (int i = 0; i < 3000; ++i) {
      const auto d = testing::random_class(rng, s.rank(), -8, 8);
      if (is_effective(s, d)) out.push_back(d);
    }
  }
  return out;
}

TEST(Properties, NefClassesAreFixedPoints) {
  std::mt19937_64 rng(5);
  for (const auto& s : surfaces_with_fixture())
    for (int i = 0; i < 2000; ++i) {
      const auto d = testing::random_class(rng, s.rank(), -8, 8);
      if (!is_nef(s, d)) continue;
      const auto [r, fixed] = isoparametric_step_unchecked(s, d);
      ASSERT_EQ(r, d);
      ASSERT_TRUE(fixed.empty());
    }
}

TEST(Properties, AbutmentLemmaAndIntermediateEffectiveness) {
  std::mt19937_64 rng(13);
  for (const auto& s : surfaces_with_fixture()) {
    const bool del_pezzo = s.regime() == Regime::del_pezzo;
    // One step suffices when no negative curve has self-intersection below -1.
    const bool one_step = std::ranges::all_of(
        s.negative_curves(), [&](const DivisorClass& c) { return intersect(s, c, c) >= -1; });
    for (const auto& d : effective_sample(s, rng)) {
      const auto t = iterate_to_nef(s, d);
      ASSERT_TRUE(is_nef(s, t.limit)) << s.name() << " " << d.to_string();
      const auto [again, fixed] = isoparametric_step(s, t.limit);
      ASSERT_EQ(again, t.limit);
      ASSERT_TRUE(fixed.empty());
      for (const auto& step : t.steps) ASSERT_TRUE(is_effective(s, step.result)) << d.to_string();
      if (one_step) ASSERT_LE(t.steps.size(), 1u) << s.name() << " " << d.to_string();

      const auto met = negatively_met_curves(s, d);
      for (std::size_t i = 0; i < met.size(); ++i)
        for (std::size_t j = i + 1; j < met.size(); ++j) {
          const Integer bound =
              std::max(-intersect(s, met[i], met[i]), -intersect(s, met[j], met[j]));
          ASSERT_LT(intersect(s, met[i], met[j]), bound) << s.name() << " " << d.to_string();
          if (del_pezzo) ASSERT_EQ(intersect(s, met[i], met[j]), 0);
        }
      if (del_pezzo)
        for (const auto& c : met) ASSERT_EQ(intersect(s, c, c), -1);
    }
  }
}

TEST(Properties, TracesDependOnlyOnTheClass) {
  std::mt19937_64 rng(19);
  const auto s = testing::fixture("gdp2.json");
  for (const auto& d : effective_sample(s, rng)) {
    const DivisorClass copy(std::vector<Integer>(d.coefficients().begin(), d.coefficients().end()));
    ASSERT_EQ(iterate_to_nef(s, d), iterate_to_nef(s, copy));
  }
}

TEST(Properties, DelPezzoTransformCommutesWithPermutingPoints) {
  // Justifies sweeping one representative per permutation orbit.
  std::mt19937_64 rng(31);
  for (int k = 2; k <= 8; ++k) {
    const auto s = make_del_pezzo(k);
    for (int i = 0; i < 200; ++i) {
      const auto d = testing::random_class(rng, s.rank(), -6, 6);
      std::vector<std::size_t> perm(k);
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto permute = [&](const DivisorClass& c) {
        std::vector<Integer> v(c.rank());
        v[0] = c[0];
        for (int j = 0; j < k; ++j) v[perm[j]] = c[j + 1];
        return DivisorClass(v);
      };
      const bool eff = is_effective(s, d);
      ASSERT_EQ(eff, is_effective(s, permute(d))) << d.to_string();
      if (!eff) continue;
      ASSERT_EQ(permute(iterate_to_nef(s, d).limit), iterate_to_nef(s, permute(d)).limit);
    }
  }
}

}  // namespace
}  // namespace isocoh
