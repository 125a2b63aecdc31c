#include <gtest/gtest.h>

#include "support.hpp"

namespace fgpd {
namespace {

GroupoidPtr named(const std::string& name) { return share(named_groupoid(name)); }

HSPtr identity_hs(const std::string& name) {
  return share(hs_from_groupoid_morphism(identity_morphism(named(name))));
}

OracleBounds roomy() {
  OracleBounds b;
  b.max_total = 24;
  return b;
}

GeneratorSpec hs_spec(std::uint64_t seed) {
  auto s = testing::small_spec(seed, 8);
  s.max_objects = 2;
  s.max_group_order = 4;
  return s;
}

TEST(FromMorphism, IdentitiesValidate) {
  for (auto const& name : fixture_names()) {
    auto const h = identity_hs(name);
    auto const report = validate_hs(*h);
    EXPECT_TRUE(report.ok()) << name << "\n" << report.to_string();
    EXPECT_TRUE(verify_hs_division_properties(*h).ok()) << name;
  }
}

TEST(FromMorphism, BundleIsPullbackOfUnitBundle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    GeneratorSpec spec = hs_spec(seed);
    auto const g = share(random_groupoid(rng, spec));
    auto const h = share(random_groupoid(rng, spec));
    auto const m = random_groupoid_morphism(rng, g, h);
    ASSERT_TRUE(validate_morphism(m).ok());
    auto const hs = hs_from_groupoid_morphism(m);
    EXPECT_TRUE(validate_hs(hs).ok());
    auto const pulled = pullback_bundle(unit_bundle(h), g->objects, m.object_map);
    EXPECT_TRUE(validate_bundle(pulled).ok());
    EXPECT_EQ(hs.bundle->size(), pulled.size());
    EXPECT_EQ(hs.bundle->base, pulled.base);
    // Same fibre sizes over every object of g.
    for (Index x = 0; x < static_cast<Index>(g->object_count()); ++x) {
      auto count = [x](const PrincipalBundle& b) {
        return std::count(b.projection.begin(), b.projection.end(), x);
      };
      EXPECT_EQ(count(*hs.bundle), count(pulled));
    }
  }
}

TEST(FromMorphism, ConstantMorphismFromPair2ToZ2) {
  auto const g = named("pair2");
  auto const h = named("z2");
  auto const hs = hs_from_groupoid_morphism(constant_morphism(g, h, 0));
  EXPECT_TRUE(validate_hs(hs).ok());
  EXPECT_EQ(hs.bundle->size(), 4u);
  // Every arrow of Pair(2) moves (x, h) to (t(g), h).
  for (Index a = 0; a < 4; ++a) {
    for (Index p = 0; p < 4; ++p) {
      auto const q = hs.apply_left(a, p);
      if (g->source[a] != hs.bundle->projection[p]) {
        EXPECT_EQ(q, kNone);
        continue;
      }
      EXPECT_EQ(hs.bundle->projection[q], g->target[a]);
      EXPECT_EQ(hs.bundle->momentum[q], hs.bundle->momentum[p]);
    }
  }
}

TEST(Validate, CompatibilityMutationIsCaught) {
  // g.p = p g^-1 is a left action on U(S3), but it does not commute with
  // right translation because S3 is not abelian.
  auto h = *identity_hs("s3");
  auto const& G = *h.left;
  auto const n = h.bundle->size();
  for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
    for (Index p = 0; p < static_cast<Index>(n); ++p) {
      h.left_act[g * n + p] = h.bundle->apply(p, G.inverse[g]);
    }
  }
  ASSERT_TRUE(validate_action(left_action(h)).ok());
  auto const report = validate_hs(h);
  EXPECT_TRUE(report.has("hs.compatibility")) << report.to_string();
}

TEST(Validate, TableSizeAndBase) {
  auto h = *identity_hs("pair2");
  h.left_act.pop_back();
  EXPECT_TRUE(validate_hs(h).has("hs.table-size"));
  auto other = *identity_hs("pair2");
  other.left = named("pair3");
  EXPECT_FALSE(validate_hs(other).ok());
}

TEST(Constructions, ProductAndFibredProduct) {
  auto const z2 = identity_hs("z2");
  auto const pair = identity_hs("pair2");
  auto const prod = hs_product(*z2, *pair);
  EXPECT_TRUE(validate_hs(prod).ok());
  EXPECT_EQ(prod.bundle->size(), z2->bundle->size() * pair->bundle->size());
  auto const fib = hs_fibred_product(*z2, *z2);
  EXPECT_TRUE(validate_hs(fib).ok());
  EXPECT_EQ(fib.bundle->size(), 4u);
  EXPECT_TRUE(verify_hs_division_properties(fib).ok());
}

TEST(Constructions, RandomProductsValidate) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto const inst = random_hs_pair(hs_spec(seed));
    if (inst.first->bundle->size() * inst.second->bundle->size() > 64) continue;
    EXPECT_TRUE(validate_hs(hs_fibred_product(*inst.first, *inst.second)).ok()) << seed;
  }
}

TEST(Division, InvarianceAndNegativeControl) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto const inst = random_hs_pair(hs_spec(seed));
    EXPECT_TRUE(verify_hs_division_properties(*inst.first).ok()) << seed;
    EXPECT_TRUE(verify_hs_division_properties(*inst.second).ok()) << seed;
  }
  // Make a left-translation act trivially on one fibre.
  auto h = *identity_hs("s3");
  auto const n = h.bundle->size();
  auto const r = h.left->find_arrow("r");
  for (Index p = 0; p < static_cast<Index>(n); ++p) h.left_act[r * n + p] = p;
  h.left_act[r * n + 0] = 1;
  h.left_act[r * n + 1] = 0;
  auto const report = verify_hs_division_properties(h);
  EXPECT_TRUE(report.has("hs-division.invariance")) << report.to_string();
}

TEST(Morphisms, IdentityAndNegativeControl) {
  auto const h = identity_hs("s3");
  HSMorphismMap id{h, h, identity_morphism(h->bundle).map};
  EXPECT_TRUE(validate_hs_morphism(id).ok());
  // Left translation by r is a bundle automorphism of U(S3) but does not
  // commute with the left action since r is not central.
  auto const r = h->left->find_arrow("r");
  std::vector<Index> map(6);
  for (Index p = 0; p < 6; ++p) map[p] = h->apply_left(r, p);
  HSMorphismMap sigma{h, h, map};
  ASSERT_TRUE(validate_bundle_morphism(sigma.underlying()).ok());
  EXPECT_TRUE(validate_hs_morphism(sigma).has("hs-morphism.left-equivariance"));
  EXPECT_THROW(hs_morphism_to_ggt(sigma), IntegrityError);
}

TEST(Morphisms, MismatchedLeftGroupoids) {
  auto const a = identity_hs("z2");
  auto const b = share(hs_from_groupoid_morphism(constant_morphism(named("pair2"), named("z2"), 0)));
  HSMorphismMap sigma{a, b, {0, 1}};
  EXPECT_FALSE(validate_hs_morphism(sigma).ok());
}

TEST(Correspondence, CountsAndRoundTrips) {
  int nonempty = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto const inst = random_hs_pair(hs_spec(seed));
    auto const ms = enumerate_hs_morphisms(inst.first, inst.second, roomy());
    auto const ks = enumerate_hs_ggts(inst.first, inst.second, roomy());
    ASSERT_EQ(ms.size(), ks.size()) << "seed " << seed;
    nonempty += !ms.empty();
    std::set<std::vector<Index>> image, listed;
    for (auto const& k : ks) {
      listed.insert(k.ggt.values);
      EXPECT_TRUE(validate_hs_ggt(k).ok());
      EXPECT_EQ(hs_morphism_to_ggt(hs_ggt_to_morphism(k)), k);
    }
    for (auto const& m : ms) {
      EXPECT_TRUE(validate_hs_morphism(m).ok());
      auto const k = hs_morphism_to_ggt(m);
      image.insert(k.ggt.values);
      EXPECT_EQ(hs_ggt_to_morphism(k), m);
    }
    EXPECT_EQ(image, listed) << "seed " << seed;
  }
  EXPECT_GT(nonempty, 0);
}

TEST(Correspondence, HSMorphismsAreBundleMorphismsThatCommute) {
  for (std::uint64_t seed = 40; seed < 55; ++seed) {
    auto const inst = random_hs_pair(hs_spec(seed));
    auto const all = enumerate_bundle_morphisms(inst.first->bundle, inst.second->bundle, roomy());
    std::size_t commuting = 0;
    for (auto const& m : all) {
      HSMorphismMap sigma{inst.first, inst.second, m.map};
      commuting += check_left_equivariance(sigma).ok();
    }
    EXPECT_EQ(commuting, enumerate_hs_morphisms(inst.first, inst.second, roomy()).size());
  }
}

TEST(GaugeGroup, IdentityHSOnGroups) {
  EXPECT_EQ(hs_gauge_group(identity_hs("z2")).order(), 2u);
  // Left-invariant gauge transformations of U(G) form the centre of G.
  auto const s3 = hs_gauge_group(identity_hs("s3"));
  EXPECT_EQ(s3.order(), 1u);
  EXPECT_TRUE(validate_groupoid(s3.as_groupoid()).ok());
}

TEST(GaugeGroup, SubgroupOfBundleGaugeGroup) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto const inst = random_hs_pair(hs_spec(seed));
    auto const hg = hs_gauge_group(inst.first);
    auto const bg = gauge_group(inst.first->bundle);
    EXPECT_EQ(bg.order() % hg.order(), 0u) << seed;
    for (auto const& e : hg.elements) {
      EXPECT_LT(bg.find(e), bg.order());
      EXPECT_TRUE(check_left_invariance(gauge_to_ggt(e), *inst.first, *inst.first).ok());
    }
  }
}

TEST(GaugeGroupoid, SubsetOfBundleGaugeGroupoid) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto const inst = random_hs_pair(hs_spec(seed));
    auto const hg = build_hs_gauge_groupoid({inst.first, inst.second}, roomy());
    auto const bg = build_gauge_groupoid({inst.first->bundle, inst.second->bundle}, roomy());
    ASSERT_TRUE(validate_groupoid(hg.exported).ok()) << seed;
    for (auto const& k : hg.arrows) EXPECT_NE(bg.find(k), kNone);
    for (Index i = 0; i < 2; ++i) {
      auto const loops = hg.exported.arrows_between(i, i).size();
      auto const expected = hs_gauge_group(i == 0 ? inst.first : inst.second).order();
      EXPECT_EQ(loops, expected) << seed;
    }
  }
}

}  // namespace
}  // namespace fgpd
