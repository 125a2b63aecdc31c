#include <gtest/gtest.h>

#include "fgpd/oracles.hpp"
#include "support.hpp"

namespace fgpd {
namespace {

BundlePtr unit_of(const std::string& name) {
  return share(unit_bundle(share(named_groupoid(name))));
}

Index point(const PrincipalBundle& b, const std::string& name) { return b.find_point(name); }

// Small random pairs, with their brute-force lists.
struct Case {
  std::uint64_t seed;
  BundlePtr p1, p2;
  std::vector<BundleMorphism> morphisms;
  std::vector<Ggt> ggts;
};

std::vector<Case> cases(std::size_t count, std::size_t max_total = 8) {
  std::vector<Case> out;
  for (std::uint64_t seed = 0; out.size() < count; ++seed) {
    auto const inst = random_bundle_pair(testing::small_spec(seed, max_total));
    out.push_back({seed, inst.first, inst.second,
                   enumerate_bundle_morphisms(inst.first, inst.second),
                   enumerate_ggts(inst.first, inst.second)});
  }
  return out;
}

TEST(Validate, IdentityMorphismAndIdentityGgt) {
  for (auto const& name : fixture_names()) {
    auto const p = unit_of(name);
    EXPECT_TRUE(validate_bundle_morphism(identity_morphism(p)).ok()) << name;
    EXPECT_TRUE(validate_ggt(identity_ggt(p)).ok()) << name;
  }
}

TEST(Validate, IdentityGgtIsDivisionWithSwappedArguments) {
  auto const p = unit_of("s3");
  auto const k = identity_ggt(p);
  for (Index a = 0; a < 6; ++a) {
    for (Index b = 0; b < 6; ++b) EXPECT_EQ(k.at(a, b), division_map(*p, b, a));
  }
}

TEST(Validate, ConstantGgtBreaksEquivariance) {
  auto const p = unit_of("s3");
  Ggt k{p, p, std::vector<Index>(36, 0)};
  auto const report = validate_ggt(k);
  EXPECT_TRUE(report.has("ggt.equivariance")) << report.to_string();
}

TEST(Validate, BrokenMorphismsAreCaught) {
  auto const p = unit_of("pair2");
  auto m = identity_morphism(p);
  std::swap(m.map[0], m.map[1]);
  EXPECT_FALSE(validate_bundle_morphism(m).ok());
  auto short_map = identity_morphism(p);
  short_map.map.pop_back();
  EXPECT_TRUE(validate_bundle_morphism(short_map).has("bundle-morphism.table-size"));
  BundleMorphism mixed{p, unit_of("z2"), {0, 0, 0, 0}};
  EXPECT_TRUE(validate_bundle_morphism(mixed).has("bundle-morphism.mismatch"));
}

TEST(Validate, GaugeTransformationRules) {
  auto const p = unit_of("z2");
  auto const a = p->groupoid->find_arrow("a");
  GaugeTransformation g{p, {a, a}};
  EXPECT_TRUE(validate_gauge_transformation(g).ok());
  auto const pair = unit_of("pair2");
  GaugeTransformation bad{pair, std::vector<Index>(4, pair->groupoid->find_arrow("(0,1)"))};
  EXPECT_TRUE(validate_gauge_transformation(bad).has("gauge.isotropy"));
}

TEST(Correspondence, RightTranslationOnUnitZ2) {
  auto const p = unit_of("z2");
  auto const e = point(*p, "e"), a = point(*p, "a");
  auto const arrow_a = p->groupoid->find_arrow("a");
  // sigma(g) = g a; as a point map e -> a, a -> e.
  BundleMorphism s{p, p, std::vector<Index>(2)};
  s.map[e] = a;
  s.map[a] = e;
  ASSERT_TRUE(validate_bundle_morphism(s).ok());
  auto const k = morphism_to_ggt(s);
  EXPECT_EQ(k.at(e, e), arrow_a);
  EXPECT_EQ(ggt_to_morphism(k), s);
}

TEST(Correspondence, IdentityMapsToIdentityGgt) {
  for (auto const& name : fixture_names()) {
    auto const p = unit_of(name);
    EXPECT_EQ(morphism_to_ggt(identity_morphism(p)), identity_ggt(p)) << name;
    EXPECT_EQ(ggt_to_morphism(identity_ggt(p)), identity_morphism(p)) << name;
  }
}

TEST(Correspondence, CountsAndRoundTripsOnRandomPairs) {
  for (auto const& c : cases(40)) {
    ASSERT_EQ(c.morphisms.size(), c.ggts.size()) << "seed " << c.seed;
    std::set<std::vector<Index>> ggt_set, image;
    for (auto const& k : c.ggts) ggt_set.insert(k.values);
    for (auto const& s : c.morphisms) {
      auto const k = morphism_to_ggt(s);
      EXPECT_TRUE(validate_ggt(k).ok());
      EXPECT_EQ(ggt_to_morphism(k), s);
      image.insert(k.values);
      // The equivalent form through the source division map.
      DivisionMap const phi1(*c.p1);
      std::vector<Index> inverse(c.p2->size(), kNone);
      for (std::size_t p = 0; p < s.map.size(); ++p) inverse[s.map[p]] = static_cast<Index>(p);
      for (Index p1 = 0; p1 < static_cast<Index>(c.p1->size()); ++p1) {
        for (Index p2 = 0; p2 < static_cast<Index>(c.p2->size()); ++p2) {
          if (k.at(p1, p2) == kNone) continue;
          EXPECT_EQ(k.at(p1, p2), phi1(inverse[p2], p1));
        }
      }
    }
    EXPECT_EQ(image, ggt_set) << "seed " << c.seed;
    for (auto const& k : c.ggts) {
      EXPECT_TRUE(validate_bundle_morphism(ggt_to_morphism(k)).ok());
      EXPECT_EQ(morphism_to_ggt(ggt_to_morphism(k)), k);
    }
  }
}

TEST(Correspondence, MorphismsAreBijections) {
  for (auto const& c : cases(30, 10)) {
    for (auto const& s : c.morphisms) {
      std::set<Index> image(s.map.begin(), s.map.end());
      EXPECT_EQ(image.size(), c.p2->size());
    }
  }
}

TEST(Correspondence, IllDefinedGgtIsRefused) {
  auto const p = unit_of("z2");
  auto k = identity_ggt(p);
  k.values[0] = k.values[0] == 0 ? 1 : 0;
  EXPECT_THROW(ggt_to_morphism(k), IntegrityError);
}

TEST(Inverse, IdentityAndDoubleInversion) {
  for (auto const& name : fixture_names()) {
    auto const p = unit_of(name);
    EXPECT_EQ(invert_ggt(identity_ggt(p)), identity_ggt(p));
  }
  for (auto const& c : cases(20)) {
    for (auto const& k : c.ggts) {
      auto const kt = invert_ggt(k);
      EXPECT_TRUE(validate_ggt(kt).ok());
      EXPECT_EQ(invert_ggt(kt), k);
      auto const s = ggt_to_morphism(k);
      auto const st = ggt_to_morphism(kt);
      EXPECT_EQ(compose(st, s), identity_morphism(c.p1));
      EXPECT_EQ(compose(s, st), identity_morphism(c.p2));
    }
  }
}

TEST(Star, UnitsInversesAndFunctoriality) {
  for (auto const& c : cases(20)) {
    auto const id1 = identity_ggt(c.p1);
    auto const id2 = identity_ggt(c.p2);
    for (auto const& k : c.ggts) {
      EXPECT_EQ(star(k, id1), k);
      EXPECT_EQ(star(id2, k), k);
      EXPECT_EQ(star(invert_ggt(k), k), id1);
      EXPECT_EQ(star(k, invert_ggt(k)), id2);
    }
    auto const autos = enumerate_bundle_morphisms(c.p2, c.p2);
    for (auto const& a : autos) {
      for (auto const& s : c.morphisms) {
        EXPECT_EQ(morphism_to_ggt(compose(a, s)), star(morphism_to_ggt(a), morphism_to_ggt(s)));
        EXPECT_EQ(ggt_to_morphism(star(morphism_to_ggt(a), morphism_to_ggt(s))), compose(a, s));
      }
    }
  }
}

TEST(Star, Associativity) {
  int triples = 0;
  for (auto const& c : cases(15)) {
    auto const autos = enumerate_ggts(c.p2, c.p2);
    for (std::size_t i = 0; i < std::min<std::size_t>(autos.size(), 4); ++i) {
      for (std::size_t j = 0; j < std::min<std::size_t>(autos.size(), 4); ++j) {
        for (auto const& k : c.ggts) {
          EXPECT_EQ(star(star(autos[i], autos[j]), k), star(autos[i], star(autos[j], k)));
          ++triples;
        }
      }
    }
  }
  EXPECT_GT(triples, 0);
}

TEST(Star, MismatchedMiddleThrows) {
  auto const z2 = unit_of("z2");
  auto const s3 = unit_of("s3");
  EXPECT_THROW(star(identity_ggt(z2), identity_ggt(s3)), MismatchError);
}

TEST(IdentityGgt, DiagonalAndUnitZ2Value) {
  auto const p = unit_of("z2");
  auto const k = identity_ggt(p);
  for (Index q = 0; q < 2; ++q) EXPECT_EQ(k.at(q, q), p->groupoid->unit[p->momentum[q]]);
  EXPECT_EQ(k.at(point(*p, "e"), point(*p, "a")), p->groupoid->find_arrow("a"));
}

TEST(GaugeGroup, UnitBundlesOfGroups) {
  for (auto const* name : {"z2", "s3"}) {
    auto const g = named_groupoid(name);
    auto const gg = gauge_group(share(unit_bundle(share(g))));
    EXPECT_EQ(gg.order(), g.arrow_count());
    EXPECT_TRUE(validate_groupoid(gg.as_groupoid()).ok());
    EXPECT_TRUE(find_group_isomorphism(gg.as_groupoid(), g).has_value()) << name;
  }
  EXPECT_EQ(gauge_group(unit_of("pair2")).order(), 1u);
}

TEST(GaugeGroup, UnitIsMomentumUnits) {
  auto const p = unit_of("z2-swap");
  auto const gg = gauge_group(p);
  auto const& unit = gg.elements[gg.unit];
  for (std::size_t q = 0; q < p->size(); ++q) {
    EXPECT_EQ(unit.values[q], p->groupoid->unit[p->momentum[q]]);
  }
  for (std::size_t i = 0; i < gg.order(); ++i) {
    EXPECT_EQ(gg.mul(gg.unit, i), i);
    EXPECT_EQ(gg.mul(i, gg.unit), i);
    EXPECT_EQ(gg.mul(i, gg.inverse[i]), gg.unit);
  }
}

TEST(GaugeGroup, MatchesSelfGgts) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto const p = random_bundle_pair(testing::small_spec(seed, 12)).first;
    auto const gg = gauge_group(p);
    auto const ggts = enumerate_ggts(p, p);
    ASSERT_EQ(gg.order(), ggts.size()) << "seed " << seed;
    for (auto const& g : gg.elements) {
      EXPECT_TRUE(validate_gauge_transformation(g).ok());
      EXPECT_EQ(diagonal(gauge_to_ggt(g)), g);
    }
    for (auto const& k : ggts) {
      auto const g = diagonal(k);
      EXPECT_TRUE(validate_gauge_transformation(g).ok());
      EXPECT_EQ(gauge_to_ggt(g), k);
      EXPECT_LT(gg.find(g), gg.order());
    }
  }
}

TEST(DivisionInvariance, HoldsForMorphismsAndFailsForBrokenMaps) {
  auto const p = unit_of("s3");
  EXPECT_TRUE(check_division_invariance(identity_morphism(p)).ok());
  for (auto const& c : cases(20)) {
    for (auto const& s : c.morphisms) EXPECT_TRUE(check_division_invariance(s).ok());
  }
  auto broken = identity_morphism(p);
  std::swap(broken.map[1], broken.map[2]);
  EXPECT_FALSE(check_division_invariance(broken).ok());
}

TEST(GaugeGroupoid, SingleUnitZ2) {
  auto const gg = build_gauge_groupoid({unit_of("z2")});
  EXPECT_EQ(gg.exported.object_count(), 1u);
  EXPECT_EQ(gg.exported.arrow_count(), 2u);
  EXPECT_TRUE(validate_groupoid(gg.exported).ok());
  EXPECT_TRUE(find_group_isomorphism(gg.exported, make_cyclic_group(2)).has_value());
}

TEST(GaugeGroupoid, TwoIsomorphicZ2Torsors) {
  auto const p = unit_of("z2");
  std::vector<Index> swap{1, 0};
  std::vector<std::string> names{"u", "v"};
  auto const q = share(permute_points(*p, swap, names));
  auto const gg = build_gauge_groupoid({p, q});
  EXPECT_EQ(gg.exported.arrow_count(), 8u);
  EXPECT_TRUE(validate_groupoid(gg.exported).ok());
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) EXPECT_EQ(gg.exported.arrows_between(i, j).size(), 2u);
  }
}

TEST(GaugeGroupoid, StructureMapsAndIsotropy) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto spec = testing::small_spec(seed, 8);
    spec.max_base = 2;
    auto const inst = random_bundle_pair(spec);
    Rng rng(seed);
    std::vector<BundlePtr> family{inst.first, inst.second};
    if (seed % 2 == 0) family.push_back(share(random_companion_bundle(rng, *inst.first, spec)));
    auto const gg = build_gauge_groupoid(family);
    auto const report = validate_groupoid(gg.exported);
    ASSERT_TRUE(report.ok()) << "seed " << seed << "\n" << report.to_string();
    for (Index i = 0; i < static_cast<Index>(family.size()); ++i) {
      // Unit is the identity transformation and inverses are inversions.
      auto const u = gg.exported.unit[i];
      EXPECT_EQ(gg.arrows[u], identity_ggt(family[i]));
      std::set<std::vector<Index>> loops, group;
      for (std::size_t a = 0; a < gg.arrows.size(); ++a) {
        if (gg.source[a] == i && gg.target[a] == i) loops.insert(diagonal(gg.arrows[a]).values);
      }
      for (auto const& e : gauge_group(family[i]).elements) group.insert(e.values);
      EXPECT_EQ(loops, group);
    }
    for (std::size_t a = 0; a < gg.arrows.size(); ++a) {
      EXPECT_EQ(gg.arrows[gg.exported.inverse[a]], invert_ggt(gg.arrows[a]));
      // Content-equal bundles resolve to the first listed copy.
      auto const found = gg.find(gg.arrows[a]);
      ASSERT_NE(found, kNone);
      EXPECT_EQ(gg.arrows[found].values, gg.arrows[a].values);
    }
  }
}

TEST(GaugeGroupoid, MixedGroupoidsThrow) {
  EXPECT_THROW(build_gauge_groupoid({unit_of("z2"), unit_of("s3")}), MismatchError);
}

}  // namespace
}  // namespace fgpd
