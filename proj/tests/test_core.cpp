#include <gtest/gtest.h>

#include "support.hpp"

namespace fgpd {
namespace {

Index arrow(const FiniteGroupoid& g, const std::string& name) {
  auto const a = g.find_arrow(name);
  EXPECT_NE(a, kNone) << name;
  return a;
}

TEST(Groupoid, FixturesValidate) {
  for (auto const& name : fixture_names()) {
    EXPECT_TRUE(validate_groupoid(named_groupoid(name)).ok()) << name;
  }
}

TEST(Groupoid, Z2Table) {
  auto const g = make_cyclic_group(2);
  EXPECT_EQ(g.arrow_count(), 2u);
  EXPECT_EQ(g.mul(arrow(g, "a"), arrow(g, "a")), arrow(g, "e"));
}

TEST(Groupoid, RewiredPairCompositionBreaksEndpoints) {
  auto g = make_pair_groupoid(2);
  auto const a00 = arrow(g, "(0,0)"), a01 = arrow(g, "(0,1)"), a11 = arrow(g, "(1,1)");
  g.compose[static_cast<std::size_t>(a00) * g.arrow_count() + a01] = a11;
  auto const report = validate_groupoid(g);
  ASSERT_TRUE(report.has("groupoid.endpoints"));
  bool found = false;
  for (auto const& v : report.violations()) {
    found = found || (v.rule == "groupoid.endpoints" &&
                      v.witness == std::vector<std::string>{"(0,0)", "(0,1)"});
  }
  EXPECT_TRUE(found) << report.to_string();
}

TEST(Groupoid, DanglingIdsAreMalformed) {
  auto g = make_cyclic_group(2);
  g.inverse[0] = 7;
  auto const report = validate_groupoid(g);
  ASSERT_FALSE(report.ok());
  EXPECT_TRUE(report.has("groupoid.dangling-id"));
  EXPECT_TRUE(report.has_malformed());
  EXPECT_FALSE(report.has("groupoid.inverse"));
}

TEST(Groupoid, ReportsEveryViolation) {
  auto g = make_cyclic_group(3);
  g.compose[1 * 3 + 1] = 0;  // a a = e instead of a2
  auto const report = validate_groupoid(g);
  EXPECT_GT(report.size(), 1u);
}

// Every single-entry mutation is rejected, and each reported violation is
// confirmed by an independent re-check of its witness.
TEST(Groupoid, MutationsAreDetectedWithGenuineWitnesses) {
  std::vector<FiniteGroupoid> subjects;
  for (auto const& name : fixture_names()) subjects.push_back(named_groupoid(name));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.max_arrows = 24;
    subjects.push_back(random_groupoid(spec));
  }
  for (auto const& g : subjects) {
    for (auto const& m : testing::groupoid_mutations(g)) {
      auto const report = validate_groupoid(m.result);
      ASSERT_FALSE(report.ok()) << m.table << "[" << m.entry << "] = " << m.value;
      for (auto const& v : report.violations()) {
        EXPECT_TRUE(testing::groupoid_witness_holds(m.result, v))
            << m.table << "[" << m.entry << "] = " << m.value << ": " << v.rule;
      }
    }
  }
}

TEST(Groupoid, InverseIsAnInvolution) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    auto const g = random_groupoid(spec);
    for (Index a = 0; a < static_cast<Index>(g.arrow_count()); ++a) {
      EXPECT_EQ(g.inverse[g.inverse[a]], a);
    }
  }
}

TEST(Isotropy, GroupIsItsOwnIsotropy) {
  auto const g = make_cyclic_group(2);
  auto const iso = isotropy_group(g, 0);
  EXPECT_EQ(iso.arrow_count(), 2u);
  EXPECT_TRUE(validate_groupoid(iso).ok());
}

TEST(Isotropy, PairAndSwapActionAreTrivial) {
  auto const pair = make_pair_groupoid(2);
  auto const i0 = isotropy_group(pair, 0);
  ASSERT_EQ(i0.arrow_count(), 1u);
  EXPECT_EQ(i0.arrows[0], "(0,0)");
  auto const swap = named_groupoid("z2-swap");
  EXPECT_EQ(isotropy_group(swap, 0).arrow_count(), 1u);
  auto const pair3 = make_pair_groupoid(3);
  for (Index x = 0; x < 3; ++x) EXPECT_EQ(isotropy_group(pair3, x).arrow_count(), 1u);
}

TEST(Isotropy, UnknownObjectThrows) {
  EXPECT_THROW(isotropy_group(make_cyclic_group(2), 3), Error);
}

TEST(Product, CardinalityAndComponentwiseTable) {
  auto const z2 = make_cyclic_group(2);
  auto const p = product_groupoid(z2, z2);
  EXPECT_EQ(p.arrow_count(), 4u);
  // Arrows are indexed i * |second| + j with e = 0, a = 1.
  auto const ae = 1 * 2 + 0, aa = 1 * 2 + 1, ea = 0 * 2 + 1;
  EXPECT_EQ(p.mul(ae, aa), ea);
  EXPECT_TRUE(validate_groupoid(product_groupoid(make_pair_groupoid(2), z2)).ok());
}

TEST(Product, RandomPairsValidate) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.max_arrows = 12;
    Rng rng(seed);
    auto const g = random_groupoid(rng, spec);
    auto const h = random_groupoid(rng, spec);
    auto const p = product_groupoid(g, h);
    EXPECT_EQ(p.arrow_count(), g.arrow_count() * h.arrow_count());
    EXPECT_TRUE(validate_groupoid(p).ok()) << "seed " << seed;
  }
}

TEST(Morphism, IdentityAndIsotropyInclusion) {
  auto const pair = share(make_pair_groupoid(2));
  EXPECT_TRUE(validate_morphism(identity_morphism(pair)).ok());
  EXPECT_TRUE(validate_morphism(isotropy_inclusion(pair, 0)).ok());
  auto const s3 = share(make_symmetric_group3());
  EXPECT_TRUE(validate_morphism(identity_morphism(s3)).ok());
}

TEST(Morphism, SwappingZ2ElementsIsNotAHomomorphism) {
  auto const z2 = share(make_cyclic_group(2));
  auto m = identity_morphism(z2);
  std::swap(m.arrow_map[0], m.arrow_map[1]);
  auto const report = validate_morphism(m);
  bool found = false;
  for (auto const& v : report.violations()) {
    found = found || (v.rule == "morphism.homomorphism" &&
                      v.witness == std::vector<std::string>{"a", "a"});
  }
  EXPECT_TRUE(found) << report.to_string();
}

TEST(Morphism, RandomMorphismsValidate) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.max_arrows = 16;
    Rng rng(seed);
    auto const g = share(random_groupoid(rng, spec));
    auto const h = share(random_groupoid(rng, spec));
    auto const report = validate_morphism(random_groupoid_morphism(rng, g, h));
    EXPECT_TRUE(report.ok()) << "seed " << seed << "\n" << report.to_string();
  }
}

GroupoidAction multiplication(const GroupoidPtr& g, Side side) {
  GroupoidAction a;
  a.side = side;
  a.groupoid = g;
  a.carrier = g->arrows;
  auto const n = g->arrow_count();
  a.momentum = side == Side::left ? g->target : g->source;
  a.act.assign(n * n, kNone);
  for (Index x = 0; x < static_cast<Index>(n); ++x) {
    for (Index m = 0; m < static_cast<Index>(n); ++m) {
      // Left: x m when s(x) = t(m). Right: m x when t(x) = s(m).
      auto const v = side == Side::left ? g->product(x, m) : g->product(m, x);
      a.act[static_cast<std::size_t>(x) * n + m] = v;
    }
  }
  return a;
}

TEST(Action, MultiplicationActionsValidate) {
  for (auto const& name : fixture_names()) {
    auto const g = share(named_groupoid(name));
    EXPECT_TRUE(validate_action(multiplication(g, Side::right)).ok()) << name;
    EXPECT_TRUE(validate_action(multiplication(g, Side::left)).ok()) << name;
  }
}

TEST(Action, MisassignedMomentumIsCaught) {
  GroupoidAction a;
  a.groupoid = share(make_pair_groupoid(2));
  // Swap action of Pair2 on {0, 1}: (x, y) sends y to x.
  a.carrier = {"0", "1"};
  a.momentum = {0, 1};
  a.act.assign(8, kNone);
  for (Index g = 0; g < 4; ++g) {
    a.act[static_cast<std::size_t>(g) * 2 + a.groupoid->source[g]] = a.groupoid->target[g];
  }
  ASSERT_TRUE(validate_action(a).ok()) << validate_action(a).to_string();
  auto broken = a;
  // (1,0) now sends 0 to 0, whose momentum is not t((1,0)).
  broken.act[static_cast<std::size_t>(a.groupoid->find_arrow("(1,0)")) * 2 + 0] = 0;
  EXPECT_TRUE(validate_action(broken).has("action.momentum"));
}

TEST(Action, OffDomainEntryIsDistinct) {
  auto a = multiplication(share(make_pair_groupoid(2)), Side::right);
  auto const n = a.carrier_size();
  // Fill the first slot outside the action domain.
  for (Index g = 0; g < 4; ++g) {
    for (Index m = 0; m < 4; ++m) {
      if (!a.in_domain(g, m)) {
        a.act[static_cast<std::size_t>(g) * n + m] = 0;
        auto const report = validate_action(a);
        EXPECT_TRUE(report.has("action.off-domain")) << report.to_string();
        return;
      }
    }
  }
  FAIL() << "no off-domain slot";
}

TEST(Action, FreenessAndTransitivity) {
  auto const z2 = share(make_cyclic_group(2));
  auto const right = multiplication(z2, Side::right);
  EXPECT_TRUE(is_free(right).holds);
  auto const t = is_transitive(right);
  EXPECT_TRUE(t.holds);
  EXPECT_TRUE(t.unique);

  GroupoidAction trivial;
  trivial.groupoid = z2;
  trivial.carrier = {"0"};
  trivial.momentum = {0};
  trivial.act = {0, 0};
  ASSERT_TRUE(validate_action(trivial).ok());
  auto const f = is_free(trivial);
  EXPECT_FALSE(f.holds);
  EXPECT_EQ(f.witness, (std::vector<std::string>{"a", "0"}));

  GroupoidAction swap;
  swap.groupoid = z2;
  swap.carrier = {"0", "1"};
  swap.momentum = {0, 0};
  swap.act = {0, 1, 1, 0};
  EXPECT_TRUE(is_free(swap).holds);
  EXPECT_TRUE(is_transitive(swap).holds);
}

TEST(Conjugation, AllVariantsValidateOnRandomGroupoids) {
  std::vector<FiniteGroupoid> subjects;
  for (auto const& name : fixture_names()) subjects.push_back(named_groupoid(name));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.max_arrows = 12;
    subjects.push_back(random_groupoid(spec));
  }
  for (auto const& g : subjects) {
    for (auto v : {Conjugation::left, Conjugation::left_bar, Conjugation::right,
                   Conjugation::right_bar}) {
      auto const report = validate_action(generalized_conjugation(g, v));
      EXPECT_TRUE(report.ok()) << report.to_string();
    }
  }
}

TEST(Conjugation, DiagonalIsGroupConjugation) {
  auto const s3 = make_symmetric_group3();
  auto const n = static_cast<Index>(s3.arrow_count());
  auto const left = generalized_conjugation(s3, Conjugation::left);
  auto const bar = generalized_conjugation(s3, Conjugation::left_bar);
  for (Index g = 0; g < n; ++g) {
    auto const diag = g * n + g;  // (g, g) in the product
    for (Index h = 0; h < n; ++h) {
      auto const expected = s3.mul(s3.mul(g, h), s3.inverse[g]);
      EXPECT_EQ(left.apply(diag, h), expected);
      EXPECT_EQ(bar.apply(diag, h), expected);
    }
  }
}

TEST(Conjugation, Z2LeftVariantAndUnits) {
  auto const z2 = make_cyclic_group(2);
  auto const left = generalized_conjugation(z2, Conjugation::left);
  auto const e = 0, a = 1;
  EXPECT_EQ(left.apply(a * 2 + e, a), e);
  auto const pair = make_pair_groupoid(3);
  auto const n = static_cast<Index>(pair.arrow_count());
  auto const c = generalized_conjugation(pair, Conjugation::left);
  for (Index g = 0; g < n; ++g) {
    auto const units = pair.unit[pair.target[g]] * n + pair.unit[pair.source[g]];
    EXPECT_EQ(c.apply(units, g), g);
  }
}

TEST(Equivariant, IdentityWitness) {
  auto const g = share(make_symmetric_group3());
  auto const a = multiplication(g, Side::left);
  std::vector<Index> theta(a.carrier_size());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = static_cast<Index>(i);
  EXPECT_TRUE(validate_equivariant_map({a, a, theta, identity_morphism(g)}).ok());
  std::vector<Index> constant(a.carrier_size(), 0);
  EXPECT_TRUE(validate_equivariant_map({a, a, constant, identity_morphism(g)})
                  .has("equivariant.action"));
}

TEST(Groups, IsomorphismSearch) {
  EXPECT_TRUE(find_group_isomorphism(make_cyclic_group(4), make_cyclic_group(4)).has_value());
  EXPECT_FALSE(find_group_isomorphism(make_cyclic_group(4), make_klein_group()).has_value());
  EXPECT_FALSE(find_group_isomorphism(make_symmetric_group3(), make_cyclic_group(6)).has_value());
}

TEST(Builders, GroupTables) {
  EXPECT_EQ(make_symmetric_group3().arrow_count(), 6u);
  std::vector<std::vector<Index>> broken{{0, 1, 2}, {1, 0, 2}, {2, 2, 0}};
  EXPECT_THROW(make_group_groupoid({"e", "x", "y"}, broken), InvalidStructureError);
}

TEST(Builders, PairGroupoid) {
  EXPECT_EQ(make_pair_groupoid(1).arrow_count(), 1u);
  EXPECT_EQ(make_pair_groupoid(2).arrow_count(), 4u);
  EXPECT_EQ(make_pair_groupoid(3).arrow_count(), 9u);
  EXPECT_THROW(make_pair_groupoid(0), Error);
}

TEST(Builders, ActionGroupoid) {
  auto const swap = make_action_groupoid(make_cyclic_group(2), {"0", "1"}, {0, 1, 1, 0});
  EXPECT_EQ(swap.arrow_count(), 4u);
  auto const trivial = make_action_groupoid(make_cyclic_group(2), {"0"}, {0, 0});
  EXPECT_TRUE(find_group_isomorphism(trivial, make_cyclic_group(2)).has_value());
  EXPECT_THROW(make_action_groupoid(make_cyclic_group(2), {"0", "1"}, {0, 1, 0, 0}),
               InvalidStructureError);
  // S3 permuting {0, 1, 2}.
  auto const s3 = make_symmetric_group3();
  std::vector<Index> act;
  int const perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  for (auto const& p : perms) act.insert(act.end(), {p[0], p[1], p[2]});
  EXPECT_TRUE(validate_groupoid(make_action_groupoid(s3, {"0", "1", "2"}, act)).ok());
}

TEST(Builders, GaugeGroupoidExample) {
  auto const point = make_gauge_groupoid_example(
      trivial_ordinary_bundle(make_symmetric_group3(), {"m"}));
  EXPECT_TRUE(find_group_isomorphism(point, make_symmetric_group3()).has_value());
  auto const two = named_groupoid("gauge-z2x2");
  EXPECT_EQ(two.arrow_count(), 8u);
  EXPECT_EQ(two.object_count(), 2u);
  auto const rebuilt = product_groupoid(make_pair_groupoid(2), make_cyclic_group(2));
  EXPECT_EQ(isotropy_group(two, 0).arrow_count(), 2u);
  EXPECT_EQ(rebuilt.arrow_count(), two.arrow_count());
}

TEST(Builders, NonPrincipalOrdinaryBundleRejected) {
  auto b = trivial_ordinary_bundle(make_cyclic_group(2), {"m"});
  b.act[1] = 0;  // p0 . a = p0
  EXPECT_THROW(make_gauge_groupoid_example(b), IntegrityError);
}

}  // namespace
}  // namespace fgpd
