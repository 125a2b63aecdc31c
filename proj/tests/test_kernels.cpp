#include <gtest/gtest.h>

#include "fgpd/kernels.hpp"
#include "support.hpp"

namespace fgpd {
namespace {

TEST(Kernels, AssociativityFailuresAgree) {
  for (auto const& name : fixture_names()) {
    auto const g = named_groupoid(name);
    EXPECT_TRUE(kernels::serial::associativity_failures(g).empty());
    EXPECT_TRUE(kernels::omp::associativity_failures(g).empty());
  }
  // Broken compositions give the same failure lists.
  auto const s3 = named_groupoid("s3");
  auto const mutations = testing::groupoid_mutations(s3);
  std::size_t broken = 0;
  for (auto const& m : mutations) {
    if (m.table != "compose" || m.value == kNone) continue;
    auto const a = kernels::serial::associativity_failures(m.result);
    EXPECT_EQ(a, kernels::omp::associativity_failures(m.result));
    broken += !a.empty();
  }
  EXPECT_GT(broken, 0u);
}

TEST(Kernels, DivisionTablesAgree) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto const inst = random_bundle_pair(testing::small_spec(seed, 16));
    EXPECT_EQ(kernels::serial::division_table(*inst.first),
              kernels::omp::division_table(*inst.first));
  }
  // A broken action leaves ambiguous or missing entries in both.
  auto b = unit_bundle(share(named_groupoid("z2")));
  b.act[0] = b.act[1];
  EXPECT_EQ(kernels::serial::division_table(b), kernels::omp::division_table(b));
}

TEST(Kernels, FibreCandidatesAgree) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto const inst = random_bundle_pair(testing::small_spec(seed, 12));
    EXPECT_EQ(kernels::serial::morphism_fibre_candidates(*inst.first, *inst.second),
              kernels::omp::morphism_fibre_candidates(*inst.first, *inst.second));
    EXPECT_EQ(kernels::serial::ggt_fibre_candidates(*inst.first, *inst.second),
              kernels::omp::ggt_fibre_candidates(*inst.first, *inst.second));
  }
}

TEST(Kernels, StarTablesAgree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto spec = testing::small_spec(seed, 8);
    spec.max_base = 2;
    auto const inst = random_bundle_pair(spec);
    auto const gg = build_gauge_groupoid({inst.first, inst.second});
    kernels::ArrowLookup lookup = [&gg](const Ggt& k, Index s, Index t) {
      auto const a = gg.find(k);
      return a != kNone && gg.source[a] == s && gg.target[a] == t ? a : kNone;
    };
    auto const serial = kernels::serial::star_table(gg.arrows, gg.source, gg.target, lookup);
    EXPECT_EQ(serial, kernels::omp::star_table(gg.arrows, gg.source, gg.target, lookup));
    if (!same_bundle(inst.first, inst.second)) EXPECT_EQ(serial, gg.exported.compose);
  }
}

}  // namespace
}  // namespace fgpd
