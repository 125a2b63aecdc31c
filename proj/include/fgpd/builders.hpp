#ifndef FGPD_BUILDERS_HPP_
#define FGPD_BUILDERS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fgpd/bundles.hpp"
#include "fgpd/core.hpp"
#include "fgpd/hs.hpp"

namespace fgpd {

// ---------------------------------------------------------------------------
// Groups and the standard examples

// One-object groupoid from a multiplication table, table[i][j] = i j.
// Throws InvalidStructureError when the table is not a group.
FiniteGroupoid make_group_groupoid(std::vector<std::string> names,
                                   const std::vector<std::vector<Index>>& table);

FiniteGroupoid make_cyclic_group(std::size_t n);  // e, a, a2, ...
FiniteGroupoid make_klein_group();                 // e, a, b, c
FiniteGroupoid make_symmetric_group3();            // e, r, r2, s, sr, sr2

// Objects "0".."n-1", arrow (x, y) from y to x at index x * n + y.
FiniteGroupoid make_pair_groupoid(std::size_t n);

// Arrows (g, m) from m to g.m. act[g * |M| + m] is a left action of the
// one-object groupoid group. Throws InvalidStructureError on a bad action.
FiniteGroupoid make_action_groupoid(const FiniteGroupoid& group,
                                    const std::vector<std::string>& carrier,
                                    const std::vector<Index>& act);

// An ordinary principal bundle: a group acting on the right of a finite set,
// act[p * |group| + g] = p.g.
struct OrdinaryBundle {
  FiniteGroupoid group;
  std::vector<std::string> points;
  std::vector<std::string> base;
  std::vector<Index> projection;
  std::vector<Index> act;
};

// base x group with right multiplication.
OrdinaryBundle trivial_ordinary_bundle(const FiniteGroupoid& group,
                                       const std::vector<std::string>& base);

// Orbits [p, q] of the diagonal action on P x P, from pi(q) to pi(p).
// Throws IntegrityError when the input is not principal.
FiniteGroupoid make_gauge_groupoid_example(const OrdinaryBundle& b);

// Sends every object to to_object and every arrow to its unit.
GroupoidMorphism constant_morphism(const GroupoidPtr& g, const GroupoidPtr& h,
                                   Index to_object);

// The named fixtures: z2, s3, pair2, pair3, z2-swap, gauge-z2x2.
std::vector<std::string> fixture_names();
FiniteGroupoid named_groupoid(const std::string& name);

// ---------------------------------------------------------------------------
// Seeded generation

struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::size_t max_objects = 3;
  std::size_t max_group_order = 6;
  std::size_t max_base = 4;
  std::size_t max_arrows = 36;
  std::size_t max_total = 16;
};

// mt19937_64 with plain modulo picks, so every platform draws the same values.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n);
  }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  std::vector<Index> permutation(std::size_t n);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// The block groups drawn by random_groupoid, in library order.
std::vector<FiniteGroupoid> block_group_library();

// Disjoint union of blocks (pair groupoid on k objects) x (library group),
// with arrows shuffled.
FiniteGroupoid random_groupoid(const GeneratorSpec& spec);
FiniteGroupoid random_groupoid(Rng& rng, const GeneratorSpec& spec);

// alpha* U_G over the given base, points permuted and renamed p0, p1, ...
// Throws Error when no object fits the size bound.
PrincipalBundle random_bundle(const GroupoidPtr& g, const std::vector<std::string>& base,
                              const GeneratorSpec& spec);
PrincipalBundle random_bundle(Rng& rng, const GroupoidPtr& g,
                              const std::vector<std::string>& base,
                              const GeneratorSpec& spec);

// A second bundle over the same base whose alpha mostly stays in the
// component of the first, so that morphisms usually exist.
PrincipalBundle random_companion_bundle(Rng& rng, const PrincipalBundle& first,
                                        const GeneratorSpec& spec);

// Phi(g) = c_x psi(a_x^-1 g a_y) c_y^-1 for random roots, connecting arrows
// a, a group homomorphism psi and arrows c.
GroupoidMorphism random_groupoid_morphism(Rng& rng, const GroupoidPtr& g,
                                          const GroupoidPtr& h);

// hs_from_groupoid_morphism of a random morphism, points permuted.
HSMorphism random_hs(const GroupoidPtr& g, const GroupoidPtr& h, const GeneratorSpec& spec);
HSMorphism random_hs(Rng& rng, const GroupoidPtr& g, const GroupoidPtr& h);

// Renames and reorders the points of an HS morphism: point i moves to perm[i].
HSMorphism permute_hs(const HSMorphism& h, std::span<const Index> perm,
                      std::span<const std::string> names = {});

// Base names m0, m1, ...
std::vector<std::string> base_names(std::size_t n);

// Instances used by the theorem suite and the tests.
struct BundlePairInstance {
  GroupoidPtr groupoid;
  BundlePtr first;
  BundlePtr second;
};
BundlePairInstance random_bundle_pair(const GeneratorSpec& spec);

struct HSPairInstance {
  GroupoidPtr left;
  GroupoidPtr right;
  HSPtr first;
  HSPtr second;
};
// Retries internally until both bundles fit spec.max_total.
HSPairInstance random_hs_pair(const GeneratorSpec& spec);

}  // namespace fgpd

#endif  // FGPD_BUILDERS_HPP_
