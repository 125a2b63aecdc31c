#ifndef FGPD_HS_HPP_
#define FGPD_HS_HPP_

#include <memory>
#include <vector>

#include "fgpd/bundles.hpp"
#include "fgpd/gauge.hpp"
#include "fgpd/oracles.hpp"

namespace fgpd {

// A principal H-bundle over the objects of G together with a left G-action
// whose momentum is the bundle projection. g.p is stored at
// left_act[g * |P| + p] and is defined exactly when source(g) == projection(p).
struct HSMorphism {
  GroupoidPtr left;
  BundlePtr bundle;
  std::vector<Index> left_act;

  const FiniteGroupoid& right() const { return *bundle->groupoid; }
  Index apply_left(Index g, Index p) const {
    return left_act[static_cast<std::size_t>(g) * bundle->size() +
                    static_cast<std::size_t>(p)];
  }
  bool operator==(const HSMorphism& o) const {
    return same_groupoid(left, o.left) && same_bundle(bundle, o.bundle) &&
           left_act == o.left_act;
  }
};

using HSPtr = std::shared_ptr<const HSMorphism>;

inline HSPtr share(HSMorphism h) {
  return std::make_shared<const HSMorphism>(std::move(h));
}

inline bool same_hs(const HSPtr& a, const HSPtr& b) {
  return a == b || (a && b && *a == *b);
}

// The left action as a GroupoidAction with momentum the projection.
GroupoidAction left_action(const HSMorphism& h);

ValidationReport validate_hs(const HSMorphism& h);

// P = {(x, h) : phi(x) = t(h)}, g.(x, h) = (t(g), Phi(g) h).
HSMorphism hs_from_groupoid_morphism(const GroupoidMorphism& m);

// Componentwise, from G1 x G2 to H1 x H2.
HSMorphism hs_product(const HSMorphism& h1, const HSMorphism& h2);

// From G to H x H, acting diagonally on the left.
HSMorphism hs_fibred_product(const HSMorphism& h1, const HSMorphism& h2);

// The division properties of the underlying bundle plus invariance of the
// division map under the left action.
ValidationReport verify_hs_division_properties(const HSMorphism& h);

// A morphism of the underlying bundles that also commutes with the left
// actions.
struct HSMorphismMap {
  HSPtr source;
  HSPtr target;
  std::vector<Index> map;

  BundleMorphism underlying() const { return {source->bundle, target->bundle, map}; }
  bool operator==(const HSMorphismMap& o) const {
    return same_hs(source, o.source) && same_hs(target, o.target) && map == o.map;
  }
};

// A generalized gauge transformation between the underlying bundles that is
// invariant under the left action: K(g p1, g p2) = K(p1, p2).
struct HSGgt {
  HSPtr source;
  HSPtr target;
  Ggt ggt;

  bool operator==(const HSGgt& o) const {
    return same_hs(source, o.source) && same_hs(target, o.target) && ggt == o.ggt;
  }
};

ValidationReport validate_hs_morphism(const HSMorphismMap& sigma);
ValidationReport validate_hs_ggt(const HSGgt& k);

// Left invariance of k alone, for GGTs between the bundles of h1 and h2.
ValidationReport check_left_invariance(const Ggt& k, const HSMorphism& h1,
                                       const HSMorphism& h2);
// sigma(g p) == g sigma(p) alone.
ValidationReport check_left_equivariance(const HSMorphismMap& sigma);

// Same formulas as for bundles. Each direction re-verifies that the image is
// again in the HS layer and throws IntegrityError if not.
HSGgt hs_morphism_to_ggt(const HSMorphismMap& sigma);
HSMorphismMap hs_ggt_to_morphism(const HSGgt& k);

// Gauge transformations of the bundle that are also invariant under the
// left action.
GaugeGroup hs_gauge_group(const HSPtr& h, std::size_t max_elements = 1024);

// The gauge groupoid restricted to left-invariant arrows.
GaugeGroupoid build_hs_gauge_groupoid(const std::vector<HSPtr>& hs,
                                      const OracleBounds& bounds);
GaugeGroupoid build_hs_gauge_groupoid(const std::vector<HSPtr>& hs);

// Bundle oracle filtered by left equivariance.
std::vector<HSMorphismMap> enumerate_hs_morphisms(const HSPtr& h1, const HSPtr& h2,
                                                  const OracleBounds& bounds);
// GGT oracle filtered by left invariance.
std::vector<HSGgt> enumerate_hs_ggts(const HSPtr& h1, const HSPtr& h2,
                                     const OracleBounds& bounds);

}  // namespace fgpd

#endif  // FGPD_HS_HPP_
