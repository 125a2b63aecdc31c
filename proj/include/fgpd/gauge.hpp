#ifndef FGPD_GAUGE_HPP_
#define FGPD_GAUGE_HPP_

#include <map>
#include <string>
#include <vector>

#include "fgpd/bundles.hpp"

namespace fgpd {

struct OracleBounds;

// A fibre-preserving, momentum-preserving, equivariant map source -> target
// between bundles over the same base with the same groupoid.
struct BundleMorphism {
  BundlePtr source;
  BundlePtr target;
  std::vector<Index> map;

  bool operator==(const BundleMorphism& o) const {
    return same_bundle(source, o.source) && same_bundle(target, o.target) &&
           map == o.map;
  }
};

// A map K on the pairs (p1, p2) over a common base point, stored densely at
// values[p1 * |P2| + p2] with kNone off those pairs. Valid when
// s(K(p1, p2)) = e1(p1), t(K(p1, p2)) = e2(p2) and
// K(p1 g1, p2 g2) = g2^-1 K(p1, p2) g1.
struct GeneralizedGaugeTransformation {
  BundlePtr source;
  BundlePtr target;
  std::vector<Index> values;

  Index at(Index p1, Index p2) const {
    return values[static_cast<std::size_t>(p1) * target->size() +
                  static_cast<std::size_t>(p2)];
  }
  bool operator==(const GeneralizedGaugeTransformation& o) const {
    return same_bundle(source, o.source) && same_bundle(target, o.target) &&
           values == o.values;
  }
};

using Ggt = GeneralizedGaugeTransformation;

// G(p) is a loop at e(p) and G(p g) = g^-1 G(p) g.
struct GaugeTransformation {
  BundlePtr bundle;
  std::vector<Index> values;

  bool operator==(const GaugeTransformation& o) const {
    return same_bundle(bundle, o.bundle) && values == o.values;
  }
};

ValidationReport validate_bundle_morphism(const BundleMorphism& sigma);
ValidationReport validate_ggt(const Ggt& k);
ValidationReport validate_gauge_transformation(const GaugeTransformation& g);

// K(p1, p2) = phi_2(p2, sigma(p1)).
Ggt morphism_to_ggt(const BundleMorphism& sigma);
Ggt morphism_to_ggt(const BundleMorphism& sigma, const DivisionMap& target_division);

// sigma(p1) = p2 K(p1, p2); independence of p2 is re-verified and an
// IntegrityError raised if it fails.
BundleMorphism ggt_to_morphism(const Ggt& k);

// K~(p2, p1) = K(p1, p2)^-1.
Ggt invert_ggt(const Ggt& k);

// (K23 * K12)(p1, p3) = K23(p2, p3) K12(p1, p2), evaluated at the least p2 of
// the fibre and checked against every other choice.
Ggt star(const Ggt& k23, const Ggt& k12);

// K(p, q) = phi(q, p); the unit for star.
Ggt identity_ggt(const BundlePtr& p);
Ggt identity_ggt(const BundlePtr& p, const DivisionMap& division);

BundleMorphism identity_morphism(const BundlePtr& p);
// s23 after s12.
BundleMorphism compose(const BundleMorphism& s23, const BundleMorphism& s12);

// K_G(p, q) = phi(p, q)^-1 G(p) and its inverse, restriction to the diagonal.
Ggt gauge_to_ggt(const GaugeTransformation& g);
GaugeTransformation diagonal(const Ggt& k);

// phi_2(sigma(p), sigma(q)) == phi_1(p, q) on every fibre pair.
ValidationReport check_division_invariance(const BundleMorphism& sigma);

// A finite group given by its elements and multiplication table.
struct GaugeGroup {
  BundlePtr bundle;
  std::vector<GaugeTransformation> elements;
  std::vector<std::size_t> table;  // elements.size()^2, pointwise product
  std::size_t unit = 0;
  std::vector<std::size_t> inverse;

  std::size_t order() const { return elements.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const {
    return table[a * elements.size() + b];
  }
  std::size_t find(const GaugeTransformation& g) const;  // order() if absent
  FiniteGroupoid as_groupoid() const;
};

// Builds the table for a list of gauge transformations closed under the
// pointwise product.
GaugeGroup make_gauge_group(const BundlePtr& p, std::vector<GaugeTransformation> elements);

// All gauge transformations of p, found fibre by fibre from one base point
// per fibre. Throws BoundExceededError past max_elements.
GaugeGroup gauge_group(const BundlePtr& p, std::size_t max_elements = 1024);

// The groupoid whose objects are bundles and whose arrows are all the
// generalized gauge transformations between them.
struct GaugeGroupoid {
  std::vector<BundlePtr> bundles;
  std::vector<Ggt> arrows;
  std::vector<Index> source;  // arrow -> bundle
  std::vector<Index> target;
  FiniteGroupoid exported;    // arrows interned as ids

  // Position of k among the arrows, kNone if absent. Bundles are matched by
  // content, so a bundle listed twice resolves to its first copy.
  Index find(const Ggt& k) const;
  Index bundle_index(const BundlePtr& p) const;

 private:
  friend GaugeGroupoid assemble_gauge_groupoid(std::vector<BundlePtr>,
                                               std::vector<std::vector<Ggt>>,
                                               std::vector<std::string>);
  std::map<std::pair<Index, Index>, std::map<std::vector<Index>, Index>> intern_;
};

// arrows_by_pair[i * n + j] lists the arrows from bundle i to bundle j.
GaugeGroupoid assemble_gauge_groupoid(std::vector<BundlePtr> bundles,
                                      std::vector<std::vector<Ggt>> arrows_by_pair,
                                      std::vector<std::string> labels);

// Enumerates arrows with the brute-force oracle. Throws MismatchError unless
// all bundles share base and groupoid.
GaugeGroupoid build_gauge_groupoid(const std::vector<BundlePtr>& bundles,
                                   const OracleBounds& bounds);
GaugeGroupoid build_gauge_groupoid(const std::vector<BundlePtr>& bundles);

}  // namespace fgpd

#endif  // FGPD_GAUGE_HPP_
