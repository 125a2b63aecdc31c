#ifndef FGPD_ORACLES_HPP_
#define FGPD_ORACLES_HPP_

// Brute-force enumeration of bundle morphisms and generalized gauge
// transformations. These searches never call the division map or the
// correspondence maps, so they can check them.

#include <cstddef>
#include <string>
#include <vector>

#include "fgpd/bundles.hpp"
#include "fgpd/gauge.hpp"

namespace fgpd {

struct OracleBounds {
  std::size_t max_total = 16;     // points per bundle
  std::size_t max_arrows = 36;    // arrows of the structure groupoid
  std::size_t max_base = 6;       // base points
  std::size_t max_results = 4096; // size of one enumeration

  // Defaults overridden by GAUGE_ORACLE_BOUNDS, e.g. "total:16,arrows:36".
  // Malformed values throw Error.
  static OracleBounds from_env();
  static OracleBounds parse(const std::string& text);
};

// Throws BoundExceededError naming the first bound b breaks.
void check_bounds(const PrincipalBundle& b, const OracleBounds& bounds);

// Per fibre: fix the least point p, try every image q with the same momentum,
// extend by sigma(p g) = q g and keep the consistent ones. Results are
// combined over fibres and sorted by their point tables.
std::vector<BundleMorphism> enumerate_bundle_morphisms(const BundlePtr& p1,
                                                       const BundlePtr& p2,
                                                       const OracleBounds& bounds);
std::vector<BundleMorphism> enumerate_bundle_morphisms(const BundlePtr& p1,
                                                       const BundlePtr& p2);

// Per fibre: fix the least pair, try every arrow from e1(p1) to e2(p2),
// extend by K(p1 g1, p2 g2) = g2^-1 k g1 and keep the consistent ones.
std::vector<Ggt> enumerate_ggts(const BundlePtr& p1, const BundlePtr& p2,
                                const OracleBounds& bounds);
std::vector<Ggt> enumerate_ggts(const BundlePtr& p1, const BundlePtr& p2);

}  // namespace fgpd

#endif  // FGPD_ORACLES_HPP_
