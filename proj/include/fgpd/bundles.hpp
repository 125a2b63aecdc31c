#ifndef FGPD_BUNDLES_HPP_
#define FGPD_BUNDLES_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fgpd/core.hpp"

namespace fgpd {

// A right principal bundle with structure groupoid over a finite base.
//
// The point p.g is stored at act[p * arrows + g] and is defined exactly when
// momentum(p) == target(g). Like FiniteGroupoid this can hold non-principal
// tables; validate_bundle decides.
struct PrincipalBundle {
  GroupoidPtr groupoid;
  std::vector<std::string> points;
  std::vector<std::string> base;
  std::vector<Index> projection;  // point -> base
  std::vector<Index> momentum;    // point -> object
  std::vector<Index> act;

  std::size_t size() const { return points.size(); }
  Index apply(Index p, Index g) const {
    return act[static_cast<std::size_t>(p) * groupoid->arrow_count() +
               static_cast<std::size_t>(g)];
  }
  Index find_point(std::string_view name) const;
  Index find_base(std::string_view name) const;

  // Points over each base point, in increasing index order.
  std::vector<std::vector<Index>> fibres() const;

  bool operator==(const PrincipalBundle& other) const;
};

using BundlePtr = std::shared_ptr<const PrincipalBundle>;

inline BundlePtr share(PrincipalBundle b) {
  return std::make_shared<const PrincipalBundle>(std::move(b));
}

bool same_bundle(const BundlePtr& a, const BundlePtr& b);

ValidationReport validate_bundle(const PrincipalBundle& b);

// The bundle's right action as a GroupoidAction (for the generic checks).
GroupoidAction as_right_action(const PrincipalBundle& b);

// Solves q = p.g by searching the arrows into momentum(p).
// Throws NotSameFiberError when p and q lie over different base points and
// IntegrityError when the solution is missing or not unique.
Index division_map(const PrincipalBundle& b, Index p, Index q);

// Every value of the division map, computed once.
class DivisionMap {
 public:
  // Throws IntegrityError naming the first fibre where division fails.
  explicit DivisionMap(const PrincipalBundle& b);

  Index operator()(Index p, Index q) const;
  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<Index> projection_;
  std::vector<Index> table_;
};

// Checks the defining equation and the four structural properties of the
// division map, exhaustively over fibre pairs and the acting arrows.
ValidationReport verify_division_properties(const PrincipalBundle& b);

// The groupoid acting on its own arrows: projection t, momentum s.
PrincipalBundle unit_bundle(const GroupoidPtr& g);

// Points are pairs (m, p) with f(m) == projection(p), ordered by m then p.
PrincipalBundle pullback_bundle(const PrincipalBundle& b,
                                std::span<const std::string> new_base,
                                std::span<const Index> f);

// The pull-back of the unit bundle along alpha: base -> objects.
PrincipalBundle trivial_bundle(const GroupoidPtr& g,
                               std::span<const std::string> base,
                               std::span<const Index> alpha);

// Restriction to the listed base points (their order is kept).
PrincipalBundle restrict_bundle(const PrincipalBundle& b,
                                std::span<const Index> base_points);

struct Section {
  std::vector<Index> base_points;
  std::vector<Index> values;  // projection(values[i]) == base_points[i]
};

// Iso between the restriction of a bundle to a subset U of its base and the
// trivial bundle (momentum o section)^* U. forward maps restricted points to
// trivial points and backward goes the other way.
struct BundleIso {
  PrincipalBundle restricted;
  PrincipalBundle trivial;
  std::vector<Index> forward;
  std::vector<Index> backward;
};

BundleIso trivialize(const PrincipalBundle& b, const Section& section);
ValidationReport validate_bundle_iso(const BundleIso& iso);

// Any section over the whole base: the least point of every fibre.
Section canonical_section(const PrincipalBundle& b);

// Principal bundle over M1 x M2 with groupoid G1 x G2; points and base
// indexed (i, j) -> i * |second| + j.
PrincipalBundle product_bundle(const PrincipalBundle& b1, const PrincipalBundle& b2);

// Pairs over a common base point, principal for G x G. Points are the pairs
// (p, q) with equal projections in lexicographic order.
PrincipalBundle fibred_product(const PrincipalBundle& b1, const PrincipalBundle& b2);
PrincipalBundle fibred_product(const PrincipalBundle& b1, const PrincipalBundle& b2,
                               const GroupoidPtr& square);

// Renames and reorders points: point i moves to position perm[i].
PrincipalBundle permute_points(const PrincipalBundle& b, std::span<const Index> perm,
                               std::span<const std::string> names = {});

}  // namespace fgpd

#endif  // FGPD_BUNDLES_HPP_
