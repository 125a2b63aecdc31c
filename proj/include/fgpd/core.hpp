#ifndef FGPD_CORE_HPP_
#define FGPD_CORE_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgpd/report.hpp"
#include "fgpd/types.hpp"

namespace fgpd {

// A finite groupoid stored as explicit tables.
//
// Composition follows the "after" convention: compose(g1, g2) is g1 after g2
// and is defined exactly when source(g1) == target(g2). The struct can hold
// tables that break the axioms; validate_groupoid decides.
struct FiniteGroupoid {
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::vector<Index> source;   // arrow -> object
  std::vector<Index> target;   // arrow -> object
  std::vector<Index> unit;     // object -> arrow
  std::vector<Index> inverse;  // arrow -> arrow
  std::vector<Index> compose;  // arrow_count()^2, row-major (g1, g2), kNone

  std::size_t object_count() const { return objects.size(); }
  std::size_t arrow_count() const { return arrows.size(); }

  bool composable(Index g1, Index g2) const {
    return source[g1] == target[g2];
  }
  // Raw table entry; kNone when undefined.
  Index product(Index g1, Index g2) const {
    return compose[static_cast<std::size_t>(g1) * arrows.size() +
                   static_cast<std::size_t>(g2)];
  }
  // Checked composition, throws Error if the pair has no entry.
  Index mul(Index g1, Index g2) const;
  Index mul(Index g1, Index g2, Index g3) const { return mul(mul(g1, g2), g3); }

  Index find_object(std::string_view name) const;
  Index find_arrow(std::string_view name) const;

  // Arrows g with source(g) == from and target(g) == to.
  std::vector<Index> arrows_between(Index from, Index to) const;
  std::vector<Index> arrows_into(Index x) const;

  bool operator==(const FiniteGroupoid&) const = default;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) {
  return std::make_shared<const FiniteGroupoid>(std::move(g));
}

// Structural equality through the pointers.
bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

// Arrows grouped by target, so that fibre-local searches stay linear.
class Incidence {
 public:
  explicit Incidence(const FiniteGroupoid& g);
  std::span<const Index> into(Index x) const { return into_[x]; }
  std::span<const Index> out_of(Index x) const { return out_of_[x]; }

 private:
  std::vector<std::vector<Index>> into_;
  std::vector<std::vector<Index>> out_of_;
};

ValidationReport validate_groupoid(const FiniteGroupoid& g);

FiniteGroupoid isotropy_group(const FiniteGroupoid& g, Index x);

// Arrows and objects are indexed (i, j) -> i * |second| + j.
FiniteGroupoid product_groupoid(const FiniteGroupoid& g, const FiniteGroupoid& h);

// Objects and arrows of part k are prefixed with "<prefix k>:".
FiniteGroupoid disjoint_union(std::span<const FiniteGroupoid> parts,
                              std::span<const std::string> prefixes);

// Renames arrows and objects to "(a,b)"-style pairs.
std::string pair_name(std::string_view a, std::string_view b);

// ---------------------------------------------------------------------------
// Morphisms

struct GroupoidMorphism {
  GroupoidPtr domain;
  GroupoidPtr codomain;
  std::vector<Index> arrow_map;
  std::vector<Index> object_map;
};

GroupoidMorphism identity_morphism(const GroupoidPtr& g);
// Inclusion of the isotropy group at x; domain is isotropy_group(*g, x).
GroupoidMorphism isotropy_inclusion(const GroupoidPtr& g, Index x);

// Also reports the inverse compatibility as a derived check.
ValidationReport validate_morphism(const GroupoidMorphism& m);

// ---------------------------------------------------------------------------
// Actions

enum class Side { left, right };

// A left action g.m is defined when source(g) == momentum(m); a right action
// m.g when target(g) == momentum(m). Both are stored in act[g * |M| + m].
struct GroupoidAction {
  Side side = Side::left;
  GroupoidPtr groupoid;
  std::vector<std::string> carrier;
  std::vector<Index> momentum;
  std::vector<Index> act;

  std::size_t carrier_size() const { return carrier.size(); }
  bool in_domain(Index g, Index m) const {
    return side == Side::left ? groupoid->source[g] == momentum[m]
                              : groupoid->target[g] == momentum[m];
  }
  Index apply(Index g, Index m) const {
    return act[static_cast<std::size_t>(g) * carrier.size() +
               static_cast<std::size_t>(m)];
  }
};

ValidationReport validate_action(const GroupoidAction& a);

struct FreenessCheck {
  bool holds = true;
  std::vector<std::string> witness;  // (g, m) with g.m = m, g not a unit
};

struct TransitivityCheck {
  bool holds = true;
  std::vector<std::string> witness;  // (m, m~) with no arrow between them
  bool unique = true;  // connecting arrows unique whenever they exist
};

FreenessCheck is_free(const GroupoidAction& a);
TransitivityCheck is_transitive(const GroupoidAction& a);

// The four actions of G x G on the arrows of G. The left variants act by
// (g1, g2; g3) -> g1 g3 g2^-1 and g2 g3 g1^-1, the right ones by
// (g3; g1, g2) -> g1^-1 g3 g2 and g2^-1 g3 g1.
enum class Conjugation { left, left_bar, right, right_bar };

// Momentum of g under a variant, as an object index of G x G.
Index conjugation_momentum(const FiniteGroupoid& g, Conjugation variant, Index arrow);

GroupoidAction generalized_conjugation(const FiniteGroupoid& g,
                                       Conjugation variant);
GroupoidAction generalized_conjugation(const FiniteGroupoid& g,
                                       const GroupoidPtr& square,
                                       Conjugation variant);

// ---------------------------------------------------------------------------
// Twisted equivariant maps

struct EquivariantMapWitness {
  GroupoidAction from;
  GroupoidAction to;
  std::vector<Index> theta;  // carrier(from) -> carrier(to)
  GroupoidMorphism morphism;  // from.groupoid -> to.groupoid
};

ValidationReport validate_equivariant_map(const EquivariantMapWitness& w);

// ---------------------------------------------------------------------------
// Groups

// An isomorphism between two one-object groupoids, if any. Brute force over
// bijections fixing the unit, so only meant for small groups.
std::optional<std::vector<Index>> find_group_isomorphism(const FiniteGroupoid& a,
                                                         const FiniteGroupoid& b);

// All homomorphisms between the isotropy groups g_{x,x} and h_{y,y}, as maps
// from isotropy arrows of g to arrows of h, in lexicographic order.
std::vector<std::vector<std::pair<Index, Index>>> group_homomorphisms(
    const FiniteGroupoid& g, Index x, const FiniteGroupoid& h, Index y);

}  // namespace fgpd

#endif  // FGPD_CORE_HPP_
