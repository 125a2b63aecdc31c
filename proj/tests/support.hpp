#ifndef FGPD_TESTS_SUPPORT_HPP_
#define FGPD_TESTS_SUPPORT_HPP_

// Independent reference checks for the tests. Nothing here calls the
// division map, the correspondence maps or the library oracles.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fgpd/builders.hpp"
#include "fgpd/bundles.hpp"
#include "fgpd/core.hpp"
#include "fgpd/gauge.hpp"
#include "fgpd/hs.hpp"

namespace fgpd::testing {

// One single-entry change of a groupoid table.
struct Mutation {
  std::string table;
  std::size_t entry;
  Index value;
  FiniteGroupoid result;
};

// Every in-range change of source, target, unit, inverse and compose (the
// compose table also toggles between defined and undefined), plus one
// dangling id per table.
inline std::vector<Mutation> groupoid_mutations(const FiniteGroupoid& g) {
  std::vector<Mutation> out;
  auto const n = static_cast<Index>(g.arrow_count());
  auto const k = static_cast<Index>(g.object_count());
  auto sweep = [&](const char* name, std::vector<Index> FiniteGroupoid::*table, Index lo,
                   Index range) {
    auto const& t = g.*table;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (Index v = lo; v <= range; ++v) {
        if (v == t[i]) continue;
        Mutation m{name, i, v, g};
        (m.result.*table)[i] = v;
        out.push_back(std::move(m));
      }
    }
  };
  sweep("source", &FiniteGroupoid::source, 0, k);
  sweep("target", &FiniteGroupoid::target, 0, k);
  sweep("unit", &FiniteGroupoid::unit, 0, n);
  sweep("inverse", &FiniteGroupoid::inverse, 0, n);
  sweep("compose", &FiniteGroupoid::compose, kNone, n);
  return out;
}

// Re-checks a reported groupoid violation from its rule and witness names.
inline Index position(const std::vector<std::string>& names, const std::string& name) {
  auto const it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? kNone : static_cast<Index>(it - names.begin());
}

inline bool groupoid_witness_holds(const FiniteGroupoid& g, const Violation& v) {
  auto arrow = [&](std::size_t i) { return position(g.arrows, v.witness.at(i)); };
  auto product = [&](Index a, Index b) { return g.product(a, b); };
  auto const& r = v.rule;
  if (r == "groupoid.dangling-id" || r == "groupoid.table-size" ||
      r == "groupoid.duplicate-id") {
    return v.severity == Severity::malformed;
  }
  if (r == "groupoid.composable-domain") {
    auto const a = arrow(0), b = arrow(1);
    return (product(a, b) != kNone) != (g.source[a] == g.target[b]);
  }
  if (r == "groupoid.endpoints") {
    auto const a = arrow(0), b = arrow(1), p = product(a, b);
    return p != kNone && (g.source[p] != g.source[b] || g.target[p] != g.target[a]);
  }
  if (r == "groupoid.identity") {
    auto const x = position(g.objects, v.witness.at(0));
    if (x != kNone) {
      auto const u = arrow(1);
      return g.unit[x] == u && (g.source[u] != x || g.target[u] != x);
    }
    auto const a = arrow(0), b = arrow(1);
    // Either unit(t(b)) b != b or a unit(s(a)) != a.
    bool const left = a == g.unit[g.target[b]] && product(a, b) != kNone && product(a, b) != b;
    bool const right = b == g.unit[g.source[a]] && product(a, b) != kNone && product(a, b) != a;
    return left || right;
  }
  if (r == "groupoid.inverse") {
    auto const a = arrow(0), b = arrow(1), p = product(a, b);
    bool const forward = g.inverse[a] == b &&
                         (g.source[b] != g.target[a] || g.target[b] != g.source[a] ||
                          (p != kNone && p != g.unit[g.target[a]]));
    bool const backward = g.inverse[b] == a && p != kNone && p != g.unit[g.source[b]];
    return forward || backward;
  }
  if (r == "groupoid.associativity") {
    auto const a = arrow(0), b = arrow(1), c = arrow(2);
    auto const ab = product(a, b), bc = product(b, c);
    if (ab == kNone || bc == kNone) return false;
    return product(ab, c) != product(a, bc);
  }
  if (r == "groupoid.target-surjective") {
    auto const x = position(g.objects, v.witness.at(0));
    return std::none_of(g.target.begin(), g.target.end(), [&](Index t) { return t == x; });
  }
  if (r == "groupoid.inverse-involution") {
    auto const a = arrow(0);
    return g.inverse[g.inverse[a]] != a;
  }
  return false;
}

// Calls f on every total map {0..n-1} -> choices[i], in lexicographic order.
inline void for_each_assignment(const std::vector<std::vector<Index>>& choices,
                                const std::function<void(const std::vector<Index>&)>& f) {
  std::vector<Index> current(choices.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == choices.size()) {
      f(current);
      return;
    }
    for (auto v : choices[i]) {
      current[i] = v;
      go(i + 1);
    }
  };
  if (std::all_of(choices.begin(), choices.end(), [](auto const& c) { return !c.empty(); })) {
    go(0);
  }
}

// Number of assignments for_each_assignment would visit.
inline double assignment_count(const std::vector<std::vector<Index>>& choices) {
  double n = 1;
  for (auto const& c : choices) n *= static_cast<double>(c.size());
  return n;
}

// Every map P1 -> P2 that validates as a bundle morphism. Images are limited
// to points over the same base point with the same momentum.
inline std::set<std::vector<Index>> naive_bundle_morphisms(const BundlePtr& p1,
                                                           const BundlePtr& p2) {
  std::vector<std::vector<Index>> choices(p1->size());
  for (std::size_t p = 0; p < p1->size(); ++p) {
    for (Index q = 0; q < static_cast<Index>(p2->size()); ++q) {
      if (p1->base[p1->projection[p]] == p2->base[p2->projection[q]] &&
          p1->momentum[p] == p2->momentum[q]) {
        choices[p].push_back(q);
      }
    }
  }
  std::set<std::vector<Index>> out;
  for_each_assignment(choices, [&](const std::vector<Index>& map) {
    if (validate_bundle_morphism({p1, p2, map}).ok()) out.insert(map);
  });
  return out;
}

// Every table on P1 (.) P2 with values in the arrows that validates as a GGT.
// Only endpoint-compatible arrows are tried, which is what validate_ggt
// would demand anyway.
inline std::set<std::vector<Index>> naive_ggts(const BundlePtr& p1, const BundlePtr& p2) {
  auto const& G = *p1->groupoid;
  auto const n1 = p1->size(), n2 = p2->size();
  std::vector<std::size_t> slots;
  std::vector<std::vector<Index>> choices;
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      if (p1->base[p1->projection[a]] != p2->base[p2->projection[b]]) continue;
      slots.push_back(a * n2 + b);
      choices.emplace_back();
      for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
        if (G.source[g] == p1->momentum[a] && G.target[g] == p2->momentum[b]) {
          choices.back().push_back(g);
        }
      }
    }
  }
  std::set<std::vector<Index>> out;
  for_each_assignment(choices, [&](const std::vector<Index>& values) {
    Ggt k{p1, p2, std::vector<Index>(n1 * n2, kNone)};
    for (std::size_t i = 0; i < slots.size(); ++i) k.values[slots[i]] = values[i];
    if (validate_ggt(k).ok()) out.insert(k.values);
  });
  return out;
}

// Size of the search naive_ggts would run.
inline double naive_ggt_work(const PrincipalBundle& p1, const PrincipalBundle& p2) {
  auto const& G = *p1.groupoid;
  double work = 1;
  for (std::size_t a = 0; a < p1.size(); ++a) {
    for (std::size_t b = 0; b < p2.size(); ++b) {
      if (p1.base[p1.projection[a]] != p2.base[p2.projection[b]]) continue;
      work *= static_cast<double>(G.arrows_between(p1.momentum[a], p2.momentum[b]).size());
    }
  }
  return work;
}

// Solves q = p.g by scanning every arrow.
inline std::vector<Index> naive_division(const PrincipalBundle& b, Index p, Index q) {
  std::vector<Index> out;
  for (Index g = 0; g < static_cast<Index>(b.groupoid->arrow_count()); ++g) {
    if (b.groupoid->target[g] == b.momentum[p] && b.apply(p, g) == q) out.push_back(g);
  }
  return out;
}

inline GeneratorSpec small_spec(std::uint64_t seed, std::size_t max_total = 8) {
  GeneratorSpec s;
  s.seed = seed;
  s.max_total = max_total;
  s.max_arrows = 16;
  s.max_base = 3;
  return s;
}

}  // namespace fgpd::testing

#endif  // FGPD_TESTS_SUPPORT_HPP_
