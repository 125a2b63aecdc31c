#include "fgpd/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "fgpd/kernels.hpp"

namespace fgpd {

namespace {

bool in_range(Index i, std::size_t n) {
  return i >= 0 && static_cast<std::size_t>(i) < n;
}

std::string nm(const std::vector<std::string>& names, Index i) {
  if (in_range(i, names.size())) {
    return names[i];
  }
  return i == kNone ? std::string("<none>") : "#" + std::to_string(i);
}

void check_unique(const std::vector<std::string>& names, std::string_view what,
                  ValidationReport& report) {
  std::unordered_set<std::string> seen;
  for (auto const& n : names) {
    if (!seen.insert(n).second) {
      report.add("groupoid.duplicate-id", {n},
                 std::string(what) + " id listed twice", Severity::malformed);
    }
  }
}

// Range and size checks; true when the tables can be indexed safely.
bool well_formed(const FiniteGroupoid& g, ValidationReport& report) {
  auto const n = g.arrow_count();
  auto const k = g.object_count();
  bool sized = true;
  auto size_check = [&](std::string_view table, std::size_t have,
                        std::size_t want) {
    if (have != want) {
      report.add("groupoid.table-size", {std::string(table)},
                 "expected " + std::to_string(want) + " entries, found " +
                     std::to_string(have),
                 Severity::malformed);
      sized = false;
    }
  };
  size_check("source", g.source.size(), n);
  size_check("target", g.target.size(), n);
  size_check("inverse", g.inverse.size(), n);
  size_check("unit", g.unit.size(), k);
  size_check("compose", g.compose.size(), n * n);
  if (!sized) {
    return false;
  }
  check_unique(g.objects, "object", report);
  check_unique(g.arrows, "arrow", report);

  auto const before = report.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (!in_range(g.source[a], k)) {
      report.add("groupoid.dangling-id", {"source", g.arrows[a]},
                 "source is not an object", Severity::malformed);
    }
    if (!in_range(g.target[a], k)) {
      report.add("groupoid.dangling-id", {"target", g.arrows[a]},
                 "target is not an object", Severity::malformed);
    }
    if (!in_range(g.inverse[a], n)) {
      report.add("groupoid.dangling-id", {"inverse", g.arrows[a]},
                 "inverse is not an arrow", Severity::malformed);
    }
  }
  for (std::size_t x = 0; x < k; ++x) {
    if (!in_range(g.unit[x], n)) {
      report.add("groupoid.dangling-id", {"unit", g.objects[x]},
                 "unit is not an arrow", Severity::malformed);
    }
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    auto const v = g.compose[i];
    if (v != kNone && !in_range(v, n)) {
      report.add("groupoid.dangling-id",
                 {"compose", g.arrows[i / n], g.arrows[i % n]},
                 "product is not an arrow", Severity::malformed);
    }
  }
  return report.size() == before;
}

}  // namespace

Index FiniteGroupoid::mul(Index g1, Index g2) const {
  auto const r = product(g1, g2);
  if (r == kNone) {
    throw Error("arrows " + arrows[g1] + " and " + arrows[g2] +
                " are not composable");
  }
  return r;
}

Index FiniteGroupoid::find_object(std::string_view name) const {
  auto it = std::find(objects.begin(), objects.end(), name);
  if (it == objects.end()) {
    throw UnknownIdError("unknown object id '" + std::string(name) + "'");
  }
  return static_cast<Index>(it - objects.begin());
}

Index FiniteGroupoid::find_arrow(std::string_view name) const {
  auto it = std::find(arrows.begin(), arrows.end(), name);
  if (it == arrows.end()) {
    throw UnknownIdError("unknown arrow id '" + std::string(name) + "'");
  }
  return static_cast<Index>(it - arrows.begin());
}

std::vector<Index> FiniteGroupoid::arrows_between(Index from, Index to) const {
  std::vector<Index> out;
  for (Index a = 0; a < static_cast<Index>(arrow_count()); ++a) {
    if (source[a] == from && target[a] == to) {
      out.push_back(a);
    }
  }
  return out;
}

std::vector<Index> FiniteGroupoid::arrows_into(Index x) const {
  std::vector<Index> out;
  for (Index a = 0; a < static_cast<Index>(arrow_count()); ++a) {
    if (target[a] == x) {
      out.push_back(a);
    }
  }
  return out;
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  return a == b || (a && b && *a == *b);
}

Incidence::Incidence(const FiniteGroupoid& g)
    : into_(g.object_count()), out_of_(g.object_count()) {
  for (Index a = 0; a < static_cast<Index>(g.arrow_count()); ++a) {
    into_[g.target[a]].push_back(a);
    out_of_[g.source[a]].push_back(a);
  }
}

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport report;
  if (!well_formed(g, report)) {
    return report;
  }
  auto const n = static_cast<Index>(g.arrow_count());
  auto const k = static_cast<Index>(g.object_count());
  auto const& A = g.arrows;

  // The composition table is defined exactly on composable pairs.
  for (Index g1 = 0; g1 < n; ++g1) {
    for (Index g2 = 0; g2 < n; ++g2) {
      bool const defined = g.product(g1, g2) != kNone;
      if (defined != g.composable(g1, g2)) {
        report.add("groupoid.composable-domain", {A[g1], A[g2]},
                   defined ? "product defined on a non-composable pair"
                           : "product missing on a composable pair");
      }
    }
  }

  // Endpoints of a product.
  for (Index g1 = 0; g1 < n; ++g1) {
    for (Index g2 = 0; g2 < n; ++g2) {
      auto const p = g.product(g1, g2);
      if (p == kNone || !g.composable(g1, g2)) {
        continue;
      }
      if (g.source[p] != g.source[g2] || g.target[p] != g.target[g1]) {
        report.add("groupoid.endpoints", {A[g1], A[g2]},
                   "product " + A[p] + " has endpoints " +
                       g.objects[g.source[p]] + " -> " + g.objects[g.target[p]]);
      }
    }
  }

  // Units.
  for (Index x = 0; x < k; ++x) {
    auto const u = g.unit[x];
    if (g.source[u] != x || g.target[u] != x) {
      report.add("groupoid.identity", {g.objects[x], A[u]},
                 "unit is not a loop at its object");
    }
  }
  for (Index a = 0; a < n; ++a) {
    auto const left = g.product(g.unit[g.target[a]], a);
    if (left != kNone && left != a) {
      report.add("groupoid.identity", {A[g.unit[g.target[a]]], A[a]},
                 "unit(t(g)) g = " + A[left]);
    }
    auto const right = g.product(a, g.unit[g.source[a]]);
    if (right != kNone && right != a) {
      report.add("groupoid.identity", {A[a], A[g.unit[g.source[a]]]},
                 "g unit(s(g)) = " + A[right]);
    }
  }

  // Inverses.
  for (Index a = 0; a < n; ++a) {
    auto const inv = g.inverse[a];
    if (g.source[inv] != g.target[a] || g.target[inv] != g.source[a]) {
      report.add("groupoid.inverse", {A[a], A[inv]},
                 "inverse does not reverse the endpoints");
    }
    auto const r = g.product(a, inv);
    if (r != kNone && r != g.unit[g.target[a]]) {
      report.add("groupoid.inverse", {A[a], A[inv]},
                 "g g^-1 = " + A[r] + " is not the unit at t(g)");
    }
    auto const l = g.product(inv, a);
    if (l != kNone && l != g.unit[g.source[a]]) {
      report.add("groupoid.inverse", {A[inv], A[a]},
                 "g^-1 g = " + A[l] + " is not the unit at s(g)");
    }
  }

  for (auto const& t : kernels::omp::associativity_failures(g)) {
    report.add("groupoid.associativity", {A[t[0]], A[t[1]], A[t[2]]},
               "(g1 g2) g3 != g1 (g2 g3)");
  }

  // Consequences of the axioms, reported separately.
  std::vector<bool> hit(static_cast<std::size_t>(k), false);
  for (Index a = 0; a < n; ++a) {
    hit[g.target[a]] = true;
  }
  for (Index x = 0; x < k; ++x) {
    if (!hit[x]) {
      report.add("groupoid.target-surjective", {g.objects[x]},
                 "no arrow ends at this object", Severity::derived);
    }
  }
  for (Index a = 0; a < n; ++a) {
    if (g.inverse[g.inverse[a]] != a) {
      report.add("groupoid.inverse-involution", {A[a]},
                 "inverse(inverse(g)) != g", Severity::derived);
    }
  }
  return report;
}

FiniteGroupoid isotropy_group(const FiniteGroupoid& g, Index x) {
  if (!in_range(x, g.object_count())) {
    throw UnknownIdError("object index " + std::to_string(x) +
                         " out of range");
  }
  auto const loops = g.arrows_between(x, x);
  std::vector<Index> local(g.arrow_count(), kNone);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    local[loops[i]] = static_cast<Index>(i);
  }
  FiniteGroupoid r;
  r.objects = {g.objects[x]};
  auto const n = loops.size();
  for (auto a : loops) {
    r.arrows.push_back(g.arrows[a]);
    r.source.push_back(0);
    r.target.push_back(0);
    r.inverse.push_back(local[g.inverse[a]]);
  }
  r.unit = {local[g.unit[x]]};
  r.compose.assign(n * n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto const p = g.product(loops[i], loops[j]);
      r.compose[i * n + j] = p == kNone ? kNone : local[p];
    }
  }
  return r;
}

std::string pair_name(std::string_view a, std::string_view b) {
  std::string s;
  s.reserve(a.size() + b.size() + 3);
  s += '(';
  s += a;
  s += ',';
  s += b;
  s += ')';
  return s;
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  FiniteGroupoid r;
  auto const ng = g.arrow_count(), nh = h.arrow_count();
  auto const kh = h.object_count();
  auto const n = ng * nh;
  auto obj = [kh](Index x, Index y) {
    return static_cast<Index>(static_cast<std::size_t>(x) * kh +
                              static_cast<std::size_t>(y));
  };
  auto arr = [nh](Index a, Index b) {
    return static_cast<Index>(static_cast<std::size_t>(a) * nh +
                              static_cast<std::size_t>(b));
  };
  for (auto const& x : g.objects) {
    for (auto const& y : h.objects) {
      r.objects.push_back(pair_name(x, y));
    }
  }
  for (Index x = 0; x < static_cast<Index>(g.object_count()); ++x) {
    for (Index y = 0; y < static_cast<Index>(kh); ++y) {
      r.unit.push_back(arr(g.unit[x], h.unit[y]));
    }
  }
  r.arrows.reserve(n);
  for (Index a = 0; a < static_cast<Index>(ng); ++a) {
    for (Index b = 0; b < static_cast<Index>(nh); ++b) {
      r.arrows.push_back(pair_name(g.arrows[a], h.arrows[b]));
      r.source.push_back(obj(g.source[a], h.source[b]));
      r.target.push_back(obj(g.target[a], h.target[b]));
      r.inverse.push_back(arr(g.inverse[a], h.inverse[b]));
    }
  }
  r.compose.assign(n * n, kNone);
  for (Index a1 = 0; a1 < static_cast<Index>(ng); ++a1) {
    for (Index a2 = 0; a2 < static_cast<Index>(ng); ++a2) {
      auto const pa = g.product(a1, a2);
      if (pa == kNone) {
        continue;
      }
      for (Index b1 = 0; b1 < static_cast<Index>(nh); ++b1) {
        auto const row = static_cast<std::size_t>(arr(a1, b1)) * n;
        for (Index b2 = 0; b2 < static_cast<Index>(nh); ++b2) {
          auto const pb = h.product(b1, b2);
          if (pb != kNone) {
            r.compose[row + static_cast<std::size_t>(arr(a2, b2))] = arr(pa, pb);
          }
        }
      }
    }
  }
  return r;
}

FiniteGroupoid disjoint_union(std::span<const FiniteGroupoid> parts,
                              std::span<const std::string> prefixes) {
  if (parts.size() != prefixes.size()) {
    throw MismatchError("disjoint_union: one prefix per part required");
  }
  FiniteGroupoid r;
  std::size_t n = 0;
  for (auto const& p : parts) {
    n += p.arrow_count();
  }
  r.compose.assign(n * n, kNone);
  Index arrow_off = 0, obj_off = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto const& p = parts[i];
    auto const pre = prefixes[i] + ":";
    for (auto const& o : p.objects) {
      r.objects.push_back(pre + o);
    }
    for (auto u : p.unit) {
      r.unit.push_back(u + arrow_off);
    }
    auto const m = static_cast<Index>(p.arrow_count());
    for (Index a = 0; a < m; ++a) {
      r.arrows.push_back(pre + p.arrows[a]);
      r.source.push_back(p.source[a] + obj_off);
      r.target.push_back(p.target[a] + obj_off);
      r.inverse.push_back(p.inverse[a] + arrow_off);
      for (Index b = 0; b < m; ++b) {
        auto const v = p.product(a, b);
        if (v != kNone) {
          r.compose[static_cast<std::size_t>(a + arrow_off) * n +
                    static_cast<std::size_t>(b + arrow_off)] = v + arrow_off;
        }
      }
    }
    arrow_off += m;
    obj_off += static_cast<Index>(p.object_count());
  }
  return r;
}

// ---------------------------------------------------------------------------

GroupoidMorphism identity_morphism(const GroupoidPtr& g) {
  GroupoidMorphism m{g, g, {}, {}};
  m.arrow_map.resize(g->arrow_count());
  m.object_map.resize(g->object_count());
  std::iota(m.arrow_map.begin(), m.arrow_map.end(), 0);
  std::iota(m.object_map.begin(), m.object_map.end(), 0);
  return m;
}

GroupoidMorphism isotropy_inclusion(const GroupoidPtr& g, Index x) {
  auto iso = share(isotropy_group(*g, x));
  GroupoidMorphism m{iso, g, g->arrows_between(x, x), {x}};
  return m;
}

ValidationReport validate_morphism(const GroupoidMorphism& m) {
  ValidationReport report;
  auto const& G = *m.domain;
  auto const& H = *m.codomain;
  if (m.arrow_map.size() != G.arrow_count() ||
      m.object_map.size() != G.object_count()) {
    report.add("morphism.table-size", {}, "maps must be total",
               Severity::malformed);
    return report;
  }
  for (Index a = 0; a < static_cast<Index>(G.arrow_count()); ++a) {
    if (!in_range(m.arrow_map[a], H.arrow_count())) {
      report.add("morphism.dangling-id", {G.arrows[a]},
                 "image is not an arrow", Severity::malformed);
    }
  }
  for (Index x = 0; x < static_cast<Index>(G.object_count()); ++x) {
    if (!in_range(m.object_map[x], H.object_count())) {
      report.add("morphism.dangling-id", {G.objects[x]},
                 "image is not an object", Severity::malformed);
    }
  }
  if (!report.ok()) {
    return report;
  }
  auto const& F = m.arrow_map;
  auto const& f = m.object_map;
  auto const n = static_cast<Index>(G.arrow_count());
  for (Index a = 0; a < n; ++a) {
    if (H.source[F[a]] != f[G.source[a]]) {
      report.add("morphism.source", {G.arrows[a]}, "s(F(g)) != f(s(g))");
    }
    if (H.target[F[a]] != f[G.target[a]]) {
      report.add("morphism.target", {G.arrows[a]}, "t(F(g)) != f(t(g))");
    }
  }
  for (Index x = 0; x < static_cast<Index>(G.object_count()); ++x) {
    if (F[G.unit[x]] != H.unit[f[x]]) {
      report.add("morphism.unit", {G.objects[x]}, "F(unit(x)) != unit(f(x))");
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      auto const ab = G.product(a, b);
      if (ab == kNone) {
        continue;
      }
      auto const img = H.product(F[a], F[b]);
      if (img != F[ab]) {
        report.add("morphism.homomorphism", {G.arrows[a], G.arrows[b]},
                   "F(g1 g2) = " + H.arrows[F[ab]] + " but F(g1) F(g2) = " +
                       nm(H.arrows, img));
      }
    }
  }
  for (Index a = 0; a < n; ++a) {
    if (F[G.inverse[a]] != H.inverse[F[a]]) {
      report.add("morphism.inverse", {G.arrows[a]}, "F(g^-1) != F(g)^-1",
                 Severity::derived);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

ValidationReport validate_action(const GroupoidAction& a) {
  ValidationReport report;
  auto const& G = *a.groupoid;
  auto const n = static_cast<Index>(G.arrow_count());
  auto const M = static_cast<Index>(a.carrier_size());
  if (a.momentum.size() != a.carrier_size() ||
      a.act.size() != G.arrow_count() * a.carrier_size()) {
    report.add("action.table-size", {}, "momentum or act table has wrong size",
               Severity::malformed);
    return report;
  }
  for (Index m = 0; m < M; ++m) {
    if (!in_range(a.momentum[m], G.object_count())) {
      report.add("action.dangling-id", {a.carrier[m]},
                 "momentum is not an object", Severity::malformed);
    }
  }
  for (Index g = 0; g < n; ++g) {
    for (Index m = 0; m < M; ++m) {
      auto const v = a.apply(g, m);
      if (v != kNone && !in_range(v, a.carrier_size())) {
        report.add("action.dangling-id", {G.arrows[g], a.carrier[m]},
                   "image is not a carrier point", Severity::malformed);
      }
    }
  }
  if (!report.ok()) {
    return report;
  }
  bool const left = a.side == Side::left;
  auto wit = [&](Index g, Index m) {
    return left ? std::vector<std::string>{G.arrows[g], a.carrier[m]}
                : std::vector<std::string>{a.carrier[m], G.arrows[g]};
  };
  for (Index g = 0; g < n; ++g) {
    for (Index m = 0; m < M; ++m) {
      bool const defined = a.apply(g, m) != kNone;
      bool const dom = a.in_domain(g, m);
      if (defined && !dom) {
        report.add("action.off-domain", wit(g, m),
                   "act defined outside the momentum domain",
                   Severity::malformed);
      } else if (!defined && dom) {
        report.add("action.domain", wit(g, m),
                   "act undefined on a pair of its domain");
      }
    }
  }
  for (Index g = 0; g < n; ++g) {
    for (Index m = 0; m < M; ++m) {
      auto const gm = a.apply(g, m);
      if (gm == kNone || !a.in_domain(g, m)) {
        continue;
      }
      auto const want = left ? G.target[g] : G.source[g];
      if (a.momentum[gm] != want) {
        report.add("action.momentum", wit(g, m),
                   left ? "J(g m) != t(g)" : "J(m g) != s(g)");
      }
    }
  }
  for (Index m = 0; m < M; ++m) {
    auto const r = a.apply(G.unit[a.momentum[m]], m);
    if (r != kNone && r != m) {
      report.add("action.unit", {a.carrier[m]}, "unit(J(m)) does not fix m");
    }
  }
  // Left: g1 (g2 m) = (g1 g2) m. Right: (m g1) g2 = m (g1 g2).
  for (Index g1 = 0; g1 < n; ++g1) {
    for (Index g2 = 0; g2 < n; ++g2) {
      auto const g12 = G.product(g1, g2);
      if (g12 == kNone) {
        continue;
      }
      for (Index m = 0; m < M; ++m) {
        Index lhs = kNone, rhs = kNone;
        if (left) {
          auto const inner = a.apply(g2, m);
          if (inner == kNone) continue;
          lhs = a.apply(g1, inner);
          rhs = a.apply(g12, m);
        } else {
          auto const inner = a.apply(g1, m);
          if (inner == kNone) continue;
          lhs = a.apply(g2, inner);
          rhs = a.apply(g12, m);
        }
        if (lhs != rhs) {
          report.add("action.composition",
                     left ? std::vector<std::string>{G.arrows[g1], G.arrows[g2],
                                                     a.carrier[m]}
                          : std::vector<std::string>{a.carrier[m], G.arrows[g1],
                                                     G.arrows[g2]},
                     "action does not respect composition");
        }
      }
    }
  }
  return report;
}

FreenessCheck is_free(const GroupoidAction& a) {
  auto const& G = *a.groupoid;
  for (Index m = 0; m < static_cast<Index>(a.carrier_size()); ++m) {
    for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
      if (a.in_domain(g, m) && a.apply(g, m) == m &&
          g != G.unit[a.momentum[m]]) {
        return {false, a.side == Side::left
                           ? std::vector<std::string>{G.arrows[g], a.carrier[m]}
                           : std::vector<std::string>{a.carrier[m], G.arrows[g]}};
      }
    }
  }
  return {};
}

TransitivityCheck is_transitive(const GroupoidAction& a) {
  TransitivityCheck r;
  auto const& G = *a.groupoid;
  auto const M = a.carrier_size();
  std::vector<int> hits(M);
  for (Index m = 0; m < static_cast<Index>(M); ++m) {
    std::fill(hits.begin(), hits.end(), 0);
    for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
      if (!a.in_domain(g, m)) continue;
      auto const v = a.apply(g, m);
      if (v != kNone) {
        ++hits[v];
      }
    }
    for (Index w = 0; w < static_cast<Index>(M); ++w) {
      if (hits[w] == 0 && r.holds) {
        r.holds = false;
        r.witness = {a.carrier[m], a.carrier[w]};
      }
      if (hits[w] > 1) {
        r.unique = false;
      }
    }
  }
  return r;
}

Index conjugation_momentum(const FiniteGroupoid& g, Conjugation variant,
                           Index arrow) {
  auto const k = static_cast<Index>(g.object_count());
  bool const bar =
      variant == Conjugation::left_bar || variant == Conjugation::right_bar;
  // J = (t, s); the barred variants use (s, t).
  return bar ? g.source[arrow] * k + g.target[arrow]
             : g.target[arrow] * k + g.source[arrow];
}

GroupoidAction generalized_conjugation(const FiniteGroupoid& g,
                                       Conjugation variant) {
  return generalized_conjugation(g, share(product_groupoid(g, g)), variant);
}

GroupoidAction generalized_conjugation(const FiniteGroupoid& g,
                                       const GroupoidPtr& square,
                                       Conjugation variant) {
  auto const n = static_cast<Index>(g.arrow_count());
  GroupoidAction a;
  a.side = (variant == Conjugation::left || variant == Conjugation::left_bar)
               ? Side::left
               : Side::right;
  a.groupoid = square;
  a.carrier = g.arrows;
  a.momentum.resize(g.arrow_count());
  for (Index x = 0; x < n; ++x) {
    a.momentum[x] = conjugation_momentum(g, variant, x);
  }
  a.act.assign(square->arrow_count() * g.arrow_count(), kNone);
  for (Index g1 = 0; g1 < n; ++g1) {
    for (Index g2 = 0; g2 < n; ++g2) {
      Index const pair = g1 * n + g2;
      for (Index g3 = 0; g3 < n; ++g3) {
        if (!a.in_domain(pair, g3)) {
          continue;
        }
        Index v = kNone;
        switch (variant) {
          case Conjugation::left:
            v = g.mul(g1, g3, g.inverse[g2]);
            break;
          case Conjugation::left_bar:
            v = g.mul(g2, g3, g.inverse[g1]);
            break;
          case Conjugation::right:
            v = g.mul(g.inverse[g1], g3, g2);
            break;
          case Conjugation::right_bar:
            v = g.mul(g.inverse[g2], g3, g1);
            break;
        }
        a.act[static_cast<std::size_t>(pair) * g.arrow_count() +
              static_cast<std::size_t>(g3)] = v;
      }
    }
  }
  return a;
}

ValidationReport validate_equivariant_map(const EquivariantMapWitness& w) {
  ValidationReport report;
  auto const& from = w.from;
  auto const& to = w.to;
  auto const& G = *from.groupoid;
  if (from.side != to.side) {
    report.add("equivariant.side", {}, "actions act from different sides",
               Severity::malformed);
    return report;
  }
  if (w.theta.size() != from.carrier_size() ||
      w.morphism.arrow_map.size() != G.arrow_count() ||
      w.morphism.object_map.size() != G.object_count()) {
    report.add("equivariant.table-size", {}, "maps must be total",
               Severity::malformed);
    return report;
  }
  for (auto v : w.theta) {
    if (!in_range(v, to.carrier_size())) {
      report.add("equivariant.dangling-id", {std::to_string(v)},
                 "image is not a carrier point", Severity::malformed);
      return report;
    }
  }
  for (Index m = 0; m < static_cast<Index>(from.carrier_size()); ++m) {
    if (to.momentum[w.theta[m]] != w.morphism.object_map[from.momentum[m]]) {
      report.add("equivariant.momentum", {from.carrier[m]},
                 "J_N(theta(m)) != f(J_M(m))");
    }
  }
  bool const left = from.side == Side::left;
  for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
    for (Index m = 0; m < static_cast<Index>(from.carrier_size()); ++m) {
      auto const gm = from.apply(g, m);
      if (gm == kNone) continue;
      auto const img = to.apply(w.morphism.arrow_map[g], w.theta[m]);
      if (img != w.theta[gm]) {
        report.add("equivariant.action",
                   left ? std::vector<std::string>{G.arrows[g], from.carrier[m]}
                        : std::vector<std::string>{from.carrier[m], G.arrows[g]},
                   "theta(g m) = " + to.carrier[w.theta[gm]] +
                       " but F(g) theta(m) = " + nm(to.carrier, img));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct HomSearch {
  const FiniteGroupoid& g;
  const FiniteGroupoid& h;
  std::vector<Index> dom;  // isotropy arrows of g
  std::vector<Index> cod;  // isotropy arrows of h
  std::vector<Index> local;  // g arrow -> position in dom
  std::vector<Index> image;  // position in dom -> h arrow or kNone
  bool bijective = false;
  std::vector<bool> used;
  std::vector<std::vector<Index>> found;
  std::size_t limit = 1;

  bool consistent(std::size_t upto) const {
    for (std::size_t i = 0; i <= upto; ++i) {
      for (std::size_t j = 0; j <= upto; ++j) {
        if (i != upto && j != upto) continue;
        auto const p = local[g.mul(dom[i], dom[j])];
        if (image[p] == kNone) continue;
        if (h.mul(image[i], image[j]) != image[p]) return false;
      }
    }
    // Products landing on upto from already-assigned pairs.
    for (std::size_t i = 0; i < upto; ++i) {
      for (std::size_t j = 0; j < upto; ++j) {
        auto const p = static_cast<std::size_t>(local[g.mul(dom[i], dom[j])]);
        if (p == upto && h.mul(image[i], image[j]) != image[upto]) return false;
      }
    }
    return true;
  }

  void run(std::size_t i) {
    if (found.size() >= limit) return;
    if (i == dom.size()) {
      found.push_back(image);
      return;
    }
    for (std::size_t c = 0; c < cod.size(); ++c) {
      if (bijective && used[c]) continue;
      image[i] = cod[c];
      if (consistent(i)) {
        if (bijective) used[c] = true;
        run(i + 1);
        if (bijective) used[c] = false;
      }
      image[i] = kNone;
    }
  }
};

}  // namespace

std::optional<std::vector<Index>> find_group_isomorphism(const FiniteGroupoid& a,
                                                         const FiniteGroupoid& b) {
  if (a.object_count() != 1 || b.object_count() != 1 ||
      a.arrow_count() != b.arrow_count()) {
    return std::nullopt;
  }
  HomSearch s{a, b, a.arrows_between(0, 0), b.arrows_between(0, 0), {}, {}, false, {}, {}, 1};
  s.local.assign(a.arrow_count(), kNone);
  for (std::size_t i = 0; i < s.dom.size(); ++i) s.local[s.dom[i]] = static_cast<Index>(i);
  s.image.assign(s.dom.size(), kNone);
  s.bijective = true;
  s.used.assign(s.cod.size(), false);
  s.limit = 1;
  s.run(0);
  if (s.found.empty()) {
    return std::nullopt;
  }
  return s.found.front();
}

std::vector<std::vector<std::pair<Index, Index>>> group_homomorphisms(
    const FiniteGroupoid& g, Index x, const FiniteGroupoid& h, Index y) {
  HomSearch s{g, h, g.arrows_between(x, x), h.arrows_between(y, y), {}, {}, false, {}, {}, 1};
  s.local.assign(g.arrow_count(), kNone);
  for (std::size_t i = 0; i < s.dom.size(); ++i) s.local[s.dom[i]] = static_cast<Index>(i);
  s.image.assign(s.dom.size(), kNone);
  s.limit = static_cast<std::size_t>(-1);
  s.run(0);
  std::vector<std::vector<std::pair<Index, Index>>> out;
  for (auto const& img : s.found) {
    std::vector<std::pair<Index, Index>> m;
    for (std::size_t i = 0; i < s.dom.size(); ++i) m.emplace_back(s.dom[i], img[i]);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace fgpd
