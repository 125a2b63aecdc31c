#include <algorithm>
#include <functional>
#include <numeric>

#include "fgpd/builders.hpp"

namespace fgpd {

namespace {

FiniteGroupoid permute_arrows(const FiniteGroupoid& g, const std::vector<Index>& perm) {
  auto const n = g.arrow_count();
  FiniteGroupoid r;
  r.objects = g.objects;
  r.arrows.resize(n);
  r.source.resize(n);
  r.target.resize(n);
  r.inverse.resize(n);
  r.compose.assign(n * n, kNone);
  for (std::size_t a = 0; a < n; ++a) {
    auto const na = perm[a];
    r.arrows[na] = g.arrows[a];
    r.source[na] = g.source[a];
    r.target[na] = g.target[a];
    r.inverse[na] = perm[g.inverse[a]];
    for (std::size_t b = 0; b < n; ++b) {
      auto const v = g.compose[a * n + b];
      r.compose[static_cast<std::size_t>(na) * n + perm[b]] = v == kNone ? kNone : perm[v];
    }
  }
  for (auto u : g.unit) r.unit.push_back(perm[u]);
  return r;
}

// Component label of each object.
std::vector<Index> components(const FiniteGroupoid& g) {
  std::vector<Index> comp(g.object_count(), kNone);
  Index next = 0;
  for (Index x = 0; x < static_cast<Index>(g.object_count()); ++x) {
    if (comp[x] != kNone) continue;
    for (Index y = 0; y < static_cast<Index>(g.object_count()); ++y) {
      if (!g.arrows_between(x, y).empty()) comp[y] = next;
    }
    ++next;
  }
  return comp;
}

std::vector<std::string> point_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

// Chooses alpha(m) for each base point within the size budget; prefer(m)
// may suggest objects, otherwise any fitting object is drawn.
std::vector<Index> draw_alpha(Rng& rng, const FiniteGroupoid& g, std::size_t base,
                              std::size_t budget,
                              const std::function<std::vector<Index>(std::size_t)>& prefer) {
  std::vector<std::size_t> into(g.object_count());
  for (std::size_t x = 0; x < into.size(); ++x) {
    into[x] = g.arrows_into(static_cast<Index>(x)).size();
  }
  auto const smallest = *std::min_element(into.begin(), into.end());
  std::vector<Index> alpha;
  for (std::size_t m = 0; m < base; ++m) {
    auto const reserve = (base - m - 1) * smallest;
    if (budget < reserve + smallest) {
      throw Error("no bundle over " + std::to_string(base) + " base points fits " +
                  "the size bound");
    }
    auto const room = budget - reserve;
    auto fits = [&](Index x) { return into[x] <= room; };
    std::vector<Index> options;
    if (prefer) {
      for (auto x : prefer(m)) {
        if (fits(x)) options.push_back(x);
      }
    }
    if (options.empty()) {
      for (Index x = 0; x < static_cast<Index>(into.size()); ++x) {
        if (fits(x)) options.push_back(x);
      }
    }
    auto const x = options[rng.below(options.size())];
    alpha.push_back(x);
    budget -= into[x];
  }
  return alpha;
}

PrincipalBundle relabel(Rng& rng, const PrincipalBundle& b) {
  auto const perm = rng.permutation(b.size());
  auto const names = point_names(b.size());
  return permute_points(b, perm, names);
}

}  // namespace

std::vector<Index> Rng::permutation(std::size_t n) {
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
  return p;
}

std::vector<std::string> base_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("m" + std::to_string(i));
  return out;
}

std::vector<FiniteGroupoid> block_group_library() {
  return {make_cyclic_group(1), make_cyclic_group(2), make_cyclic_group(3),
          make_cyclic_group(4), make_klein_group(),   make_symmetric_group3()};
}

FiniteGroupoid random_groupoid(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return random_groupoid(rng, spec);
}

FiniteGroupoid random_groupoid(Rng& rng, const GeneratorSpec& spec) {
  if (spec.max_objects == 0 || spec.max_arrows == 0 || spec.max_group_order == 0 ||
      spec.max_total == 0) {
    throw Error("generator bounds must be positive");
  }
  auto const library = block_group_library();
  auto objects = 1 + rng.below(spec.max_objects);
  auto budget = spec.max_arrows;
  std::vector<FiniteGroupoid> blocks;
  std::vector<std::string> prefixes;
  while (objects > 0 && budget > 0) {
    auto k = 1 + rng.below(objects);
    // Every object of a block has k |group| arrows into it, and a bundle
    // needs room for at least one such fibre.
    while (k > 1 && (k * k > budget || k > spec.max_total)) --k;
    std::vector<std::size_t> options;
    for (std::size_t i = 0; i < library.size(); ++i) {
      auto const order = library[i].arrow_count();
      if (order <= spec.max_group_order && k * k * order <= budget &&
          k * order <= spec.max_total) {
        options.push_back(i);
      }
    }
    auto const& group = library[options[rng.below(options.size())]];
    blocks.push_back(product_groupoid(make_pair_groupoid(k), group));
    prefixes.push_back("b" + std::to_string(blocks.size() - 1));
    objects -= k;
    budget -= k * k * group.arrow_count();
  }
  auto const joined = disjoint_union(blocks, prefixes);
  return permute_arrows(joined, rng.permutation(joined.arrow_count()));
}

PrincipalBundle random_bundle(const GroupoidPtr& g, const std::vector<std::string>& base,
                              const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return random_bundle(rng, g, base, spec);
}

PrincipalBundle random_bundle(Rng& rng, const GroupoidPtr& g,
                              const std::vector<std::string>& base,
                              const GeneratorSpec& spec) {
  auto const alpha = draw_alpha(rng, *g, base.size(), spec.max_total, {});
  return relabel(rng, trivial_bundle(g, base, alpha));
}

PrincipalBundle random_companion_bundle(Rng& rng, const PrincipalBundle& first,
                                        const GeneratorSpec& spec) {
  auto const& g = *first.groupoid;
  auto const comp = components(g);
  auto const fibres = first.fibres();
  auto prefer = [&](std::size_t m) {
    std::vector<Index> out;
    if (fibres[m].empty() || rng.chance(1, 4)) return out;
    auto const c = comp[first.momentum[fibres[m].front()]];
    for (Index x = 0; x < static_cast<Index>(comp.size()); ++x) {
      if (comp[x] == c) out.push_back(x);
    }
    return out;
  };
  auto const alpha = draw_alpha(rng, g, first.base.size(), spec.max_total, prefer);
  return relabel(rng, trivial_bundle(first.groupoid, first.base, alpha));
}

GroupoidMorphism random_groupoid_morphism(Rng& rng, const GroupoidPtr& gp,
                                          const GroupoidPtr& hp) {
  auto const& G = *gp;
  auto const& H = *hp;
  auto const comp = components(G);
  Incidence const hi(H);
  GroupoidMorphism m;
  m.domain = gp;
  m.codomain = hp;
  m.object_map.assign(G.object_count(), kNone);
  m.arrow_map.assign(G.arrow_count(), kNone);
  // Per component: root r, a_x from r to x, psi on G_{r,r}, c_x out of b.
  std::vector<Index> a(G.object_count(), kNone), c(G.object_count(), kNone);
  std::vector<Index> psi(G.arrow_count(), kNone);
  for (Index r = 0; r < static_cast<Index>(G.object_count()); ++r) {
    if (a[r] != kNone) continue;
    auto const b = static_cast<Index>(rng.below(H.object_count()));
    auto const homs = group_homomorphisms(G, r, H, b);
    for (auto const& [from, to] : homs[rng.below(homs.size())]) psi[from] = to;
    auto const out = hi.out_of(b);
    for (Index x = 0; x < static_cast<Index>(G.object_count()); ++x) {
      if (comp[x] != comp[r]) continue;
      auto const between = G.arrows_between(r, x);
      a[x] = x == r ? G.unit[r] : between[rng.below(between.size())];
      c[x] = out[rng.below(out.size())];
      m.object_map[x] = H.target[c[x]];
    }
  }
  for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
    auto const x = G.target[g];
    auto const y = G.source[g];
    auto const local = G.mul(G.inverse[a[x]], G.mul(g, a[y]));
    m.arrow_map[g] = H.mul(c[x], H.mul(psi[local], H.inverse[c[y]]));
  }
  return m;
}

HSMorphism permute_hs(const HSMorphism& h, std::span<const Index> perm,
                      std::span<const std::string> names) {
  auto const n = h.bundle->size();
  auto const k = h.left->arrow_count();
  HSMorphism r;
  r.left = h.left;
  r.bundle = share(permute_points(*h.bundle, perm, names));
  r.left_act.assign(k * n, kNone);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t p = 0; p < n; ++p) {
      auto const v = h.left_act[g * n + p];
      r.left_act[g * n + perm[p]] = v == kNone ? kNone : perm[v];
    }
  }
  return r;
}

HSMorphism random_hs(Rng& rng, const GroupoidPtr& g, const GroupoidPtr& h) {
  auto const base = hs_from_groupoid_morphism(random_groupoid_morphism(rng, g, h));
  auto const perm = rng.permutation(base.bundle->size());
  auto const names = point_names(base.bundle->size());
  return permute_hs(base, perm, names);
}

HSMorphism random_hs(const GroupoidPtr& g, const GroupoidPtr& h, const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return random_hs(rng, g, h);
}

BundlePairInstance random_bundle_pair(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  auto const g = share(random_groupoid(rng, spec));
  std::size_t smallest = spec.max_total;
  for (Index x = 0; x < static_cast<Index>(g->object_count()); ++x) {
    smallest = std::min(smallest, g->arrows_into(x).size());
  }
  auto const cap = std::max<std::size_t>(1, std::min(spec.max_base, spec.max_total / smallest));
  auto const base = base_names(1 + rng.below(cap));
  auto first = share(random_bundle(rng, g, base, spec));
  auto second = share(random_companion_bundle(rng, *first, spec));
  return {g, first, second};
}

HSPairInstance random_hs_pair(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  // Small groupoids on both sides keep the HS bundles within the bound.
  GeneratorSpec left = spec;
  left.max_objects = std::min<std::size_t>(spec.max_objects, 3);
  left.max_arrows = std::min<std::size_t>(spec.max_arrows, 12);
  GeneratorSpec right = spec;
  right.max_objects = std::min<std::size_t>(spec.max_objects, 2);
  right.max_arrows = std::min<std::size_t>(spec.max_arrows, 12);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto const g = share(random_groupoid(rng, left));
    auto const h = share(random_groupoid(rng, right));
    auto const m = random_groupoid_morphism(rng, g, h);
    auto const base = hs_from_groupoid_morphism(m);
    if (base.bundle->size() > spec.max_total) continue;
    auto const relabel_hs = [&](const HSMorphism& x) {
      auto const perm = rng.permutation(x.bundle->size());
      auto const names = point_names(x.bundle->size());
      return permute_hs(x, perm, names);
    };
    auto first = share(relabel_hs(base));
    // Half the time the second morphism comes from the same groupoid
    // morphism, so HS morphisms between the two exist.
    HSMorphism other = rng.chance(1, 2) ? base
                                        : hs_from_groupoid_morphism(
                                              random_groupoid_morphism(rng, g, h));
    if (other.bundle->size() > spec.max_total) continue;
    auto second = share(relabel_hs(other));
    return {g, h, first, second};
  }
  throw Error("no HS instance within the size bound after 1000 attempts");
}

}  // namespace fgpd
