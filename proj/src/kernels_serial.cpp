#include "fgpd/kernels.hpp"

namespace fgpd::kernels::serial {

std::vector<Triple> associativity_failures(const FiniteGroupoid& g) {
  std::vector<Triple> out;
  Incidence const inc(g);
  auto const n = static_cast<Index>(g.arrow_count());
  for (Index g1 = 0; g1 < n; ++g1) {
    for (auto g2 : inc.into(g.source[g1])) {
      auto const p12 = g.product(g1, g2);
      if (p12 == kNone) continue;
      for (auto g3 : inc.into(g.source[g2])) {
        auto const p23 = g.product(g2, g3);
        if (p23 == kNone) continue;
        auto const lhs = g.product(p12, g3);
        auto const rhs = g.product(g1, p23);
        if (lhs != kNone && rhs != kNone && lhs != rhs) {
          out.push_back({g1, g2, g3});
        }
      }
    }
  }
  return out;
}

std::vector<Index> division_table(const PrincipalBundle& b) {
  auto const n = b.size();
  std::vector<Index> table(n * n, kNone);
  Incidence const inc(*b.groupoid);
  for (Index p = 0; p < static_cast<Index>(n); ++p) {
    for (auto g : inc.into(b.momentum[p])) {
      auto const q = b.apply(p, g);
      if (q == kNone || b.projection[q] != b.projection[p]) continue;
      auto& slot = table[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)];
      slot = slot == kNone ? g : kAmbiguous;
    }
  }
  return table;
}

FibreCandidates morphism_fibre_candidates(const PrincipalBundle& p1,
                                          const PrincipalBundle& p2) {
  auto const f1 = p1.fibres();
  auto const f2 = p2.fibres();
  Incidence const inc(*p1.groupoid);
  FibreCandidates out(f1.size());
  for (std::size_t m = 0; m < f1.size(); ++m) {
    out[m] = morphism_candidates_at(p1, p2, f1[m], f2[m], inc);
  }
  return out;
}

FibreCandidates ggt_fibre_candidates(const PrincipalBundle& p1,
                                     const PrincipalBundle& p2) {
  auto const f1 = p1.fibres();
  auto const f2 = p2.fibres();
  Incidence const inc(*p1.groupoid);
  FibreCandidates out(f1.size());
  for (std::size_t m = 0; m < f1.size(); ++m) {
    out[m] = ggt_candidates_at(p1, p2, f1[m], f2[m], inc);
  }
  return out;
}

std::vector<Index> star_table(std::span<const Ggt> arrows,
                              std::span<const Index> source,
                              std::span<const Index> target,
                              const ArrowLookup& lookup) {
  auto const n = arrows.size();
  std::vector<Index> table(n * n, kNone);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (target[b] != source[a]) continue;
      table[a * n + b] = lookup(star(arrows[a], arrows[b]), source[b], target[a]);
    }
  }
  return table;
}

}  // namespace fgpd::kernels::serial
