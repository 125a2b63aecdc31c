#include "fgpd/hs.hpp"

#include <algorithm>

#include "fgpd/kernels.hpp"

namespace fgpd {

namespace {

bool in_range(Index i, std::size_t n) {
  return i >= 0 && static_cast<std::size_t>(i) < n;
}

std::size_t at(Index a, std::size_t width, Index b) {
  return static_cast<std::size_t>(a) * width + static_cast<std::size_t>(b);
}

void require_shared(const HSMorphism& a, const HSMorphism& b) {
  if (!same_groupoid(a.left, b.left) ||
      !same_groupoid(a.bundle->groupoid, b.bundle->groupoid) ||
      a.bundle->base != b.bundle->base) {
    throw MismatchError("HS morphisms must share both groupoids");
  }
}

}  // namespace

GroupoidAction left_action(const HSMorphism& h) {
  GroupoidAction a;
  a.side = Side::left;
  a.groupoid = h.left;
  a.carrier = h.bundle->points;
  a.momentum = h.bundle->projection;
  a.act = h.left_act;
  return a;
}

ValidationReport validate_hs(const HSMorphism& h) {
  ValidationReport report = validate_groupoid(*h.left);
  if (report.has_malformed()) return report;
  auto const& B = *h.bundle;
  auto const& G = *h.left;
  auto const& H = h.right();
  report.merge(validate_bundle(B));
  if (report.has_malformed()) return report;
  if (B.base != G.objects) {
    report.add("hs.base", {}, "bundle base is not the object set of the left groupoid",
               Severity::malformed);
    return report;
  }
  auto const n = B.size();
  if (h.left_act.size() != G.arrow_count() * n) {
    report.add("hs.table-size", {"left_act"}, "left action table has the wrong size",
               Severity::malformed);
    return report;
  }
  report.merge(validate_action(left_action(h)));
  if (report.has_malformed()) return report;

  Incidence const gi(G);
  Incidence const hi(H);
  for (Index p = 0; p < static_cast<Index>(n); ++p) {
    for (auto g : gi.out_of(B.projection[p])) {
      auto const gp = h.apply_left(g, p);
      if (gp == kNone) continue;
      if (B.momentum[gp] != B.momentum[p]) {
        report.add("hs.momentum-invariant", {G.arrows[g], B.points[p]},
                   "e(g.p) != e(p)");
        continue;
      }
      for (auto a : hi.into(B.momentum[p])) {
        auto const ph = B.apply(p, a);
        auto const lhs = B.apply(gp, a);
        auto const rhs = ph == kNone ? kNone : h.apply_left(g, ph);
        if (lhs == kNone || lhs != rhs) {
          report.add("hs.compatibility", {G.arrows[g], B.points[p], H.arrows[a]},
                     "(g.p).h != g.(p.h)");
        }
      }
    }
  }
  return report;
}

HSMorphism hs_from_groupoid_morphism(const GroupoidMorphism& m) {
  auto const& G = *m.domain;
  auto const& H = *m.codomain;
  auto const b = pullback_bundle(unit_bundle(m.codomain), G.objects, m.object_map);
  // Points (x, h) are listed by x, then h.
  std::vector<Index> index(G.object_count() * H.arrow_count(), kNone);
  {
    Index i = 0;
    for (Index x = 0; x < static_cast<Index>(G.object_count()); ++x) {
      for (Index a = 0; a < static_cast<Index>(H.arrow_count()); ++a) {
        if (H.target[a] == m.object_map[x]) index[at(x, H.arrow_count(), a)] = i++;
      }
    }
  }
  HSMorphism r;
  r.left = m.domain;
  r.left_act.assign(G.arrow_count() * b.size(), kNone);
  for (Index x = 0; x < static_cast<Index>(G.object_count()); ++x) {
    for (Index a = 0; a < static_cast<Index>(H.arrow_count()); ++a) {
      auto const p = index[at(x, H.arrow_count(), a)];
      if (p == kNone) continue;
      for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
        if (G.source[g] != x) continue;
        auto const fa = H.product(m.arrow_map[g], a);
        if (fa == kNone) continue;
        r.left_act[at(g, b.size(), p)] = index[at(G.target[g], H.arrow_count(), fa)];
      }
    }
  }
  r.bundle = share(b);
  return r;
}

HSMorphism hs_product(const HSMorphism& h1, const HSMorphism& h2) {
  auto const& B1 = *h1.bundle;
  auto const& B2 = *h2.bundle;
  auto const& G1 = *h1.left;
  auto const& G2 = *h2.left;
  HSMorphism r;
  r.left = share(product_groupoid(G1, G2));
  r.bundle = share(product_bundle(B1, B2));
  auto const n2 = B2.size();
  auto const n = r.bundle->size();
  auto const a2 = G2.arrow_count();
  r.left_act.assign(r.left->arrow_count() * n, kNone);
  for (Index g1 = 0; g1 < static_cast<Index>(G1.arrow_count()); ++g1) {
    for (Index g2 = 0; g2 < static_cast<Index>(a2); ++g2) {
      auto const g = static_cast<Index>(at(g1, a2, g2));
      for (Index p1 = 0; p1 < static_cast<Index>(B1.size()); ++p1) {
        auto const q1 = h1.apply_left(g1, p1);
        if (q1 == kNone) continue;
        for (Index p2 = 0; p2 < static_cast<Index>(n2); ++p2) {
          auto const q2 = h2.apply_left(g2, p2);
          if (q2 == kNone) continue;
          r.left_act[at(g, n, static_cast<Index>(at(p1, n2, p2)))] =
              static_cast<Index>(at(q1, n2, q2));
        }
      }
    }
  }
  return r;
}

HSMorphism hs_fibred_product(const HSMorphism& h1, const HSMorphism& h2) {
  require_shared(h1, h2);
  auto const& B1 = *h1.bundle;
  auto const& B2 = *h2.bundle;
  HSMorphism r;
  r.left = h1.left;
  r.bundle = share(fibred_product(B1, B2));
  auto const n = r.bundle->size();
  std::vector<Index> index(B1.size() * B2.size(), kNone);
  {
    Index i = 0;
    for (Index p = 0; p < static_cast<Index>(B1.size()); ++p) {
      for (Index q = 0; q < static_cast<Index>(B2.size()); ++q) {
        if (B1.projection[p] == B2.projection[q]) index[at(p, B2.size(), q)] = i++;
      }
    }
  }
  auto const& G = *h1.left;
  r.left_act.assign(G.arrow_count() * n, kNone);
  for (Index p = 0; p < static_cast<Index>(B1.size()); ++p) {
    for (Index q = 0; q < static_cast<Index>(B2.size()); ++q) {
      auto const pq = index[at(p, B2.size(), q)];
      if (pq == kNone) continue;
      for (Index g = 0; g < static_cast<Index>(G.arrow_count()); ++g) {
        auto const gp = h1.apply_left(g, p);
        auto const gq = h2.apply_left(g, q);
        if (gp == kNone || gq == kNone) continue;
        r.left_act[at(g, n, pq)] = index[at(gp, B2.size(), gq)];
      }
    }
  }
  return r;
}

ValidationReport verify_hs_division_properties(const HSMorphism& h) {
  auto const& B = *h.bundle;
  ValidationReport report = verify_division_properties(B);
  if (report.has_malformed()) return report;
  auto const& G = *h.left;
  auto const& H = h.right();
  auto const n = B.size();
  auto const table = kernels::omp::division_table(B);
  Incidence const gi(G);
  for (auto const& fibre : B.fibres()) {
    for (auto p : fibre) {
      for (auto q : fibre) {
        auto const v = table[at(p, n, q)];
        for (auto g : gi.out_of(B.projection[p])) {
          auto const gp = h.apply_left(g, p);
          auto const gq = h.apply_left(g, q);
          bool const pair = gp != kNone && gq != kNone && B.projection[gp] == B.projection[gq];
          auto const w = pair ? table[at(gp, n, gq)] : kNone;
          if (v < 0 || w != v) {
            report.add("hs-division.invariance",
                       {G.arrows[g], B.points[p], B.points[q],
                        w < 0 ? std::string("<none>") : H.arrows[w]},
                       "phi(g p, g q) != phi(p, q)");
          }
        }
      }
    }
  }
  return report;
}

ValidationReport check_left_invariance(const Ggt& k, const HSMorphism& h1,
                                       const HSMorphism& h2) {
  ValidationReport report;
  auto const& B1 = *h1.bundle;
  auto const& B2 = *h2.bundle;
  auto const& G = *h1.left;
  Incidence const gi(G);
  for (Index p1 = 0; p1 < static_cast<Index>(B1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(B2.size()); ++p2) {
      if (B1.projection[p1] != B2.projection[p2]) continue;
      for (auto g : gi.out_of(B1.projection[p1])) {
        auto const a = h1.apply_left(g, p1);
        auto const b = h2.apply_left(g, p2);
        auto const lhs = (a == kNone || b == kNone) ? kNone : k.at(a, b);
        if (lhs == kNone || lhs != k.at(p1, p2)) {
          report.add("hs-ggt.invariance", {G.arrows[g], B1.points[p1], B2.points[p2]},
                     "K(g p1, g p2) != K(p1, p2)");
        }
      }
    }
  }
  return report;
}

ValidationReport check_left_equivariance(const HSMorphismMap& sigma) {
  ValidationReport report;
  auto const& h1 = *sigma.source;
  auto const& h2 = *sigma.target;
  auto const& G = *h1.left;
  auto const& B1 = *h1.bundle;
  Incidence const gi(G);
  for (Index p = 0; p < static_cast<Index>(B1.size()); ++p) {
    for (auto g : gi.out_of(B1.projection[p])) {
      auto const gp = h1.apply_left(g, p);
      if (gp == kNone) continue;
      auto const img = sigma.map[p];
      auto const rhs = in_range(img, h2.bundle->size()) ? h2.apply_left(g, img) : kNone;
      if (sigma.map[gp] != rhs) {
        report.add("hs-morphism.left-equivariance", {G.arrows[g], B1.points[p]},
                   "sigma(g.p) != g.sigma(p)");
      }
    }
  }
  return report;
}

ValidationReport validate_hs_morphism(const HSMorphismMap& sigma) {
  ValidationReport report;
  if (!same_groupoid(sigma.source->left, sigma.target->left)) {
    report.add("hs-morphism.mismatch", {}, "left groupoids differ", Severity::malformed);
    return report;
  }
  report.merge(validate_bundle_morphism(sigma.underlying()));
  if (report.has_malformed()) return report;
  report.merge(check_left_equivariance(sigma));
  return report;
}

ValidationReport validate_hs_ggt(const HSGgt& k) {
  ValidationReport report;
  if (!same_groupoid(k.source->left, k.target->left)) {
    report.add("hs-ggt.mismatch", {}, "left groupoids differ", Severity::malformed);
    return report;
  }
  if (!same_bundle(k.ggt.source, k.source->bundle) ||
      !same_bundle(k.ggt.target, k.target->bundle)) {
    report.add("hs-ggt.mismatch", {}, "transformation is not between these bundles",
               Severity::malformed);
    return report;
  }
  report.merge(validate_ggt(k.ggt));
  if (report.has_malformed()) return report;
  report.merge(check_left_invariance(k.ggt, *k.source, *k.target));
  return report;
}

HSGgt hs_morphism_to_ggt(const HSMorphismMap& sigma) {
  HSGgt r{sigma.source, sigma.target, morphism_to_ggt(sigma.underlying())};
  auto const inv = check_left_invariance(r.ggt, *r.source, *r.target);
  if (!inv.ok()) {
    throw IntegrityError("image of a left-equivariant morphism is not invariant: " +
                         inv.violations().front().message);
  }
  return r;
}

HSMorphismMap hs_ggt_to_morphism(const HSGgt& k) {
  auto const s = ggt_to_morphism(k.ggt);
  HSMorphismMap r{k.source, k.target, s.map};
  auto const eq = check_left_equivariance(r);
  if (!eq.ok()) {
    throw IntegrityError("image of an invariant transformation is not left-equivariant: " +
                         eq.violations().front().message);
  }
  return r;
}

GaugeGroup hs_gauge_group(const HSPtr& h, std::size_t max_elements) {
  auto const all = gauge_group(h->bundle, max_elements);
  auto const& B = *h->bundle;
  auto const& G = *h->left;
  Incidence const gi(G);
  std::vector<GaugeTransformation> kept;
  for (auto const& gt : all.elements) {
    bool ok = true;
    for (Index p = 0; ok && p < static_cast<Index>(B.size()); ++p) {
      for (auto g : gi.out_of(B.projection[p])) {
        auto const gp = h->apply_left(g, p);
        if (gp == kNone || gt.values[gp] != gt.values[p]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) kept.push_back(gt);
  }
  return make_gauge_group(h->bundle, std::move(kept));
}

std::vector<HSMorphismMap> enumerate_hs_morphisms(const HSPtr& h1, const HSPtr& h2,
                                                  const OracleBounds& bounds) {
  require_shared(*h1, *h2);
  std::vector<HSMorphismMap> out;
  for (auto& s : enumerate_bundle_morphisms(h1->bundle, h2->bundle, bounds)) {
    HSMorphismMap m{h1, h2, std::move(s.map)};
    if (check_left_equivariance(m).ok()) out.push_back(std::move(m));
  }
  return out;
}

std::vector<HSGgt> enumerate_hs_ggts(const HSPtr& h1, const HSPtr& h2,
                                     const OracleBounds& bounds) {
  require_shared(*h1, *h2);
  std::vector<HSGgt> out;
  for (auto& k : enumerate_ggts(h1->bundle, h2->bundle, bounds)) {
    if (check_left_invariance(k, *h1, *h2).ok()) out.push_back({h1, h2, std::move(k)});
  }
  return out;
}

GaugeGroupoid build_hs_gauge_groupoid(const std::vector<HSPtr>& hs,
                                      const OracleBounds& bounds) {
  auto const n = hs.size();
  for (std::size_t i = 1; i < n; ++i) require_shared(*hs[0], *hs[i]);
  std::vector<BundlePtr> bundles;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    bundles.push_back(hs[i]->bundle);
    labels.push_back("H" + std::to_string(i));
  }
  std::vector<std::vector<Ggt>> arrows(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (auto& k : enumerate_hs_ggts(hs[i], hs[j], bounds)) {
        arrows[i * n + j].push_back(std::move(k.ggt));
      }
    }
  }
  return assemble_gauge_groupoid(std::move(bundles), std::move(arrows), std::move(labels));
}

GaugeGroupoid build_hs_gauge_groupoid(const std::vector<HSPtr>& hs) {
  return build_hs_gauge_groupoid(hs, OracleBounds::from_env());
}

}  // namespace fgpd
