#include "fgpd/gauge.hpp"

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

bool compatible(const PrincipalBundle& a, const PrincipalBundle& b) {
  return same_groupoid(a.groupoid, b.groupoid) && a.base == b.base;
}

void require_compatible(const PrincipalBundle& a, const PrincipalBundle& b) {
  if (!compatible(a, b)) {
    throw MismatchError("bundles must share base and structure groupoid");
  }
}

Index checked_product(const FiniteGroupoid& g, Index a, Index b) {
  auto const r = (a < 0 || b < 0) ? kNone : g.product(a, b);
  if (r == kNone) {
    throw IntegrityError("values " + (a < 0 ? std::string("<none>") : g.arrows[a]) +
                         " and " + (b < 0 ? std::string("<none>") : g.arrows[b]) +
                         " do not compose");
  }
  return r;
}

}  // namespace

ValidationReport validate_bundle_morphism(const BundleMorphism& sigma) {
  ValidationReport report;
  auto const& P1 = *sigma.source;
  auto const& P2 = *sigma.target;
  if (!compatible(P1, P2)) {
    report.add("bundle-morphism.mismatch", {}, "bundles differ in base or groupoid",
               Severity::malformed);
    return report;
  }
  if (sigma.map.size() != P1.size()) {
    report.add("bundle-morphism.table-size", {},
               "map has " + std::to_string(sigma.map.size()) + " entries for " +
                   std::to_string(P1.size()) + " points",
               Severity::malformed);
    return report;
  }
  for (Index p = 0; p < static_cast<Index>(P1.size()); ++p) {
    if (!in_range(sigma.map[p], P2.size())) {
      report.add("bundle-morphism.dangling-id", {P1.points[p]},
                 "image is not a point", Severity::malformed);
    }
  }
  if (!report.ok()) return report;
  auto const& G = *P1.groupoid;
  Incidence const inc(G);
  for (Index p = 0; p < static_cast<Index>(P1.size()); ++p) {
    auto const q = sigma.map[p];
    if (P2.projection[q] != P1.projection[p]) {
      report.add("bundle-morphism.fibre", {P1.points[p], P2.points[q]},
                 "sigma does not preserve the fibre");
    }
    if (P2.momentum[q] != P1.momentum[p]) {
      report.add("bundle-morphism.momentum", {P1.points[p], P2.points[q]},
                 "sigma does not preserve the momentum");
    }
    for (auto g : inc.into(P1.momentum[p])) {
      auto const pg = P1.apply(p, g);
      if (pg == kNone) continue;
      auto const rhs = P2.momentum[q] == G.target[g] ? P2.apply(q, g) : kNone;
      if (sigma.map[pg] != rhs) {
        report.add("bundle-morphism.equivariance", {P1.points[p], G.arrows[g]},
                   "sigma(p.g) != sigma(p).g");
      }
    }
  }
  return report;
}

ValidationReport validate_ggt(const Ggt& k) {
  ValidationReport report;
  auto const& P1 = *k.source;
  auto const& P2 = *k.target;
  if (!compatible(P1, P2)) {
    report.add("ggt.mismatch", {}, "bundles differ in base or groupoid",
               Severity::malformed);
    return report;
  }
  auto const n2 = P2.size();
  if (k.values.size() != P1.size() * n2) {
    report.add("ggt.table-size", {},
               "expected " + std::to_string(P1.size() * n2) + " entries",
               Severity::malformed);
    return report;
  }
  auto const& G = *P1.groupoid;
  for (Index p1 = 0; p1 < static_cast<Index>(P1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(n2); ++p2) {
      auto const v = k.at(p1, p2);
      bool const pair = P1.projection[p1] == P2.projection[p2];
      if (pair && !in_range(v, G.arrow_count())) {
        report.add("ggt.dangling-id", {P1.points[p1], P2.points[p2]},
                   "value on a fibre pair is not an arrow", Severity::malformed);
      } else if (!pair && v != kNone) {
        report.add("ggt.off-domain", {P1.points[p1], P2.points[p2]},
                   "value set on a pair over different base points",
                   Severity::malformed);
      }
    }
  }
  if (!report.ok()) return report;

  Incidence const inc(G);
  for (Index p1 = 0; p1 < static_cast<Index>(P1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(n2); ++p2) {
      if (P1.projection[p1] != P2.projection[p2]) continue;
      auto const v = k.at(p1, p2);
      if (G.source[v] != P1.momentum[p1] || G.target[v] != P2.momentum[p2]) {
        report.add("ggt.endpoints", {P1.points[p1], P2.points[p2], G.arrows[v]},
                   "K(p1, p2) does not run from e1(p1) to e2(p2)");
        continue;
      }
      for (auto g1 : inc.into(P1.momentum[p1])) {
        auto const a = P1.apply(p1, g1);
        auto const vg1 = G.product(v, g1);
        for (auto g2 : inc.into(P2.momentum[p2])) {
          auto const b = P2.apply(p2, g2);
          auto const rhs = vg1 == kNone ? kNone : G.product(G.inverse[g2], vg1);
          auto const lhs = (a == kNone || b == kNone) ? kNone : k.at(a, b);
          if (lhs == kNone || lhs != rhs) {
            report.add("ggt.equivariance",
                       {P1.points[p1], P2.points[p2], G.arrows[g1], G.arrows[g2]},
                       "K(p1 g1, p2 g2) != g2^-1 K(p1, p2) g1");
          }
        }
      }
    }
  }
  return report;
}

ValidationReport validate_gauge_transformation(const GaugeTransformation& gt) {
  ValidationReport report;
  auto const& P = *gt.bundle;
  auto const& G = *P.groupoid;
  if (gt.values.size() != P.size()) {
    report.add("gauge.table-size", {}, "one value per point expected",
               Severity::malformed);
    return report;
  }
  for (Index p = 0; p < static_cast<Index>(P.size()); ++p) {
    if (!in_range(gt.values[p], G.arrow_count())) {
      report.add("gauge.dangling-id", {P.points[p]}, "value is not an arrow",
                 Severity::malformed);
    }
  }
  if (!report.ok()) return report;
  Incidence const inc(G);
  for (Index p = 0; p < static_cast<Index>(P.size()); ++p) {
    auto const v = gt.values[p];
    auto const e = P.momentum[p];
    if (G.source[v] != e || G.target[v] != e) {
      report.add("gauge.isotropy", {P.points[p], G.arrows[v]},
                 "G(p) is not a loop at e(p)");
      continue;
    }
    for (auto g : inc.into(e)) {
      auto const pg = P.apply(p, g);
      auto const vg = G.product(v, g);
      auto const rhs = vg == kNone ? kNone : G.product(G.inverse[g], vg);
      if (pg == kNone || gt.values[pg] != rhs) {
        report.add("gauge.equivariance", {P.points[p], G.arrows[g]},
                   "G(p g) != g^-1 G(p) g");
      }
    }
  }
  return report;
}

Ggt morphism_to_ggt(const BundleMorphism& sigma) {
  return morphism_to_ggt(sigma, DivisionMap(*sigma.target));
}

Ggt morphism_to_ggt(const BundleMorphism& sigma, const DivisionMap& phi2) {
  auto const& P1 = *sigma.source;
  auto const& P2 = *sigma.target;
  require_compatible(P1, P2);
  Ggt k{sigma.source, sigma.target, std::vector<Index>(P1.size() * P2.size(), kNone)};
  for (Index p1 = 0; p1 < static_cast<Index>(P1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(P2.size()); ++p2) {
      if (P1.projection[p1] != P2.projection[p2]) continue;
      k.values[at(p1, P2.size(), p2)] = phi2(p2, sigma.map[p1]);
    }
  }
  return k;
}

BundleMorphism ggt_to_morphism(const Ggt& k) {
  auto const& P1 = *k.source;
  auto const& P2 = *k.target;
  require_compatible(P1, P2);
  auto const f2 = P2.fibres();
  BundleMorphism s{k.source, k.target, std::vector<Index>(P1.size(), kNone)};
  for (Index p1 = 0; p1 < static_cast<Index>(P1.size()); ++p1) {
    auto const& fibre = f2[P1.projection[p1]];
    if (fibre.empty()) {
      throw IntegrityError("target fibre over " + P1.base[P1.projection[p1]] +
                           " is empty");
    }
    Index image = kNone;
    for (auto p2 : fibre) {
      auto const v = k.at(p1, p2);
      auto const q = v < 0 ? kNone : P2.apply(p2, v);
      if (q == kNone || (image != kNone && q != image)) {
        throw IntegrityError("p2 K(p1, p2) depends on p2 at p1 = " + P1.points[p1] +
                             ", p2 = " + P2.points[p2]);
      }
      image = q;
    }
    s.map[p1] = image;
  }
  return s;
}

Ggt invert_ggt(const Ggt& k) {
  auto const& P1 = *k.source;
  auto const& P2 = *k.target;
  auto const& G = *P1.groupoid;
  Ggt r{k.target, k.source, std::vector<Index>(P1.size() * P2.size(), kNone)};
  for (Index p1 = 0; p1 < static_cast<Index>(P1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(P2.size()); ++p2) {
      auto const v = k.at(p1, p2);
      if (v != kNone) r.values[at(p2, P1.size(), p1)] = G.inverse[v];
    }
  }
  return r;
}

Ggt star(const Ggt& k23, const Ggt& k12) {
  if (!same_bundle(k12.target, k23.source)) {
    throw MismatchError("star needs the middle bundles to agree");
  }
  auto const& P1 = *k12.source;
  auto const& P2 = *k12.target;
  auto const& P3 = *k23.target;
  require_compatible(P1, P3);
  auto const& G = *P1.groupoid;
  auto const f2 = P2.fibres();
  Ggt r{k12.source, k23.target, std::vector<Index>(P1.size() * P3.size(), kNone)};
  for (Index p1 = 0; p1 < static_cast<Index>(P1.size()); ++p1) {
    auto const& fibre = f2[P1.projection[p1]];
    for (Index p3 = 0; p3 < static_cast<Index>(P3.size()); ++p3) {
      if (P1.projection[p1] != P3.projection[p3]) continue;
      Index value = kNone;
      for (auto p2 : fibre) {
        auto const v = checked_product(G, k23.at(p2, p3), k12.at(p1, p2));
        if (value != kNone && v != value) {
          throw IntegrityError("star product depends on the middle point at " +
                               P1.points[p1] + ", " + P3.points[p3]);
        }
        value = v;
      }
      if (value == kNone) {
        throw IntegrityError("middle fibre over " + P1.base[P1.projection[p1]] +
                             " is empty");
      }
      r.values[at(p1, P3.size(), p3)] = value;
    }
  }
  return r;
}

Ggt identity_ggt(const BundlePtr& p) { return identity_ggt(p, DivisionMap(*p)); }

Ggt identity_ggt(const BundlePtr& p, const DivisionMap& phi) {
  auto const& P = *p;
  Ggt k{p, p, std::vector<Index>(P.size() * P.size(), kNone)};
  for (Index a = 0; a < static_cast<Index>(P.size()); ++a) {
    for (Index b = 0; b < static_cast<Index>(P.size()); ++b) {
      if (P.projection[a] == P.projection[b]) k.values[at(a, P.size(), b)] = phi(b, a);
    }
  }
  return k;
}

BundleMorphism identity_morphism(const BundlePtr& p) {
  BundleMorphism s{p, p, std::vector<Index>(p->size())};
  for (Index i = 0; i < static_cast<Index>(p->size()); ++i) s.map[i] = i;
  return s;
}

BundleMorphism compose(const BundleMorphism& s23, const BundleMorphism& s12) {
  if (!same_bundle(s12.target, s23.source)) {
    throw MismatchError("composition needs the middle bundles to agree");
  }
  BundleMorphism r{s12.source, s23.target, std::vector<Index>(s12.map.size())};
  for (std::size_t i = 0; i < s12.map.size(); ++i) r.map[i] = s23.map[s12.map[i]];
  return r;
}

Ggt gauge_to_ggt(const GaugeTransformation& gt) {
  auto const& P = *gt.bundle;
  auto const& G = *P.groupoid;
  DivisionMap const phi(P);
  Ggt k{gt.bundle, gt.bundle, std::vector<Index>(P.size() * P.size(), kNone)};
  for (Index p = 0; p < static_cast<Index>(P.size()); ++p) {
    for (Index q = 0; q < static_cast<Index>(P.size()); ++q) {
      if (P.projection[p] != P.projection[q]) continue;
      k.values[at(p, P.size(), q)] =
          checked_product(G, G.inverse[phi(p, q)], gt.values[p]);
    }
  }
  return k;
}

GaugeTransformation diagonal(const Ggt& k) {
  if (!same_bundle(k.source, k.target)) {
    throw MismatchError("diagonal needs a transformation from a bundle to itself");
  }
  GaugeTransformation g{k.source, std::vector<Index>(k.source->size())};
  for (Index p = 0; p < static_cast<Index>(g.values.size()); ++p) g.values[p] = k.at(p, p);
  return g;
}

ValidationReport check_division_invariance(const BundleMorphism& sigma) {
  ValidationReport report;
  auto const& P1 = *sigma.source;
  auto const& P2 = *sigma.target;
  auto const& G = *P1.groupoid;
  auto const t1 = kernels::omp::division_table(P1);
  auto const t2 = kernels::omp::division_table(P2);
  auto const n1 = P1.size(), n2 = P2.size();
  for (auto const& fibre : P1.fibres()) {
    for (auto p : fibre) {
      for (auto q : fibre) {
        auto const sp = sigma.map[p];
        auto const sq = sigma.map[q];
        auto const lhs = t1[at(p, n1, q)];
        auto const rhs = (in_range(sp, n2) && in_range(sq, n2)) ? t2[at(sp, n2, sq)]
                                                                : kNone;
        if (lhs < 0 || rhs != lhs) {
          auto const shown = rhs < 0 ? std::string("<none>") : G.arrows[rhs];
          report.add("division-invariance", {P1.points[p], P1.points[q], shown},
                     "phi2(sigma p, sigma q) != phi1(p, q)");
        }
      }
    }
  }
  return report;
}

std::size_t GaugeGroup::find(const GaugeTransformation& g) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].values == g.values) return i;
  }
  return elements.size();
}

FiniteGroupoid GaugeGroup::as_groupoid() const {
  FiniteGroupoid g;
  auto const n = elements.size();
  g.objects = {"*"};
  for (std::size_t i = 0; i < n; ++i) {
    g.arrows.push_back("G" + std::to_string(i));
    g.source.push_back(0);
    g.target.push_back(0);
    g.inverse.push_back(static_cast<Index>(inverse[i]));
  }
  g.unit = {static_cast<Index>(unit)};
  g.compose.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) g.compose[i] = static_cast<Index>(table[i]);
  return g;
}

GaugeGroup make_gauge_group(const BundlePtr& p, std::vector<GaugeTransformation> elements) {
  auto const& P = *p;
  auto const& G = *P.groupoid;
  GaugeGroup r;
  r.bundle = p;
  r.elements = std::move(elements);
  auto const n = r.elements.size();
  auto missing = [&](const char* what) {
    throw IntegrityError(std::string("gauge transformations are not closed under ") +
                         what);
  };
  GaugeTransformation unit{p, std::vector<Index>(P.size())};
  for (Index i = 0; i < static_cast<Index>(P.size()); ++i) {
    unit.values[i] = G.unit[P.momentum[i]];
  }
  r.unit = r.find(unit);
  if (r.unit == n) missing("the unit");
  r.table.resize(n * n);
  r.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    GaugeTransformation inv{p, r.elements[a].values};
    for (auto& v : inv.values) v = G.inverse[v];
    r.inverse[a] = r.find(inv);
    if (r.inverse[a] == n) missing("inverses");
    for (std::size_t b = 0; b < n; ++b) {
      GaugeTransformation prod{p, std::vector<Index>(P.size())};
      for (std::size_t i = 0; i < P.size(); ++i) {
        prod.values[i] = checked_product(G, r.elements[a].values[i], r.elements[b].values[i]);
      }
      auto const c = r.find(prod);
      if (c == n) missing("products");
      r.table[a * n + b] = c;
    }
  }
  return r;
}

GaugeGroup gauge_group(const BundlePtr& p, std::size_t max_elements) {
  auto const& P = *p;
  auto const& G = *P.groupoid;
  Incidence const inc(G);
  auto const fibres = P.fibres();
  // Per fibre, the value c at the least point r fixes G(r g) = g^-1 c g.
  std::vector<std::vector<std::vector<Index>>> choices(fibres.size());
  for (std::size_t m = 0; m < fibres.size(); ++m) {
    auto const& fibre = fibres[m];
    if (fibre.empty()) continue;
    auto const r = fibre.front();
    auto const e = P.momentum[r];
    for (auto c : G.arrows_between(e, e)) {
      std::vector<Index> vals(P.size(), kNone);
      bool ok = true;
      for (auto g : inc.into(e)) {
        auto const q = P.apply(r, g);
        auto const v = G.product(G.inverse[g], G.product(c, g));
        if (q == kNone || (vals[q] != kNone && vals[q] != v)) {
          ok = false;
          break;
        }
        vals[q] = v;
      }
      for (auto q : fibre) ok = ok && vals[q] != kNone;
      if (ok) choices[m].push_back(std::move(vals));
    }
  }
  std::vector<GaugeTransformation> elements;
  std::size_t total = 1;
  for (auto const& c : choices) total *= std::max<std::size_t>(c.size(), 1);
  if (total > max_elements) {
    throw BoundExceededError("gauge group has more than " + std::to_string(max_elements) +
                             " elements");
  }
  std::vector<std::size_t> pick(fibres.size(), 0);
  for (std::size_t m = 0; m < fibres.size(); ++m) {
    if (!fibres[m].empty() && choices[m].empty()) return make_gauge_group(p, {});
  }
  while (true) {
    GaugeTransformation gt{p, std::vector<Index>(P.size(), kNone)};
    for (std::size_t m = 0; m < fibres.size(); ++m) {
      if (choices[m].empty()) continue;
      for (auto q : fibres[m]) gt.values[q] = choices[m][pick[m]][q];
    }
    if (validate_gauge_transformation(gt).ok()) elements.push_back(std::move(gt));
    std::size_t i = fibres.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (choices[i].empty()) continue;
      if (++pick[i] < choices[i].size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (done) break;
  }
  std::sort(elements.begin(), elements.end(),
            [](const GaugeTransformation& a, const GaugeTransformation& b) {
              return a.values < b.values;
            });
  return make_gauge_group(p, std::move(elements));
}

}  // namespace fgpd
