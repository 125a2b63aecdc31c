#include "fgpd/bundles.hpp"

#include <algorithm>
#include <set>

#include "fgpd/kernels.hpp"

namespace fgpd {

namespace {

bool in_range(Index i, std::size_t n) {
  return i >= 0 && static_cast<std::size_t>(i) < n;
}

std::size_t at(Index p, std::size_t width, Index g) {
  return static_cast<std::size_t>(p) * width + static_cast<std::size_t>(g);
}

bool bundle_well_formed(const PrincipalBundle& b, ValidationReport& report) {
  auto const& G = *b.groupoid;
  auto const n = b.size();
  auto const a = G.arrow_count();
  bool sized = true;
  auto size_check = [&](const char* table, std::size_t have, std::size_t want) {
    if (have != want) {
      report.add("bundle.table-size", {table},
                 "expected " + std::to_string(want) + " entries, found " +
                     std::to_string(have),
                 Severity::malformed);
      sized = false;
    }
  };
  size_check("projection", b.projection.size(), n);
  size_check("momentum", b.momentum.size(), n);
  size_check("act", b.act.size(), n * a);
  if (!sized) return false;

  auto const before = report.size();
  for (std::size_t p = 0; p < n; ++p) {
    if (!in_range(b.projection[p], b.base.size())) {
      report.add("bundle.dangling-id", {"projection", b.points[p]},
                 "projection is not a base point", Severity::malformed);
    }
    if (!in_range(b.momentum[p], G.object_count())) {
      report.add("bundle.dangling-id", {"momentum", b.points[p]},
                 "momentum is not an object", Severity::malformed);
    }
  }
  if (report.size() != before) return false;
  for (Index p = 0; p < static_cast<Index>(n); ++p) {
    for (Index g = 0; g < static_cast<Index>(a); ++g) {
      auto const v = b.apply(p, g);
      if (v == kNone) continue;
      if (!in_range(v, n)) {
        report.add("bundle.dangling-id", {"act", b.points[p], G.arrows[g]},
                   "image is not a point", Severity::malformed);
      } else if (G.target[g] != b.momentum[p]) {
        report.add("bundle.off-domain", {b.points[p], G.arrows[g]},
                   "action defined although target(g) != momentum(p)",
                   Severity::malformed);
      }
    }
  }
  return report.size() == before;
}

// Index of the pair (i, j) among pairs listed in order, kNone if absent.
class PairIndex {
 public:
  PairIndex(std::size_t rows, std::size_t cols)
      : cols_(cols), slot_(rows * cols, kNone) {}
  void set(Index i, Index j, Index v) { slot_[at(i, cols_, j)] = v; }
  Index get(Index i, Index j) const {
    return (i == kNone || j == kNone) ? kNone : slot_[at(i, cols_, j)];
  }

 private:
  std::size_t cols_;
  std::vector<Index> slot_;
};

std::string fibre_name(const PrincipalBundle& b, Index p) {
  return b.base[b.projection[p]];
}

}  // namespace

Index PrincipalBundle::find_point(std::string_view name) const {
  auto it = std::find(points.begin(), points.end(), name);
  if (it == points.end()) {
    throw UnknownIdError("unknown point id '" + std::string(name) + "'");
  }
  return static_cast<Index>(it - points.begin());
}

Index PrincipalBundle::find_base(std::string_view name) const {
  auto it = std::find(base.begin(), base.end(), name);
  if (it == base.end()) {
    throw UnknownIdError("unknown base point id '" + std::string(name) + "'");
  }
  return static_cast<Index>(it - base.begin());
}

std::vector<std::vector<Index>> PrincipalBundle::fibres() const {
  std::vector<std::vector<Index>> out(base.size());
  for (Index p = 0; p < static_cast<Index>(size()); ++p) {
    out[projection[p]].push_back(p);
  }
  return out;
}

bool PrincipalBundle::operator==(const PrincipalBundle& o) const {
  return same_groupoid(groupoid, o.groupoid) && points == o.points &&
         base == o.base && projection == o.projection &&
         momentum == o.momentum && act == o.act;
}

bool same_bundle(const BundlePtr& a, const BundlePtr& b) {
  return a == b || (a && b && *a == *b);
}

ValidationReport validate_bundle(const PrincipalBundle& b) {
  ValidationReport report = validate_groupoid(*b.groupoid);
  if (report.has_malformed() || !bundle_well_formed(b, report)) {
    return report;
  }
  auto const& G = *b.groupoid;
  auto const n = static_cast<Index>(b.size());
  auto const& P = b.points;
  Incidence const inc(G);

  std::vector<bool> hit(b.base.size(), false);
  for (Index p = 0; p < n; ++p) hit[b.projection[p]] = true;
  for (std::size_t m = 0; m < hit.size(); ++m) {
    if (!hit[m]) {
      report.add("bundle.projection-surjective", {b.base[m]}, "empty fibre");
    }
  }

  for (Index p = 0; p < n; ++p) {
    for (auto g : inc.into(b.momentum[p])) {
      auto const q = b.apply(p, g);
      if (q == kNone) {
        report.add("bundle.principal", {fibre_name(b, p), P[p], G.arrows[g]},
                   "action undefined on its domain");
        continue;
      }
      if (b.momentum[q] != G.source[g]) {
        report.add("bundle.momentum", {P[p], G.arrows[g]},
                   "momentum of p.g is not source(g)");
      }
      if (b.projection[q] != b.projection[p]) {
        report.add("bundle.projection-invariant", {P[p], G.arrows[g]},
                   "p.g leaves the fibre of p");
      }
    }
    auto const u = G.unit[b.momentum[p]];
    auto const pu = b.apply(p, u);
    if (pu != kNone && pu != p) {
      report.add("bundle.unit", {P[p]}, "p.unit(momentum(p)) != p");
    }
    for (auto g1 : inc.into(b.momentum[p])) {
      auto const p1 = b.apply(p, g1);
      if (p1 == kNone) continue;
      for (auto g2 : inc.into(G.source[g1])) {
        auto const lhs = b.momentum[p1] == G.target[g2] ? b.apply(p1, g2) : kNone;
        auto const g12 = G.product(g1, g2);
        auto const rhs = g12 == kNone ? kNone : b.apply(p, g12);
        if (lhs != kNone && rhs != kNone && lhs != rhs) {
          report.add("bundle.composition", {P[p], G.arrows[g1], G.arrows[g2]},
                     "(p.g1).g2 != p.(g1 g2)");
        }
      }
    }
  }

  // Free and fibrewise transitive: exactly one g with p.g = q per fibre pair.
  auto const table = kernels::omp::division_table(b);
  for (auto const& fibre : b.fibres()) {
    for (auto p : fibre) {
      for (auto q : fibre) {
        auto const v = table[at(p, b.size(), q)];
        if (v == kNone) {
          report.add("bundle.principal", {fibre_name(b, p), P[p], P[q]},
                     "no arrow moves p to q");
        } else if (v == kernels::kAmbiguous) {
          report.add("bundle.principal", {fibre_name(b, p), P[p], P[q]},
                     "several arrows move p to q");
        }
      }
    }
  }
  return report;
}

GroupoidAction as_right_action(const PrincipalBundle& b) {
  GroupoidAction a;
  a.side = Side::right;
  a.groupoid = b.groupoid;
  a.carrier = b.points;
  a.momentum = b.momentum;
  auto const n = b.size();
  auto const k = b.groupoid->arrow_count();
  a.act.assign(n * k, kNone);
  for (Index p = 0; p < static_cast<Index>(n); ++p) {
    for (Index g = 0; g < static_cast<Index>(k); ++g) {
      a.act[at(g, n, p)] = b.apply(p, g);
    }
  }
  return a;
}

Index division_map(const PrincipalBundle& b, Index p, Index q) {
  if (b.projection[p] != b.projection[q]) {
    throw NotSameFiberError("points " + b.points[p] + " and " + b.points[q] +
                            " lie over different base points");
  }
  Index found = kNone;
  int count = 0;
  for (auto g : b.groupoid->arrows_into(b.momentum[p])) {
    if (b.apply(p, g) == q) {
      found = g;
      ++count;
    }
  }
  if (count != 1) {
    throw IntegrityError("division fails over base point " + fibre_name(b, p) +
                         ": " + std::to_string(count) + " arrows move " +
                         b.points[p] + " to " + b.points[q]);
  }
  return found;
}

DivisionMap::DivisionMap(const PrincipalBundle& b)
    : n_(b.size()), projection_(b.projection), table_(kernels::omp::division_table(b)) {
  for (Index p = 0; p < static_cast<Index>(n_); ++p) {
    for (Index q = 0; q < static_cast<Index>(n_); ++q) {
      if (projection_[p] != projection_[q]) continue;
      auto const v = table_[at(p, n_, q)];
      if (v < 0) {
        throw IntegrityError("division fails over base point " + fibre_name(b, p) +
                             ": " + (v == kNone ? "no arrow" : "several arrows") +
                             " move " + b.points[p] + " to " + b.points[q]);
      }
    }
  }
}

Index DivisionMap::operator()(Index p, Index q) const {
  if (projection_[p] != projection_[q]) {
    throw NotSameFiberError("points #" + std::to_string(p) + " and #" +
                            std::to_string(q) + " lie over different base points");
  }
  return table_[at(p, n_, q)];
}

ValidationReport verify_division_properties(const PrincipalBundle& b) {
  ValidationReport report;
  if (!bundle_well_formed(b, report)) return report;
  auto const& G = *b.groupoid;
  auto const n = b.size();
  auto const& P = b.points;
  auto const& A = G.arrows;
  Incidence const inc(G);
  auto const table = kernels::omp::division_table(b);
  auto phi = [&](Index p, Index q) { return table[at(p, n, q)]; };

  for (auto const& fibre : b.fibres()) {
    for (auto p : fibre) {
      for (auto q : fibre) {
        auto const v = phi(p, q);
        if (v < 0) {
          report.add("division.defining-equation", {P[p], P[q]},
                     v == kNone ? "no solution of q = p.g"
                                : "several solutions of q = p.g");
          continue;
        }
        if (G.target[v] != b.momentum[p] || G.source[v] != b.momentum[q]) {
          report.add("division.endpoints", {P[p], P[q], A[v]},
                     "phi(p, q) does not run from momentum(q) to momentum(p)");
        }
        if (p == q && v != G.unit[b.momentum[p]]) {
          report.add("division.diagonal", {P[p], A[v]}, "phi(p, p) is not a unit");
        }
        auto const w = phi(q, p);
        if (w >= 0 && v != G.inverse[w]) {
          report.add("division.inverse", {P[p], P[q], A[v], A[w]},
                     "phi(p, q) != phi(q, p)^-1");
        }
        for (auto g1 : inc.into(b.momentum[p])) {
          auto const pg = b.apply(p, g1);
          auto const left = G.product(G.inverse[g1], v);
          for (auto g2 : inc.into(b.momentum[q])) {
            auto const qg = b.apply(q, g2);
            if (pg == kNone || qg == kNone || b.projection[pg] != b.projection[qg]) {
              report.add("division.equivariance", {P[p], P[q], A[g1], A[g2]},
                         "p.g1 and q.g2 are not a fibre pair");
              continue;
            }
            auto const lhs = phi(pg, qg);
            auto const rhs = left == kNone ? kNone : G.product(left, g2);
            if (lhs < 0 || lhs != rhs) {
              report.add("division.equivariance", {P[p], P[q], A[g1], A[g2]},
                         "phi(p g1, q g2) != g1^-1 phi(p, q) g2");
            }
          }
        }
      }
    }
  }
  return report;
}

PrincipalBundle unit_bundle(const GroupoidPtr& g) {
  auto const& G = *g;
  auto const n = G.arrow_count();
  PrincipalBundle b;
  b.groupoid = g;
  b.points = G.arrows;
  b.base = G.objects;
  b.projection = G.target;
  b.momentum = G.source;
  b.act.assign(n * n, kNone);
  for (Index p = 0; p < static_cast<Index>(n); ++p) {
    for (Index a = 0; a < static_cast<Index>(n); ++a) {
      if (G.composable(p, a)) b.act[at(p, n, a)] = G.product(p, a);
    }
  }
  return b;
}

PrincipalBundle pullback_bundle(const PrincipalBundle& b,
                                std::span<const std::string> new_base,
                                std::span<const Index> f) {
  if (f.size() != new_base.size()) {
    throw MismatchError("pull-back map and base have different sizes");
  }
  auto const k = b.groupoid->arrow_count();
  PrincipalBundle r;
  r.groupoid = b.groupoid;
  r.base.assign(new_base.begin(), new_base.end());
  PairIndex index(new_base.size(), b.size());
  std::vector<std::pair<Index, Index>> pairs;
  for (Index m = 0; m < static_cast<Index>(new_base.size()); ++m) {
    for (Index p = 0; p < static_cast<Index>(b.size()); ++p) {
      if (b.projection[p] != f[m]) continue;
      index.set(m, p, static_cast<Index>(pairs.size()));
      pairs.emplace_back(m, p);
      r.points.push_back(pair_name(new_base[m], b.points[p]));
      r.projection.push_back(m);
      r.momentum.push_back(b.momentum[p]);
    }
  }
  r.act.assign(pairs.size() * k, kNone);
  for (Index i = 0; i < static_cast<Index>(pairs.size()); ++i) {
    auto const [m, p] = pairs[i];
    for (Index g = 0; g < static_cast<Index>(k); ++g) {
      auto const q = b.apply(p, g);
      if (q != kNone) r.act[at(i, k, g)] = index.get(m, q);
    }
  }
  return r;
}

PrincipalBundle trivial_bundle(const GroupoidPtr& g, std::span<const std::string> base,
                               std::span<const Index> alpha) {
  return pullback_bundle(unit_bundle(g), base, alpha);
}

PrincipalBundle restrict_bundle(const PrincipalBundle& b,
                                std::span<const Index> base_points) {
  auto const k = b.groupoid->arrow_count();
  auto const fibres = b.fibres();
  PrincipalBundle r;
  r.groupoid = b.groupoid;
  std::vector<Index> old_to_new(b.size(), kNone);
  std::vector<Index> new_to_old;
  for (std::size_t i = 0; i < base_points.size(); ++i) {
    auto const m = base_points[i];
    if (!in_range(m, b.base.size())) {
      throw UnknownIdError("base point #" + std::to_string(m) + " out of range");
    }
    r.base.push_back(b.base[m]);
    for (auto p : fibres[m]) {
      old_to_new[p] = static_cast<Index>(new_to_old.size());
      new_to_old.push_back(p);
      r.points.push_back(b.points[p]);
      r.projection.push_back(static_cast<Index>(i));
      r.momentum.push_back(b.momentum[p]);
    }
  }
  r.act.assign(new_to_old.size() * k, kNone);
  for (Index i = 0; i < static_cast<Index>(new_to_old.size()); ++i) {
    for (Index g = 0; g < static_cast<Index>(k); ++g) {
      auto const q = b.apply(new_to_old[i], g);
      if (q != kNone) r.act[at(i, k, g)] = old_to_new[q];
    }
  }
  return r;
}

Section canonical_section(const PrincipalBundle& b) {
  Section s;
  auto const fibres = b.fibres();
  for (Index m = 0; m < static_cast<Index>(fibres.size()); ++m) {
    if (fibres[m].empty()) {
      throw IntegrityError("no point over base point " + b.base[m]);
    }
    s.base_points.push_back(m);
    s.values.push_back(fibres[m].front());
  }
  return s;
}

BundleIso trivialize(const PrincipalBundle& b, const Section& section) {
  if (section.base_points.size() != section.values.size()) {
    throw IntegrityError("section lists " + std::to_string(section.values.size()) +
                         " values for " + std::to_string(section.base_points.size()) +
                         " base points");
  }
  std::set<Index> seen;
  for (std::size_t i = 0; i < section.values.size(); ++i) {
    auto const m = section.base_points[i];
    auto const p = section.values[i];
    if (!in_range(m, b.base.size()) || !seen.insert(m).second) {
      throw IntegrityError("section base point #" + std::to_string(m) +
                           " is out of range or repeated");
    }
    if (!in_range(p, b.size()) || b.projection[p] != m) {
      throw IntegrityError("section value over " + b.base[m] +
                           " does not lie in that fibre");
    }
  }
  DivisionMap const phi(b);
  BundleIso iso;
  iso.restricted = restrict_bundle(b, section.base_points);
  std::vector<std::string> names;
  std::vector<Index> alpha;
  for (std::size_t i = 0; i < section.values.size(); ++i) {
    names.push_back(b.base[section.base_points[i]]);
    alpha.push_back(b.momentum[section.values[i]]);
  }
  iso.trivial = trivial_bundle(b.groupoid, names, alpha);

  // Trivial points are the pairs (m, g) with alpha(m) = t(g), ordered by m
  // then g, exactly as pullback_bundle lists them.
  auto const& G = *b.groupoid;
  auto const k = G.arrow_count();
  PairIndex trivial_index(names.size(), k);
  std::vector<Index> arrow_of;
  for (Index m = 0; m < static_cast<Index>(names.size()); ++m) {
    for (Index g = 0; g < static_cast<Index>(k); ++g) {
      if (G.target[g] != alpha[m]) continue;
      trivial_index.set(m, g, static_cast<Index>(arrow_of.size()));
      arrow_of.push_back(g);
    }
  }
  std::vector<Index> original(iso.restricted.size());
  {
    Index i = 0;
    auto const fibres = b.fibres();
    for (auto m : section.base_points) {
      for (auto p : fibres[m]) original[i++] = p;
    }
  }
  std::vector<Index> restricted_of(b.size(), kNone);
  for (Index i = 0; i < static_cast<Index>(original.size()); ++i) {
    restricted_of[original[i]] = i;
  }

  iso.forward.resize(iso.restricted.size());
  for (Index i = 0; i < static_cast<Index>(original.size()); ++i) {
    auto const m = iso.restricted.projection[i];
    iso.forward[i] = trivial_index.get(m, phi(section.values[m], original[i]));
  }
  iso.backward.resize(iso.trivial.size());
  for (Index t = 0; t < static_cast<Index>(iso.trivial.size()); ++t) {
    auto const m = iso.trivial.projection[t];
    auto const g = arrow_of[t];
    auto const q = b.apply(section.values[m], g);
    iso.backward[t] = q == kNone ? kNone : restricted_of[q];
  }
  return iso;
}

ValidationReport validate_bundle_iso(const BundleIso& iso) {
  ValidationReport report;
  auto const& R = iso.restricted;
  auto const& T = iso.trivial;
  if (iso.forward.size() != R.size() || iso.backward.size() != T.size()) {
    report.add("iso.table-size", {}, "maps do not match the bundle sizes",
               Severity::malformed);
    return report;
  }
  auto check = [&](const PrincipalBundle& from, const PrincipalBundle& to,
                   const std::vector<Index>& f, const std::vector<Index>& back,
                   const char* dir) {
    auto const k = from.groupoid->arrow_count();
    for (Index p = 0; p < static_cast<Index>(from.size()); ++p) {
      auto const q = f[p];
      if (!in_range(q, to.size())) {
        report.add("iso.table-size", {dir, from.points[p]}, "image out of range",
                   Severity::malformed);
        continue;
      }
      if (back[q] != p) {
        report.add("iso.inverse", {dir, from.points[p]}, "maps are not mutually inverse");
      }
      if (from.base[from.projection[p]] != to.base[to.projection[q]]) {
        report.add("iso.fibre", {dir, from.points[p]}, "map leaves the fibre");
      }
      if (from.momentum[p] != to.momentum[q]) {
        report.add("iso.momentum", {dir, from.points[p]}, "map changes momentum");
      }
      for (Index g = 0; g < static_cast<Index>(k); ++g) {
        auto const pg = from.apply(p, g);
        if (pg == kNone) continue;
        if (to.apply(q, g) != f[pg]) {
          report.add("iso.equivariance", {dir, from.points[p], from.groupoid->arrows[g]},
                     "f(p.g) != f(p).g");
        }
      }
    }
  };
  check(R, T, iso.forward, iso.backward, "forward");
  if (report.has_malformed()) return report;
  check(T, R, iso.backward, iso.forward, "backward");
  return report;
}

PrincipalBundle product_bundle(const PrincipalBundle& b1, const PrincipalBundle& b2) {
  auto const& G1 = *b1.groupoid;
  auto const& G2 = *b2.groupoid;
  PrincipalBundle r;
  r.groupoid = share(product_groupoid(G1, G2));
  auto const n2 = b2.size();
  auto const a1 = G1.arrow_count(), a2 = G2.arrow_count();
  auto const k = a1 * a2;
  auto const x2 = G2.object_count();
  for (auto const& m1 : b1.base) {
    for (auto const& m2 : b2.base) r.base.push_back(pair_name(m1, m2));
  }
  for (Index p1 = 0; p1 < static_cast<Index>(b1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(n2); ++p2) {
      r.points.push_back(pair_name(b1.points[p1], b2.points[p2]));
      r.projection.push_back(
          static_cast<Index>(at(b1.projection[p1], b2.base.size(), b2.projection[p2])));
      r.momentum.push_back(static_cast<Index>(at(b1.momentum[p1], x2, b2.momentum[p2])));
    }
  }
  r.act.assign(r.points.size() * k, kNone);
  for (Index p1 = 0; p1 < static_cast<Index>(b1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(n2); ++p2) {
      auto const p = static_cast<Index>(at(p1, n2, p2));
      for (Index g1 = 0; g1 < static_cast<Index>(a1); ++g1) {
        auto const q1 = b1.apply(p1, g1);
        if (q1 == kNone) continue;
        for (Index g2 = 0; g2 < static_cast<Index>(a2); ++g2) {
          auto const q2 = b2.apply(p2, g2);
          if (q2 == kNone) continue;
          r.act[at(p, k, static_cast<Index>(at(g1, a2, g2)))] =
              static_cast<Index>(at(q1, n2, q2));
        }
      }
    }
  }
  return r;
}

PrincipalBundle fibred_product(const PrincipalBundle& b1, const PrincipalBundle& b2) {
  return fibred_product(b1, b2, share(product_groupoid(*b1.groupoid, *b2.groupoid)));
}

PrincipalBundle fibred_product(const PrincipalBundle& b1, const PrincipalBundle& b2,
                               const GroupoidPtr& square) {
  if (!same_groupoid(b1.groupoid, b2.groupoid)) {
    throw MismatchError("fibred product needs a common structure groupoid");
  }
  if (b1.base != b2.base) {
    throw MismatchError("fibred product needs a common base");
  }
  auto const& G = *b1.groupoid;
  auto const a = G.arrow_count();
  auto const x = G.object_count();
  if (square->arrow_count() != a * a || square->object_count() != x * x) {
    throw MismatchError("square groupoid does not match the structure groupoid");
  }
  PrincipalBundle r;
  r.groupoid = square;
  r.base = b1.base;
  PairIndex index(b1.size(), b2.size());
  std::vector<std::pair<Index, Index>> pairs;
  for (Index p = 0; p < static_cast<Index>(b1.size()); ++p) {
    for (Index q = 0; q < static_cast<Index>(b2.size()); ++q) {
      if (b1.projection[p] != b2.projection[q]) continue;
      index.set(p, q, static_cast<Index>(pairs.size()));
      pairs.emplace_back(p, q);
      r.points.push_back(pair_name(b1.points[p], b2.points[q]));
      r.projection.push_back(b1.projection[p]);
      r.momentum.push_back(static_cast<Index>(at(b1.momentum[p], x, b2.momentum[q])));
    }
  }
  auto const k = a * a;
  r.act.assign(pairs.size() * k, kNone);
  for (Index i = 0; i < static_cast<Index>(pairs.size()); ++i) {
    auto const [p, q] = pairs[i];
    for (Index g1 = 0; g1 < static_cast<Index>(a); ++g1) {
      auto const pg = b1.apply(p, g1);
      if (pg == kNone) continue;
      for (Index g2 = 0; g2 < static_cast<Index>(a); ++g2) {
        auto const qg = b2.apply(q, g2);
        if (qg == kNone) continue;
        r.act[at(i, k, static_cast<Index>(at(g1, a, g2)))] = index.get(pg, qg);
      }
    }
  }
  return r;
}

PrincipalBundle permute_points(const PrincipalBundle& b, std::span<const Index> perm,
                               std::span<const std::string> names) {
  auto const n = b.size();
  auto const k = b.groupoid->arrow_count();
  if (perm.size() != n || (!names.empty() && names.size() != n)) {
    throw MismatchError("permutation does not match the number of points");
  }
  std::vector<bool> used(n, false);
  for (auto v : perm) {
    if (!in_range(v, n) || used[v]) {
      throw Error("point map is not a permutation");
    }
    used[v] = true;
  }
  PrincipalBundle r;
  r.groupoid = b.groupoid;
  r.base = b.base;
  r.points.resize(n);
  r.projection.resize(n);
  r.momentum.resize(n);
  r.act.assign(n * k, kNone);
  for (Index p = 0; p < static_cast<Index>(n); ++p) {
    auto const np = perm[p];
    r.points[np] = names.empty() ? b.points[p] : names[np];
    r.projection[np] = b.projection[p];
    r.momentum[np] = b.momentum[p];
    for (Index g = 0; g < static_cast<Index>(k); ++g) {
      auto const q = b.apply(p, g);
      r.act[at(np, k, g)] = q == kNone ? kNone : perm[q];
    }
  }
  return r;
}

}  // namespace fgpd
