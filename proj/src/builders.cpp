#include "fgpd/builders.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace fgpd {

namespace {

FiniteGroupoid checked(FiniteGroupoid g) {
  auto report = validate_groupoid(g);
  if (!report.ok()) throw InvalidStructureError(std::move(report));
  return g;
}

std::vector<std::vector<Index>> table_of(std::size_t n, auto&& mul) {
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Index>(mul(i, j));
  }
  return t;
}

}  // namespace

FiniteGroupoid make_group_groupoid(std::vector<std::string> names,
                                   const std::vector<std::vector<Index>>& table) {
  auto const n = names.size();
  if (n == 0 || table.size() != n) {
    throw Error("group table needs one row per element");
  }
  FiniteGroupoid g;
  g.objects = {"*"};
  g.arrows = std::move(names);
  g.source.assign(n, 0);
  g.target.assign(n, 0);
  g.compose.assign(n * n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw Error("group table is not square");
    for (std::size_t j = 0; j < n; ++j) g.compose[i * n + j] = table[i][j];
  }
  Index unit = 0;
  for (std::size_t u = 0; u < n; ++u) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      ok = table[u][x] == static_cast<Index>(x) && table[x][u] == static_cast<Index>(x);
    }
    if (ok) {
      unit = static_cast<Index>(u);
      break;
    }
  }
  g.unit = {unit};
  g.inverse.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (table[x][y] == unit) {
        g.inverse[x] = static_cast<Index>(y);
        break;
      }
    }
  }
  return checked(std::move(g));
}

FiniteGroupoid make_cyclic_group(std::size_t n) {
  if (n == 0) throw Error("cyclic group of order 0");
  std::vector<std::string> names{"e"};
  for (std::size_t i = 1; i < n; ++i) names.push_back(i == 1 ? "a" : "a" + std::to_string(i));
  return make_group_groupoid(names, table_of(n, [n](auto i, auto j) { return (i + j) % n; }));
}

FiniteGroupoid make_klein_group() {
  return make_group_groupoid({"e", "a", "b", "c"},
                             table_of(4, [](auto i, auto j) { return i ^ j; }));
}

FiniteGroupoid make_symmetric_group3() {
  using Perm = std::array<int, 3>;
  auto after = [](const Perm& f, const Perm& g) {
    return Perm{f[g[0]], f[g[1]], f[g[2]]};
  };
  Perm const e{0, 1, 2}, r{1, 2, 0}, s{0, 2, 1};
  std::vector<Perm> const el{e, r, after(r, r), s, after(s, r), after(s, after(r, r))};
  auto index = [&](const Perm& p) {
    return static_cast<std::size_t>(std::find(el.begin(), el.end(), p) - el.begin());
  };
  return make_group_groupoid({"e", "r", "r2", "s", "sr", "sr2"},
                             table_of(6, [&](auto i, auto j) { return index(after(el[i], el[j])); }));
}

FiniteGroupoid make_pair_groupoid(std::size_t n) {
  if (n == 0) throw Error("pair groupoid needs at least one object");
  FiniteGroupoid g;
  auto const k = static_cast<Index>(n);
  for (Index x = 0; x < k; ++x) g.objects.push_back(std::to_string(x));
  for (Index x = 0; x < k; ++x) {
    for (Index y = 0; y < k; ++y) {
      g.arrows.push_back(pair_name(g.objects[x], g.objects[y]));
      g.target.push_back(x);
      g.source.push_back(y);
      g.inverse.push_back(y * k + x);
    }
  }
  for (Index x = 0; x < k; ++x) g.unit.push_back(x * k + x);
  g.compose.assign(n * n * n * n, kNone);
  for (Index a = 0; a < k * k; ++a) {
    for (Index b = 0; b < k * k; ++b) {
      if (g.source[a] == g.target[b]) {
        g.compose[static_cast<std::size_t>(a) * n * n + b] = g.target[a] * k + g.source[b];
      }
    }
  }
  return checked(std::move(g));
}

FiniteGroupoid make_action_groupoid(const FiniteGroupoid& group,
                                    const std::vector<std::string>& carrier,
                                    const std::vector<Index>& act) {
  if (group.object_count() != 1) throw Error("action groupoid needs a group");
  GroupoidAction a;
  a.side = Side::left;
  a.groupoid = share(group);
  a.carrier = carrier;
  a.momentum.assign(carrier.size(), 0);
  a.act = act;
  auto report = validate_action(a);
  if (!report.ok()) throw InvalidStructureError(std::move(report));

  auto const m = static_cast<Index>(carrier.size());
  auto const n = static_cast<Index>(group.arrow_count());
  auto const e = group.unit[0];
  FiniteGroupoid g;
  g.objects = carrier;
  for (Index x = 0; x < n; ++x) {
    for (Index p = 0; p < m; ++p) {
      g.arrows.push_back(pair_name(group.arrows[x], carrier[p]));
      g.source.push_back(p);
      g.target.push_back(a.apply(x, p));
      g.inverse.push_back(group.inverse[x] * m + a.apply(x, p));
    }
  }
  for (Index p = 0; p < m; ++p) g.unit.push_back(e * m + p);
  auto const total = static_cast<std::size_t>(n * m);
  g.compose.assign(total * total, kNone);
  for (Index x1 = 0; x1 < n; ++x1) {
    for (Index p1 = 0; p1 < m; ++p1) {
      for (Index x2 = 0; x2 < n; ++x2) {
        for (Index p2 = 0; p2 < m; ++p2) {
          if (p1 != a.apply(x2, p2)) continue;
          g.compose[static_cast<std::size_t>(x1 * m + p1) * total + x2 * m + p2] =
              group.product(x1, x2) * m + p2;
        }
      }
    }
  }
  return checked(std::move(g));
}

OrdinaryBundle trivial_ordinary_bundle(const FiniteGroupoid& group,
                                       const std::vector<std::string>& base) {
  OrdinaryBundle b;
  b.group = group;
  b.base = base;
  auto const n = static_cast<Index>(group.arrow_count());
  for (Index m = 0; m < static_cast<Index>(base.size()); ++m) {
    for (Index x = 0; x < n; ++x) {
      b.points.push_back(pair_name(base[m], group.arrows[x]));
      b.projection.push_back(m);
    }
  }
  for (Index p = 0; p < static_cast<Index>(b.points.size()); ++p) {
    for (Index x = 0; x < n; ++x) {
      b.act.push_back((p / n) * n + group.product(p % n, x));
    }
  }
  return b;
}

FiniteGroupoid make_gauge_groupoid_example(const OrdinaryBundle& b) {
  auto const& G = b.group;
  if (G.object_count() != 1) throw Error("gauge groupoid example needs a group");
  auto const n = static_cast<Index>(b.points.size());
  auto const k = static_cast<Index>(G.arrow_count());
  if (b.projection.size() != b.points.size() ||
      b.act.size() != static_cast<std::size_t>(n * k)) {
    throw IntegrityError("ordinary bundle tables have the wrong size");
  }
  auto act = [&](Index p, Index g) { return b.act[static_cast<std::size_t>(p * k + g)]; };
  // Principality: each fibre pair is joined by exactly one group element.
  std::vector<Index> div(static_cast<std::size_t>(n * n), kNone);
  for (Index p = 0; p < n; ++p) {
    if (act(p, G.unit[0]) != p) throw IntegrityError("unit does not act trivially");
    for (Index g = 0; g < k; ++g) {
      auto const q = act(p, g);
      if (q < 0 || q >= n || b.projection[q] != b.projection[p]) {
        throw IntegrityError("action leaves the fibre of " + b.points[p]);
      }
      for (Index h = 0; h < k; ++h) {
        if (act(q, h) != act(p, G.product(g, h))) {
          throw IntegrityError("action is not a right action");
        }
      }
      auto& slot = div[static_cast<std::size_t>(p * n + q)];
      if (slot != kNone) throw IntegrityError("action is not free at " + b.points[p]);
      slot = g;
    }
  }
  std::vector<bool> hit(b.base.size(), false);
  for (Index p = 0; p < n; ++p) {
    hit[b.projection[p]] = true;
    for (Index q = 0; q < n; ++q) {
      if (b.projection[p] == b.projection[q] && div[static_cast<std::size_t>(p * n + q)] == kNone) {
        throw IntegrityError("action is not transitive on the fibre of " + b.points[p]);
      }
    }
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw IntegrityError("projection is not surjective");
  }

  // Orbit representative: the least pair (p g, q g).
  std::map<std::pair<Index, Index>, Index> arrow_of_rep;
  std::vector<Index> orbit(static_cast<std::size_t>(n * n));
  std::vector<std::pair<Index, Index>> reps;
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      std::pair<Index, Index> rep{p, q};
      for (Index g = 0; g < k; ++g) rep = std::min(rep, {act(p, g), act(q, g)});
      auto [it, fresh] = arrow_of_rep.emplace(rep, static_cast<Index>(reps.size()));
      if (fresh) reps.push_back(rep);
      orbit[static_cast<std::size_t>(p * n + q)] = it->second;
    }
  }
  auto of = [&](Index p, Index q) { return orbit[static_cast<std::size_t>(p * n + q)]; };
  FiniteGroupoid r;
  r.objects = b.base;
  auto const arrows = reps.size();
  for (auto const& [p, q] : reps) {
    r.arrows.push_back("[" + b.points[p] + "," + b.points[q] + "]");
    r.target.push_back(b.projection[p]);
    r.source.push_back(b.projection[q]);
    r.inverse.push_back(of(q, p));
  }
  for (Index m = 0; m < static_cast<Index>(b.base.size()); ++m) {
    Index p = 0;
    while (b.projection[p] != m) ++p;
    r.unit.push_back(of(p, p));
  }
  r.compose.assign(arrows * arrows, kNone);
  for (std::size_t a1 = 0; a1 < arrows; ++a1) {
    for (std::size_t a2 = 0; a2 < arrows; ++a2) {
      auto const [p, q] = reps[a1];
      auto const [q2, s] = reps[a2];
      if (b.projection[q] != b.projection[q2]) continue;
      // [p, q][q g, s] = [p, s g^-1].
      auto const g = div[static_cast<std::size_t>(q * n + q2)];
      r.compose[a1 * arrows + a2] = of(p, act(s, G.inverse[g]));
    }
  }
  return checked(std::move(r));
}

GroupoidMorphism constant_morphism(const GroupoidPtr& g, const GroupoidPtr& h,
                                   Index to_object) {
  GroupoidMorphism m;
  m.domain = g;
  m.codomain = h;
  m.object_map.assign(g->object_count(), to_object);
  m.arrow_map.assign(g->arrow_count(), h->unit[to_object]);
  return m;
}

std::vector<std::string> fixture_names() {
  return {"z2", "s3", "pair2", "pair3", "z2-swap", "gauge-z2x2"};
}

FiniteGroupoid named_groupoid(const std::string& name) {
  if (name == "z2") return make_cyclic_group(2);
  if (name == "s3") return make_symmetric_group3();
  if (name == "pair2") return make_pair_groupoid(2);
  if (name == "pair3") return make_pair_groupoid(3);
  if (name == "z2-swap") return make_action_groupoid(make_cyclic_group(2), {"0", "1"}, {0, 1, 1, 0});
  if (name == "gauge-z2x2") {
    return make_gauge_groupoid_example(trivial_ordinary_bundle(make_cyclic_group(2), {"0", "1"}));
  }
  throw UnknownIdError("unknown fixture '" + name + "'");
}

}  // namespace fgpd
