#include "fgpd/theorems.hpp"

#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>
#include <set>

#include "fgpd/builders.hpp"
#include "fgpd/gauge.hpp"
#include "fgpd/hs.hpp"
#include "fgpd/oracles.hpp"

namespace fgpd {

namespace {

constexpr std::size_t kShownFailures = 5;

class Tally {
 public:
  explicit Tally(TheoremResult& r) : r_(r) {}

  void instance() { ++r_.instances; }
  void expect(bool ok, const std::string& context, const std::string& what) {
    ++r_.checks;
    if (!ok) fail(context + ": " + what);
  }
  void expect(const ValidationReport& report, const std::string& context) {
    ++r_.checks;
    if (!report.ok()) fail(context + ": " + report.violations().front().rule + " " +
                           witness(report.violations().front()));
  }
  void fail(const std::string& line) {
    ++r_.failure_count;
    if (r_.failures.size() < kShownFailures) r_.failures.push_back(line);
  }

 private:
  static std::string witness(const Violation& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      if (i) s += ", ";
      s += v.witness[i];
    }
    return s + "]: " + v.message;
  }
  TheoremResult& r_;
};

// Runs body, turning a library exception into a recorded failure.
void guarded(Tally& t, const std::string& context, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    t.fail(context + ": exception: " + e.what());
  }
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t i) {
  // splitmix64 finaliser over the three inputs.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag * 1000003ULL + i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string ctx(const char* what, std::uint64_t seed) {
  return std::string(what) + " seed=" + std::to_string(seed);
}

GeneratorSpec spec_for(const SuiteOptions& o, std::uint64_t seed) {
  GeneratorSpec s;
  s.seed = seed;
  s.max_total = o.max_size;
  return s;
}

OracleBounds bounds_for(const SuiteOptions& o) {
  OracleBounds b;
  b.max_total = std::max(b.max_total, o.max_size);
  return b;
}

// Unit bundle division is g^-1 h.
void unit_division(Tally& t, const GroupoidPtr& g, const std::string& c) {
  auto const u = unit_bundle(g);
  DivisionMap const phi(u);
  auto const& G = *g;
  bool ok = true;
  for (Index a = 0; a < static_cast<Index>(G.arrow_count()); ++a) {
    for (Index b = 0; b < static_cast<Index>(G.arrow_count()); ++b) {
      if (G.target[a] != G.target[b]) continue;
      ok = ok && phi(a, b) == G.product(G.inverse[a], b);
    }
  }
  t.expect(ok, c, "unit bundle division differs from g^-1 h");
}

std::set<std::vector<Index>> value_set(const std::vector<Ggt>& ks) {
  std::set<std::vector<Index>> s;
  for (auto const& k : ks) s.insert(k.values);
  return s;
}

// ---------------------------------------------------------------------------

void groupoid_axioms(const SuiteOptions& o, TheoremResult& r) {
  Tally t(r);
  for (auto const& name : fixture_names()) {
    guarded(t, name, [&] {
      auto const g = named_groupoid(name);
      t.instance();
      t.expect(validate_groupoid(g), name);
    });
  }
  for (std::size_t i = 0; i < o.groupoids; ++i) {
    auto const seed = derive(o.seed, 1, i);
    auto const c = ctx("groupoid", seed);
    guarded(t, c, [&] {
      GeneratorSpec spec = spec_for(o, seed);
      spec.max_arrows = 16;
      Rng rng(seed);
      auto const g = random_groupoid(rng, spec);
      auto const h = random_groupoid(rng, spec);
      t.instance();
      t.expect(validate_groupoid(g), c);
      t.expect(validate_groupoid(product_groupoid(g, h)), c + " product");
      bool involution = true;
      for (Index a = 0; a < static_cast<Index>(g.arrow_count()); ++a) {
        involution = involution && g.inverse[g.inverse[a]] == a;
      }
      t.expect(involution, c, "inverse is not an involution");
      auto const square = share(product_groupoid(g, g));
      for (auto v : {Conjugation::left, Conjugation::left_bar, Conjugation::right,
                     Conjugation::right_bar}) {
        t.expect(validate_action(generalized_conjugation(g, square, v)), c + " conjugation");
      }
    });
  }
}

void division_map_theorem(const SuiteOptions& o, TheoremResult& r) {
  Tally t(r);
  for (auto const& name : fixture_names()) {
    guarded(t, name, [&] {
      auto const g = share(named_groupoid(name));
      t.instance();
      t.expect(validate_bundle(unit_bundle(g)), name + " unit bundle");
      unit_division(t, g, name);
    });
  }
  for (std::size_t i = 0; i < o.bundles; ++i) {
    auto const seed = derive(o.seed, 2, i);
    auto const c = ctx("bundle", seed);
    guarded(t, c, [&] {
      auto const inst = random_bundle_pair(spec_for(o, seed));
      auto const& b = *inst.first;
      t.instance();
      t.expect(validate_bundle(b), c);
      t.expect(verify_division_properties(b), c);
      DivisionMap const phi(b);
      bool ok = true;
      for (auto const& fibre : b.fibres()) {
        for (auto p : fibre) {
          for (auto q : fibre) ok = ok && b.apply(p, phi(p, q)) == q;
        }
      }
      t.expect(ok, c, "p.phi(p, q) != q");
      unit_division(t, inst.groupoid, c);
    });
  }
}

void bundle_constructions(const SuiteOptions& o, TheoremResult& r) {
  Tally t(r);
  auto const z2 = share(make_cyclic_group(2));
  auto const u2 = unit_bundle(z2);
  for (std::size_t i = 0; i < o.bundles; ++i) {
    auto const seed = derive(o.seed, 3, i);
    auto const c = ctx("bundle", seed);
    guarded(t, c, [&] {
      auto const inst = random_bundle_pair(spec_for(o, seed));
      auto const& b = *inst.first;
      t.instance();
      std::vector<Index> id(b.base.size());
      for (std::size_t m = 0; m < id.size(); ++m) id[m] = static_cast<Index>(m);
      auto const pulled = pullback_bundle(b, b.base, id);
      t.expect(validate_bundle(pulled), c + " pull-back");
      t.expect(pulled.size() == b.size(), c, "identity pull-back changes the size");
      auto const iso = trivialize(b, canonical_section(b));
      t.expect(validate_bundle(iso.trivial), c + " trivial bundle");
      t.expect(validate_bundle_iso(iso), c + " trivialization");
      auto const prod = product_bundle(b, u2);
      t.expect(validate_bundle(prod), c + " product");
      DivisionMap const phi(b), phi2(u2), phip(prod);
      auto const n2 = static_cast<Index>(u2.size());
      auto const a2 = static_cast<Index>(z2->arrow_count());
      bool ok = true;
      for (Index p = 0; p < static_cast<Index>(prod.size()); ++p) {
        for (Index q = 0; q < static_cast<Index>(prod.size()); ++q) {
          if (prod.projection[p] != prod.projection[q]) continue;
          ok = ok && phip(p, q) == phi(p / n2, q / n2) * a2 + phi2(p % n2, q % n2);
        }
      }
      t.expect(ok, c, "product division is not componentwise");
      t.expect(validate_bundle(fibred_product(b, *inst.second)), c + " fibred product");
    });
  }
}

void correspondence(const SuiteOptions& o, TheoremResult& corr, TheoremResult& inv,
                    TheoremResult& div) {
  Tally t(corr), ti(inv), td(div);
  auto const bounds = bounds_for(o);
  for (std::size_t i = 0; i < o.pairs; ++i) {
    auto const seed = derive(o.seed, 4, i);
    auto const c = ctx("pair", seed);
    guarded(t, c, [&] {
      auto const inst = random_bundle_pair(spec_for(o, seed));
      auto const morphisms = enumerate_bundle_morphisms(inst.first, inst.second, bounds);
      auto const ggts = enumerate_ggts(inst.first, inst.second, bounds);
      t.instance();
      t.expect(morphisms.size() == ggts.size(), c,
               std::to_string(morphisms.size()) + " morphisms but " +
                   std::to_string(ggts.size()) + " transformations");
      auto const phi2 = DivisionMap(*inst.second);
      auto const targets = value_set(ggts);
      std::set<std::vector<Index>> images;
      for (auto const& s : morphisms) {
        t.expect(validate_bundle_morphism(s), c);
        auto sorted_map = s.map;
        std::sort(sorted_map.begin(), sorted_map.end());
        t.expect(std::adjacent_find(sorted_map.begin(), sorted_map.end()) == sorted_map.end(),
                 c, "morphism is not injective");
        auto const k = morphism_to_ggt(s, phi2);
        t.expect(validate_ggt(k), c + " image");
        t.expect(targets.count(k.values) == 1, c, "image is not an enumerated transformation");
        t.expect(ggt_to_morphism(k) == s, c, "morphism round trip");
        images.insert(k.values);
        td.instance();
        td.expect(check_division_invariance(s), c);
      }
      t.expect(images == targets, c, "correspondence is not onto");
      for (auto const& k : ggts) {
        t.expect(validate_ggt(k), c);
        t.expect(morphism_to_ggt(ggt_to_morphism(k), phi2) == k, c, "transformation round trip");
      }
    });
    guarded(ti, c, [&] {
      auto const inst = random_bundle_pair(spec_for(o, seed));
      auto const ggts = enumerate_ggts(inst.first, inst.second, bounds);
      if (ggts.empty()) return;
      ti.instance();
      auto const id1 = identity_ggt(inst.first);
      auto const id2 = identity_ggt(inst.second);
      ti.expect(invert_ggt(id1) == id1, c, "identity is not self-inverse");
      for (auto const& k : ggts) {
        auto const kt = invert_ggt(k);
        ti.expect(validate_ggt(kt), c);
        ti.expect(invert_ggt(kt) == k, c, "double inversion");
        auto const s = ggt_to_morphism(k);
        auto const st = ggt_to_morphism(kt);
        ti.expect(compose(st, s) == identity_morphism(inst.first), c, "left inverse");
        ti.expect(compose(s, st) == identity_morphism(inst.second), c, "right inverse");
        ti.expect(star(kt, k) == id1, c, "inverse star on the left");
        ti.expect(star(k, kt) == id2, c, "inverse star on the right");
        ti.expect(star(k, id1) == k && star(id2, k) == k, c, "identity is not a unit");
      }
      // Functoriality on composable pairs P1 -> P2 -> P2.
      auto const autos = enumerate_bundle_morphisms(inst.second, inst.second, bounds);
      auto const morphisms = enumerate_bundle_morphisms(inst.first, inst.second, bounds);
      for (std::size_t a = 0; a < std::min<std::size_t>(autos.size(), 4); ++a) {
        for (std::size_t m = 0; m < std::min<std::size_t>(morphisms.size(), 4); ++m) {
          auto const lhs = morphism_to_ggt(compose(autos[a], morphisms[m]));
          auto const rhs = star(morphism_to_ggt(autos[a]), morphism_to_ggt(morphisms[m]));
          ti.expect(lhs == rhs, c, "composition does not map to the star product");
        }
      }
    });
  }
}

void gauge_group_theorem(const SuiteOptions& o, TheoremResult& r) {
  Tally t(r);
  for (auto const* name : {"z2", "s3"}) {
    guarded(t, name, [&] {
      auto const g = share(named_groupoid(name));
      auto const p = share(unit_bundle(g));
      auto const gg = gauge_group(p);
      t.instance();
      t.expect(gg.order() == g->arrow_count(), name, "gauge group order differs");
      t.expect(find_group_isomorphism(gg.as_groupoid(), *g).has_value(), name,
               "gauge group is not isomorphic to the group");
    });
  }
  auto const bounds = bounds_for(o);
  for (std::size_t i = 0; i < o.pairs; ++i) {
    auto const seed = derive(o.seed, 5, i);
    auto const c = ctx("bundle", seed);
    guarded(t, c, [&] {
      auto const inst = random_bundle_pair(spec_for(o, seed));
      auto const& p = inst.first;
      auto const gg = gauge_group(p);
      auto const ggts = enumerate_ggts(p, p, bounds);
      t.instance();
      t.expect(validate_groupoid(gg.as_groupoid()), c + " gauge group");
      t.expect(gg.order() == ggts.size(), c, "gauge group and self transformations differ in size");
      auto const all = value_set(ggts);
      for (auto const& g : gg.elements) {
        t.expect(validate_gauge_transformation(g), c);
        auto const k = gauge_to_ggt(g);
        t.expect(all.count(k.values) == 1, c, "K_G is not an enumerated transformation");
        t.expect(diagonal(k) == g, c, "diagonal of K_G is not G");
      }
      for (auto const& k : ggts) {
        auto const g = diagonal(k);
        t.expect(validate_gauge_transformation(g), c + " diagonal");
        t.expect(gauge_to_ggt(g) == k, c, "K of the diagonal is not K");
      }
    });
  }
}

void check_isotropy(Tally& t, const GaugeGroupoid& gg, Index i, const GaugeGroup& group,
                    const std::string& c) {
  std::set<std::vector<Index>> diag, elems;
  for (std::size_t a = 0; a < gg.arrows.size(); ++a) {
    if (gg.source[a] == i && gg.target[a] == i) diag.insert(diagonal(gg.arrows[a]).values);
  }
  for (auto const& e : group.elements) elems.insert(e.values);
  t.expect(diag == elems, c, "isotropy differs from the gauge group");
}

void gauge_groupoid_theorem(const SuiteOptions& o, TheoremResult& r) {
  Tally t(r);
  auto bounds = bounds_for(o);
  for (std::size_t i = 0; i < o.families; ++i) {
    auto const seed = derive(o.seed, 6, i);
    auto const c = ctx("family", seed);
    guarded(t, c, [&] {
      GeneratorSpec spec = spec_for(o, seed);
      spec.max_base = 2;
      spec.max_total = std::min<std::size_t>(8, o.max_size);
      spec.max_arrows = 12;
      auto const inst = random_bundle_pair(spec);
      Rng rng(seed);
      std::vector<BundlePtr> family{inst.first, inst.second};
      if (rng.chance(1, 2)) family.push_back(share(random_companion_bundle(rng, *inst.first, spec)));
      auto const gg = build_gauge_groupoid(family, bounds);
      t.instance();
      t.expect(validate_groupoid(gg.exported), c);
      for (Index b = 0; b < static_cast<Index>(family.size()); ++b) {
        check_isotropy(t, gg, b, gauge_group(family[b]), c);
      }
    });
  }
}

void hs_theorems(const SuiteOptions& o, TheoremResult& divr, TheoremResult& corr,
                 TheoremResult& ggr) {
  Tally td(divr), tc(corr), tg(ggr);
  auto const bounds = bounds_for(o);
  for (std::size_t i = 0; i < o.hs; ++i) {
    auto const seed = derive(o.seed, 7, i);
    auto const c = ctx("hs", seed);
    GeneratorSpec spec = spec_for(o, seed);
    HSPairInstance inst;
    try {
      inst = random_hs_pair(spec);
    } catch (const std::exception& e) {
      td.fail(c + ": exception: " + e.what());
      continue;
    }
    guarded(td, c, [&] {
      td.instance();
      td.expect(validate_hs(*inst.first), c);
      td.expect(verify_hs_division_properties(*inst.first), c);
      td.expect(verify_hs_division_properties(*inst.second), c);
      auto const fp = hs_fibred_product(*inst.first, *inst.second);
      td.expect(validate_hs(fp), c + " fibred product");
      auto const z2 = share(make_cyclic_group(2));
      auto const id = hs_from_groupoid_morphism(identity_morphism(z2));
      td.expect(validate_hs(hs_product(*inst.first, id)), c + " product");
    });
    guarded(tc, c, [&] {
      auto const ms = enumerate_hs_morphisms(inst.first, inst.second, bounds);
      auto const ks = enumerate_hs_ggts(inst.first, inst.second, bounds);
      tc.instance();
      tc.expect(ms.size() == ks.size(), c,
                std::to_string(ms.size()) + " HS morphisms but " + std::to_string(ks.size()) +
                    " invariant transformations");
      std::set<std::vector<Index>> targets;
      for (auto const& k : ks) targets.insert(k.ggt.values);
      for (auto const& s : ms) {
        tc.expect(validate_hs_morphism(s), c);
        auto const k = hs_morphism_to_ggt(s);
        tc.expect(validate_hs_ggt(k), c + " image");
        tc.expect(k.ggt == morphism_to_ggt(s.underlying()), c, "HS and bundle maps disagree");
        tc.expect(targets.count(k.ggt.values) == 1, c, "image is not enumerated");
        tc.expect(hs_ggt_to_morphism(k) == s, c, "morphism round trip");
      }
      for (auto const& k : ks) {
        tc.expect(hs_morphism_to_ggt(hs_ggt_to_morphism(k)) == k, c, "transformation round trip");
        HSGgt const kt{k.target, k.source, invert_ggt(k.ggt)};
        tc.expect(validate_hs_ggt(kt), c + " inverse");
      }
    });
    guarded(tg, c, [&] {
      std::vector<HSPtr> family{inst.first, inst.second};
      auto const hg = build_hs_gauge_groupoid(family, bounds);
      tg.instance();
      tg.expect(validate_groupoid(hg.exported), c);
      auto const bg = build_gauge_groupoid({inst.first->bundle, inst.second->bundle}, bounds);
      bool subset = true;
      for (std::size_t a = 0; a < hg.arrows.size(); ++a) {
        // Same positions, so look the arrow up in the matching hom-set.
        bool found = false;
        for (std::size_t b = 0; b < bg.arrows.size() && !found; ++b) {
          found = bg.source[b] == hg.source[a] && bg.target[b] == hg.target[a] &&
                  bg.arrows[b].values == hg.arrows[a].values;
        }
        subset = subset && found;
      }
      tg.expect(subset, c, "HS arrow missing from the bundle gauge groupoid");
      for (Index b = 0; b < 2; ++b) {
        check_isotropy(tg, hg, b, hs_gauge_group(family[b]), c);
      }
    });
  }
}

}  // namespace

std::vector<std::string> theorem_ids() {
  return {"groupoid-axioms",       "division-map",
          "bundle-constructions",  "morphism-ggt-correspondence",
          "ggt-inverse",           "division-invariance",
          "gauge-group-correspondence", "gauge-groupoid",
          "hs-division-invariance", "hs-correspondence",
          "hs-gauge-groupoid"};
}

SuiteReport run_theorem_suite(const SuiteOptions& options) {
  SuiteReport report;
  report.options = options;
  auto const ids = theorem_ids();
  static const char* const statements[] = {
      "validators accept the fixtures and random groupoids, products and conjugations",
      "the division map solves q = p.phi(p, q) and has its four properties",
      "pull-back, trivialization, product and fibred product give principal bundles",
      "bundle morphisms and generalized gauge transformations correspond one to one",
      "inversion and the star product invert morphisms and compose them",
      "bundle morphisms preserve the division map",
      "gauge transformations are the diagonals of self transformations",
      "generalized gauge transformations form a groupoid under star",
      "HS division maps are invariant under the left action",
      "HS morphisms correspond to invariant transformations",
      "invariant transformations form a subgroupoid"};
  report.results.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    report.results[i].id = ids[i];
    report.results[i].statement = statements[i];
  }
  auto& R = report.results;
  groupoid_axioms(options, R[0]);
  division_map_theorem(options, R[1]);
  bundle_constructions(options, R[2]);
  correspondence(options, R[3], R[4], R[5]);
  gauge_group_theorem(options, R[6]);
  gauge_groupoid_theorem(options, R[7]);
  hs_theorems(options, R[8], R[9], R[10]);
  return report;
}

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const TheoremResult& r) { return r.passed(); });
}

std::string SuiteReport::to_text() const {
  std::string out = "theorem suite: seed " + std::to_string(options.seed) + ", max size " +
                    std::to_string(options.max_size) + "\n";
  for (auto const& r : results) {
    out += (r.passed() ? "PASS " : "FAIL ") + r.id + " (instances " +
           std::to_string(r.instances) + ", checks " + std::to_string(r.checks) + ")\n";
    for (auto const& f : r.failures) out += "  " + f + "\n";
    if (r.failure_count > r.failures.size()) {
      out += "  ... " + std::to_string(r.failure_count - r.failures.size()) + " more\n";
    }
  }
  out += passed() ? "all theorems hold\n" : "some theorems failed\n";
  return out;
}

std::string SuiteReport::to_json() const {
  nlohmann::json j;
  j["seed"] = options.seed;
  j["max_size"] = options.max_size;
  j["passed"] = passed();
  j["theorems"] = nlohmann::json::array();
  for (auto const& r : results) {
    j["theorems"].push_back({{"id", r.id},
                             {"statement", r.statement},
                             {"instances", r.instances},
                             {"checks", r.checks},
                             {"passed", r.passed()},
                             {"failure_count", r.failure_count},
                             {"failures", r.failures}});
  }
  return j.dump(2) + "\n";
}

}  // namespace fgpd
