#include <algorithm>

#include "fgpd/gauge.hpp"
#include "fgpd/kernels.hpp"
#include "fgpd/oracles.hpp"

namespace fgpd {

Index GaugeGroupoid::bundle_index(const BundlePtr& p) const {
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (same_bundle(bundles[i], p)) return static_cast<Index>(i);
  }
  return kNone;
}

Index GaugeGroupoid::find(const Ggt& k) const {
  auto const s = bundle_index(k.source);
  auto const t = bundle_index(k.target);
  if (s == kNone || t == kNone) return kNone;
  auto const hom = intern_.find({s, t});
  if (hom == intern_.end()) return kNone;
  auto const it = hom->second.find(k.values);
  return it == hom->second.end() ? kNone : it->second;
}

GaugeGroupoid assemble_gauge_groupoid(std::vector<BundlePtr> bundles,
                                      std::vector<std::vector<Ggt>> arrows_by_pair,
                                      std::vector<std::string> labels) {
  auto const n = bundles.size();
  if (arrows_by_pair.size() != n * n || labels.size() != n) {
    throw MismatchError("gauge groupoid tables do not match the bundle list");
  }
  GaugeGroupoid r;
  r.bundles = std::move(bundles);
  auto& E = r.exported;
  E.objects = std::move(labels);
  for (Index i = 0; i < static_cast<Index>(n); ++i) {
    for (Index j = 0; j < static_cast<Index>(n); ++j) {
      auto& hom = r.intern_[{i, j}];
      Index local = 0;
      for (auto& k : arrows_by_pair[static_cast<std::size_t>(i) * n + j]) {
        auto const id = static_cast<Index>(r.arrows.size());
        if (!hom.emplace(k.values, id).second) continue;
        E.arrows.push_back("K[" + E.objects[i] + "," + E.objects[j] + "]" +
                           std::to_string(local++));
        r.source.push_back(i);
        r.target.push_back(j);
        r.arrows.push_back(std::move(k));
      }
    }
  }
  E.source = r.source;
  E.target = r.target;

  // Look up by position, so that a bundle listed twice keeps two objects.
  kernels::ArrowLookup lookup = [&r](const Ggt& k, Index s, Index t) {
    auto const hom = r.intern_.find({s, t});
    if (hom == r.intern_.end()) return kNone;
    auto const it = hom->second.find(k.values);
    return it == hom->second.end() ? kNone : it->second;
  };
  for (Index i = 0; i < static_cast<Index>(n); ++i) {
    auto const u = lookup(identity_ggt(r.bundles[i]), i, i);
    if (u == kNone) {
      throw IntegrityError("identity transformation of " + E.objects[i] +
                           " is missing from the arrows");
    }
    E.unit.push_back(u);
  }
  for (std::size_t a = 0; a < r.arrows.size(); ++a) {
    auto const inv = lookup(invert_ggt(r.arrows[a]), r.target[a], r.source[a]);
    if (inv == kNone) {
      throw IntegrityError("inverse of " + E.arrows[a] + " is missing from the arrows");
    }
    E.inverse.push_back(inv);
  }
  E.compose = kernels::omp::star_table(r.arrows, r.source, r.target, lookup);
  return r;
}

GaugeGroupoid build_gauge_groupoid(const std::vector<BundlePtr>& bundles,
                                   const OracleBounds& bounds) {
  auto const n = bundles.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (!same_groupoid(bundles[0]->groupoid, bundles[i]->groupoid) ||
        bundles[0]->base != bundles[i]->base) {
      throw MismatchError("gauge groupoid needs a common base and structure groupoid");
    }
  }
  std::vector<std::vector<Ggt>> arrows(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      arrows[i * n + j] = enumerate_ggts(bundles[i], bundles[j], bounds);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("P" + std::to_string(i));
  return assemble_gauge_groupoid(bundles, std::move(arrows), std::move(labels));
}

GaugeGroupoid build_gauge_groupoid(const std::vector<BundlePtr>& bundles) {
  return build_gauge_groupoid(bundles, OracleBounds::from_env());
}

}  // namespace fgpd
