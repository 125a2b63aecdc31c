#include "fgpd/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "fgpd/kernels.hpp"

namespace fgpd {

namespace {

void check_pair(const PrincipalBundle& a, const PrincipalBundle& b,
                const OracleBounds& bounds) {
  if (!same_groupoid(a.groupoid, b.groupoid) || a.base != b.base) {
    throw MismatchError("bundles must share base and structure groupoid");
  }
  check_bounds(a, bounds);
  check_bounds(b, bounds);
}

// Number of combinations, throwing once it passes the bound.
std::size_t count_product(const kernels::FibreCandidates& c, std::size_t bound) {
  std::size_t total = 1;
  for (auto const& fibre : c) {
    if (fibre.empty()) return 0;
    total *= fibre.size();
    if (total > bound) {
      throw BoundExceededError("enumeration would list more than " +
                               std::to_string(bound) + " results");
    }
  }
  return total;
}

// Calls emit with one choice per fibre, the first fibre varying slowest.
template <class Emit>
void for_each_choice(const kernels::FibreCandidates& c, Emit&& emit) {
  std::vector<std::size_t> pick(c.size(), 0);
  while (true) {
    emit(pick);
    std::size_t i = c.size();
    while (i > 0) {
      --i;
      if (++pick[i] < c[i].size()) break;
      pick[i] = 0;
      if (i == 0) return;
    }
    if (c.empty()) return;
  }
}

}  // namespace

OracleBounds OracleBounds::parse(const std::string& text) {
  OracleBounds b;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto const colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error("oracle bound '" + item + "' is not key:value");
    }
    auto const key = item.substr(0, colon);
    auto const text_value = item.substr(colon + 1);
    char* end = nullptr;
    auto const v = std::strtoull(text_value.c_str(), &end, 10);
    if (text_value.empty() || *end != '\0' || v == 0) {
      throw Error("oracle bound '" + item + "' needs a positive integer");
    }
    if (key == "total") {
      b.max_total = v;
    } else if (key == "arrows") {
      b.max_arrows = v;
    } else if (key == "base") {
      b.max_base = v;
    } else if (key == "results") {
      b.max_results = v;
    } else {
      throw Error("unknown oracle bound '" + key + "'");
    }
  }
  return b;
}

OracleBounds OracleBounds::from_env() {
  char const* v = std::getenv("GAUGE_ORACLE_BOUNDS");
  return v ? parse(v) : OracleBounds{};
}

void check_bounds(const PrincipalBundle& b, const OracleBounds& bounds) {
  auto fail = [](const char* what, std::size_t have, std::size_t limit) {
    throw BoundExceededError(std::string(what) + " " + std::to_string(have) +
                             " exceeds the oracle bound " + std::to_string(limit));
  };
  if (b.size() > bounds.max_total) fail("bundle size", b.size(), bounds.max_total);
  if (b.groupoid->arrow_count() > bounds.max_arrows) {
    fail("arrow count", b.groupoid->arrow_count(), bounds.max_arrows);
  }
  if (b.base.size() > bounds.max_base) fail("base size", b.base.size(), bounds.max_base);
}

std::vector<BundleMorphism> enumerate_bundle_morphisms(const BundlePtr& p1,
                                                       const BundlePtr& p2,
                                                       const OracleBounds& bounds) {
  check_pair(*p1, *p2, bounds);
  auto const cands = kernels::omp::morphism_fibre_candidates(*p1, *p2);
  std::vector<BundleMorphism> out;
  if (count_product(cands, bounds.max_results) == 0) return out;
  auto const fibres = p1->fibres();
  for_each_choice(cands, [&](const std::vector<std::size_t>& pick) {
    BundleMorphism s{p1, p2, std::vector<Index>(p1->size(), kNone)};
    for (std::size_t m = 0; m < fibres.size(); ++m) {
      auto const& image = cands[m][pick[m]];
      for (std::size_t i = 0; i < fibres[m].size(); ++i) {
        s.map[fibres[m][i]] = image[i];
      }
    }
    out.push_back(std::move(s));
  });
  std::sort(out.begin(), out.end(),
            [](const BundleMorphism& a, const BundleMorphism& b) { return a.map < b.map; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<BundleMorphism> enumerate_bundle_morphisms(const BundlePtr& p1,
                                                       const BundlePtr& p2) {
  return enumerate_bundle_morphisms(p1, p2, OracleBounds::from_env());
}

std::vector<Ggt> enumerate_ggts(const BundlePtr& p1, const BundlePtr& p2,
                                const OracleBounds& bounds) {
  check_pair(*p1, *p2, bounds);
  auto const cands = kernels::omp::ggt_fibre_candidates(*p1, *p2);
  std::vector<Ggt> out;
  if (count_product(cands, bounds.max_results) == 0) return out;
  auto const f1 = p1->fibres();
  auto const f2 = p2->fibres();
  auto const n2 = p2->size();
  for_each_choice(cands, [&](const std::vector<std::size_t>& pick) {
    Ggt k{p1, p2, std::vector<Index>(p1->size() * n2, kNone)};
    for (std::size_t m = 0; m < f1.size(); ++m) {
      auto const& vals = cands[m][pick[m]];
      auto const w = f2[m].size();
      for (std::size_t i = 0; i < f1[m].size(); ++i) {
        for (std::size_t j = 0; j < w; ++j) {
          k.values[static_cast<std::size_t>(f1[m][i]) * n2 +
                   static_cast<std::size_t>(f2[m][j])] = vals[i * w + j];
        }
      }
    }
    out.push_back(std::move(k));
  });
  std::sort(out.begin(), out.end(),
            [](const Ggt& a, const Ggt& b) { return a.values < b.values; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Ggt> enumerate_ggts(const BundlePtr& p1, const BundlePtr& p2) {
  return enumerate_ggts(p1, p2, OracleBounds::from_env());
}

}  // namespace fgpd
