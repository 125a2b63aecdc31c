#include <algorithm>

#include "fgpd/kernels.hpp"

namespace fgpd::kernels {

namespace {

Index position_in(std::span<const Index> fibre, Index p) {
  auto it = std::lower_bound(fibre.begin(), fibre.end(), p);
  return (it != fibre.end() && *it == p) ? static_cast<Index>(it - fibre.begin())
                                         : kNone;
}

}  // namespace

// Picks the least point p of the first fibre, tries every image q of matching
// momentum and extends by sigma(p g) = q g. A candidate survives when the
// extension is single-valued, covers the fibre, stays in the fibre with the
// right momenta and is equivariant for every arrow acting on the fibre.
std::vector<std::vector<Index>> morphism_candidates_at(
    const PrincipalBundle& p1, const PrincipalBundle& p2,
    std::span<const Index> fibre1, std::span<const Index> fibre2,
    const Incidence& incidence) {
  std::vector<std::vector<Index>> out;
  if (fibre1.empty()) {
    return out;
  }
  auto const base = fibre1.front();
  auto const x = p1.momentum[base];
  for (auto q : fibre2) {
    if (p2.momentum[q] != x) {
      continue;
    }
    std::vector<Index> image(fibre1.size(), kNone);
    bool ok = true;
    for (auto g : incidence.into(x)) {
      auto const src = p1.apply(base, g);
      auto const dst = p2.apply(q, g);
      auto const pos = src == kNone ? kNone : position_in(fibre1, src);
      if (pos == kNone || dst == kNone ||
          (image[pos] != kNone && image[pos] != dst)) {
        ok = false;
        break;
      }
      image[pos] = dst;
    }
    if (!ok || std::find(image.begin(), image.end(), kNone) != image.end()) {
      continue;
    }
    for (std::size_t i = 0; ok && i < fibre1.size(); ++i) {
      auto const pt = fibre1[i];
      auto const img = image[i];
      if (position_in(fibre2, img) == kNone ||
          p2.momentum[img] != p1.momentum[pt]) {
        ok = false;
        break;
      }
      for (auto h : incidence.into(p1.momentum[pt])) {
        auto const moved = p1.apply(pt, h);
        auto const pos = moved == kNone ? kNone : position_in(fibre1, moved);
        if (pos == kNone || p2.apply(img, h) != image[pos]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      out.push_back(std::move(image));
    }
  }
  return out;
}

// Picks the pair (p1, p2) of least points, tries every arrow k from e1(p1) to
// e2(p2) and extends by K(p1 g1, p2 g2) = g2^-1 k g1, then re-checks the
// endpoint and equivariance laws on the whole fibre.
std::vector<std::vector<Index>> ggt_candidates_at(
    const PrincipalBundle& p1, const PrincipalBundle& p2,
    std::span<const Index> fibre1, std::span<const Index> fibre2,
    const Incidence& incidence) {
  std::vector<std::vector<Index>> out;
  if (fibre1.empty() || fibre2.empty()) {
    return out;
  }
  auto const& G = *p1.groupoid;
  auto const r1 = fibre1.front();
  auto const r2 = fibre2.front();
  auto const x1 = p1.momentum[r1];
  auto const x2 = p2.momentum[r2];
  auto const w = fibre2.size();
  for (Index k = 0; k < static_cast<Index>(G.arrow_count()); ++k) {
    if (G.source[k] != x1 || G.target[k] != x2) {
      continue;
    }
    std::vector<Index> vals(fibre1.size() * w, kNone);
    bool ok = true;
    for (auto g1 : incidence.into(x1)) {
      auto const a = p1.apply(r1, g1);
      auto const ia = a == kNone ? kNone : position_in(fibre1, a);
      if (ia == kNone) {
        ok = false;
        break;
      }
      auto const kg1 = G.product(k, g1);
      for (auto g2 : incidence.into(x2)) {
        auto const b = p2.apply(r2, g2);
        auto const ib = b == kNone ? kNone : position_in(fibre2, b);
        auto const v = kg1 == kNone ? kNone : G.product(G.inverse[g2], kg1);
        if (ib == kNone || v == kNone) {
          ok = false;
          break;
        }
        auto& slot = vals[static_cast<std::size_t>(ia) * w + static_cast<std::size_t>(ib)];
        if (slot != kNone && slot != v) {
          ok = false;
          break;
        }
        slot = v;
      }
      if (!ok) break;
    }
    if (!ok || std::find(vals.begin(), vals.end(), kNone) != vals.end()) {
      continue;
    }
    for (std::size_t i = 0; ok && i < fibre1.size(); ++i) {
      for (std::size_t j = 0; ok && j < w; ++j) {
        auto const a = fibre1[i];
        auto const b = fibre2[j];
        auto const v = vals[i * w + j];
        if (G.source[v] != p1.momentum[a] || G.target[v] != p2.momentum[b]) {
          ok = false;
          break;
        }
        for (auto h1 : incidence.into(p1.momentum[a])) {
          auto const vh1 = G.product(v, h1);
          auto const ia = position_in(fibre1, p1.apply(a, h1));
          for (auto h2 : incidence.into(p2.momentum[b])) {
            auto const ib = position_in(fibre2, p2.apply(b, h2));
            if (ia == kNone || ib == kNone || vh1 == kNone ||
                G.product(G.inverse[h2], vh1) !=
                    vals[static_cast<std::size_t>(ia) * w + static_cast<std::size_t>(ib)]) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
      }
    }
    if (ok) {
      out.push_back(std::move(vals));
    }
  }
  return out;
}

}  // namespace fgpd::kernels
