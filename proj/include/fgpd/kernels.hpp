#ifndef FGPD_KERNELS_HPP_
#define FGPD_KERNELS_HPP_

// Hot loops of the exhaustive checks. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp with identical output.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "fgpd/bundles.hpp"
#include "fgpd/core.hpp"
#include "fgpd/gauge.hpp"

namespace fgpd::kernels {

using Triple = std::array<Index, 3>;

// Marks a division-table entry reached by more than one arrow.
inline constexpr Index kAmbiguous = -2;

// Per base point, every admissible restriction of a map to that fibre.
// A candidate lists values in fibre order (pairs row-major for GGTs).
using FibreCandidates = std::vector<std::vector<std::vector<Index>>>;

// Position of a product among the gauge groupoid arrows, kNone if absent.
using ArrowLookup = std::function<Index(const Ggt&, Index source, Index target)>;

namespace serial {

// Composable triples with (g1 g2) g3 != g1 (g2 g3), lexicographic order.
std::vector<Triple> associativity_failures(const FiniteGroupoid& g);

// table[p * |P| + q] = the arrow g with p.g = q, kNone when there is none,
// kAmbiguous when there are several. Pairs over different fibres are kNone.
std::vector<Index> division_table(const PrincipalBundle& b);

FibreCandidates morphism_fibre_candidates(const PrincipalBundle& p1,
                                          const PrincipalBundle& p2);
FibreCandidates ggt_fibre_candidates(const PrincipalBundle& p1,
                                     const PrincipalBundle& p2);

// Composition table of the gauge groupoid: entry (a, b) is the arrow for
// arrows[a] * arrows[b] when target[b] == source[a], kNone otherwise.
std::vector<Index> star_table(std::span<const Ggt> arrows,
                              std::span<const Index> source,
                              std::span<const Index> target,
                              const ArrowLookup& lookup);

}  // namespace serial

namespace omp {

std::vector<Triple> associativity_failures(const FiniteGroupoid& g);
std::vector<Index> division_table(const PrincipalBundle& b);
FibreCandidates morphism_fibre_candidates(const PrincipalBundle& p1,
                                          const PrincipalBundle& p2);
FibreCandidates ggt_fibre_candidates(const PrincipalBundle& p1,
                                     const PrincipalBundle& p2);
std::vector<Index> star_table(std::span<const Ggt> arrows,
                              std::span<const Index> source,
                              std::span<const Index> target,
                              const ArrowLookup& lookup);

}  // namespace omp

// Shared by both versions: candidates for the fibre over one base point.
std::vector<std::vector<Index>> morphism_candidates_at(
    const PrincipalBundle& p1, const PrincipalBundle& p2,
    std::span<const Index> fibre1, std::span<const Index> fibre2,
    const Incidence& incidence);
std::vector<std::vector<Index>> ggt_candidates_at(
    const PrincipalBundle& p1, const PrincipalBundle& p2,
    std::span<const Index> fibre1, std::span<const Index> fibre2,
    const Incidence& incidence);

}  // namespace fgpd::kernels

#endif  // FGPD_KERNELS_HPP_
