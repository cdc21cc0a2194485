#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setstab/actions.hpp"
#include "setstab/group.hpp"
#include "setstab/structure.hpp"

namespace setstab {

/// A coloring together with the audited invariants of its stabilizer and a
/// short log of how the recursion produced it.
struct Certificate {
  Coloring coloring;
  std::vector<Perm> stabilizer_generators;
  int max_orbit_length = 1;
  int derived_length = 0;  // -1 when the stabilizer is not solvable
  bool elementary_abelian_2 = false;
  std::vector<std::string> construction_trace;
};

/// Colorings over one domain. pairwise_inequivalent is set both when orbit
/// membership was checked directly and when the construction guarantees it.
struct ColoringFamily {
  std::vector<Coloring> colorings;
  bool pairwise_inequivalent = false;
};

struct CertifiedFamily {
  ColoringFamily family;
  std::vector<Certificate> certificates;  // parallel to family.colorings
};

/// Use y-colorings of the blocks as colors for the block indices: with
/// point = block*b + slot, Z[block*b + slot] = ys[x[block]][slot]. Needs the
/// blocks form of the structure and one inner coloring per color of x.
Coloring combine_colorings(const Coloring& x, const std::vector<Coloring>& ys,
                           const WreathStructure& structure);

/// Checks, in the full wreath bottom wr top, that |Stab(z)| divides
/// prod_j |Stab(ys[x[j]])| * |Stab(x')| (one factor per block) and that max
/// orbit lengths multiply the same way, where x' is x with colors carrying
/// bottom-equivalent inner colorings merged (with pairwise inequivalent ys
/// this is x itself).
bool stab_embedding_check(const WreathStructure& structure, const Coloring& x,
                          const std::vector<Coloring>& ys, const Coloring& z,
                          const Caps& caps = {});

/// `want` pairwise-inequivalent k-colorings of the domain of a whose
/// stabilizers have all point orbits of length <= i, lexicographically least
/// in their orbits, ascending. Exhaustive census when k^degree fits the space
/// cap, seeded sampling otherwise.
ColoringFamily asymmetric_colorings(const PermGroup& a, int k, int i, int want,
                                    const Caps& caps = {}, uint64_t seed = 1);

/// `want` (at most 5) inequivalent subsets, as 2-colorings, whose stabilizers
/// have all orbits of length <= 6, with certificates. Clamped to the number
/// of classes that exist when the degree is at most 3.
CertifiedFamily good_subsets(const PermGroup& g, int want, const Caps& caps = {},
                             uint64_t seed = 1);

/// A 3-coloring whose stabilizer has all orbits of length <= 2; such a
/// stabilizer is an elementary abelian 2-group and the certificate records it.
Certificate three_coloring_2asym(const PermGroup& g, const Caps& caps = {}, uint64_t seed = 1);

/// Recompute the stabilizer of cert.coloring in g and compare every claimed
/// invariant, including that the claimed generators span it exactly.
bool verify_certificate(const PermGroup& g, const Certificate& cert, const Caps& caps = {});

}  // namespace setstab
