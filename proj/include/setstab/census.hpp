#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setstab/actions.hpp"
#include "setstab/group.hpp"

namespace setstab {

/// One orbit class of the coloring action, keyed by its lexicographically
/// least member.
struct OrbitClassInfo {
  Coloring rep;
  uint64_t orbit_size = 0;
  BigInt stab_order = 0;
  std::vector<Perm> stab_gens;
  int max_orbit_length = 1;
  int derived_length = 0;  // -1 when the stabilizer is not solvable
};

struct CensusReport {
  std::string group_id;
  int degree = 0;
  int colors = 0;
  std::vector<OrbitClassInfo> classes;  // ascending by representative code

  /// Number of classes whose stabilizer has all point orbits of length <= i.
  long long ell(int i) const {
    long long c = 0;
    for (const auto& cls : classes)
      if (cls.max_orbit_length <= i) ++c;
    return c;
  }
};

/// Classify every k-coloring of the domain into group orbits. jobs > 1 runs
/// the parallel labelling kernel; the report is identical either way.
CensusReport coloring_census(const PermGroup& g, int k, const Caps& caps = {}, int jobs = 1,
                             const std::string& group_id = "");

/// Orbit-minimum label for every coloring code, walked seed by seed.
std::vector<uint32_t> census_labels_serial(const PermGroup& g, int k, const Caps& caps = {});
/// Same labels via concurrent minimum propagation with pointer jumping.
std::vector<uint32_t> census_labels_parallel(const PermGroup& g, int k, const Caps& caps = {},
                                             int jobs = 2);

long long ell(const PermGroup& g, int k, int i, const Caps& caps = {});

/// Number of orbits on subsets (= classes of the 2-coloring census); checked
/// to be at least degree+1.
long long power_set_orbit_count(const PermGroup& g, const Caps& caps = {});

/// Stabilizer of a subset inside a declared imprimitive wreath product,
/// assembled from per-block stabilizers, connecting corrections, and lifts of
/// the admissible block permutations. Exact for groups built by
/// wreath_imprimitive.
PermGroup imprimitive_subset_stabilizer(const PermGroup& g, const Mask& s, const Caps& caps = {});

/// Element of g carrying coloring a onto coloring b, when one exists. Groups
/// built by wreath_imprimitive are handled blockwise (recursing through
/// declared bottoms); everything else walks the orbit of a under caps.
std::optional<Perm> coloring_transporter(const PermGroup& g, const Coloring& a,
                                         const Coloring& b, const Caps& caps = {});

/// Coloring analogue of imprimitive_subset_stabilizer: exact stabilizer of an
/// arbitrary coloring in a group built by wreath_imprimitive, recursing
/// through declared bottom groups so towers far beyond the orbit cap stay
/// reachable.
PermGroup imprimitive_coloring_stabilizer(const PermGroup& g, const Coloring& c,
                                          const Caps& caps = {});

}  // namespace setstab
