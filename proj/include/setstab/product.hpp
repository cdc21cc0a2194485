#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "setstab/actions.hpp"
#include "setstab/group.hpp"
#include "setstab/perm.hpp"

namespace setstab {

/// A product-action wreath built from a transitive group x whose stabilizer of
/// point 0 is solvable, a designated normal subgroup t of x reaching outside
/// that stabilizer, and a transitive solvable group s on the d coordinates.
/// g is the full product-action wreath of x and s on degree(x)^d tuple points;
/// h stabilizes the all-zeros tuple and equals the coordinate-wise stabilizers
/// extended by s (checked at construction).
struct ProductInstance {
  PermGroup x{1};
  PermGroup y{1};  // stabilizer of point 0 in x
  PermGroup t{1};
  int d = 0;
  PermGroup s{1};
  PermGroup g{1};
  PermGroup h{1};  // stabilizer of the base tuple
};

ProductInstance make_product_instance(const PermGroup& x, const PermGroup& t, int d,
                                      const PermGroup& s, const Caps& caps = {});

/// Double cosets of y in x over the explicit element list of x. reps holds the
/// lexicographically least element of each coset, ascending, so the identity
/// comes first; assignment maps every element of x to its coset index.
struct DoubleCosetDecomposition {
  std::vector<Perm> reps;
  std::unordered_map<Perm, int, PermHash> assignment;
};

DoubleCosetDecomposition double_coset_reps(const PermGroup& x, const PermGroup& y,
                                           const Caps& caps = {});

/// Lexicographically least element of t outside y; the shift that gets planted
/// on chosen coordinates to move the base tuple.
Perm pick_shift(const PermGroup& x, const PermGroup& y, const PermGroup& t);

/// Element of the base group with the given component in each coordinate.
Perm embed_base(const ProductInstance& inst, const std::vector<Perm>& components);
/// Base element carrying e in the coordinates of delta, identity elsewhere.
Perm embed_in_coordinates(const ProductInstance& inst, const std::vector<int>& delta,
                          const Perm& e);

/// Components of a base-group element, recovered coordinate by coordinate.
std::vector<Perm> base_components(const ProductInstance& inst, const Perm& v);
/// Image of a wreath element under the projection onto the coordinate action.
Perm top_component(const ProductInstance& inst, const Perm& p);

/// Stabilizer of the base tuple and its image under v at once: the elements of
/// h whose v-conjugate stays in h, assembled into a group.
PermGroup two_point_stabilizer(const ProductInstance& inst, const Perm& v,
                               const Caps& caps = {});

/// Projection of two_point_stabilizer(inst, v) to the coordinate action, for v
/// in the base group. Recomputed three independent ways (generator images;
/// the double-coset matching condition on components; intersected setwise
/// stabilizers of the coset-index level sets) which must agree.
PermGroup top_projection(const ProductInstance& inst, const Perm& v, const Caps& caps = {});

/// Everything the bounded-derived-length construction produces for one
/// instance: the chosen coordinate set and shift, the witness pair of points,
/// and the derived lengths down the chain. Construction fails loudly if any
/// of the guaranteed inequalities is violated.
struct TwoPointReport {
  std::vector<int> delta;  // coordinates carrying the shift
  Perm shift;
  Perm v;
  int base_point = 0;
  int moved_point = 0;
  int dl_y = 0;
  int dl_base_part = 0;    // intersection with the base group
  int dl_projection = 0;   // image in the coordinate action, <= 3
  int dl_intersection = 0; // the two-point stabilizer, <= dl_y + 3
  int dl_point_pair = 0;   // pointwise stabilizer of the witness pair
  BigInt intersection_order;
};

TwoPointReport two_point_report(const ProductInstance& inst, const Caps& caps = {});

/// Draws `trials` random base elements with components anywhere in x and
/// checks the three projection computations agree on each; throws on any
/// mismatch, returns the number of trials run.
int randomized_projection_agreement(const ProductInstance& inst, int trials, uint64_t seed,
                                    const Caps& caps = {});

/// For a point set of the requested size containing the witness pair (padded
/// with points the two-point stabilizer fixes), checks the setwise stabilizer
/// in g is solvable of derived length at most dl_intersection + 3.
bool small_set_stabilizer_check(const ProductInstance& inst, int delta_size,
                                const Caps& caps = {});

}  // namespace setstab
