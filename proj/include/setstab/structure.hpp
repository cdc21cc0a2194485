#pragma once

#include <memory>
#include <vector>

#include "setstab/group.hpp"

namespace setstab {

/// A block system: blocks sorted by least element, points ascending inside.
using Blocks = std::vector<std::vector<int>>;

/// Wreath decomposition declared at construction time by the wreath builders.
/// For the blocks form, point = block*b + slot with b the bottom degree; for
/// the power form, points are mixed-radix tuples with coordinate 0 the most
/// significant digit.
struct WreathStructure {
  bool product_action = false;
  std::shared_ptr<const PermGroup> bottom;
  std::shared_ptr<const PermGroup> top;
};

bool is_block_system(const PermGroup& g, const Blocks& blocks);
/// Finest G-invariant partition in which p and q share a block.
Blocks finest_blocks_joining(const PermGroup& g, int p, int q);
/// All minimal nontrivial block systems, sorted by (block size, block lists).
std::vector<Blocks> minimal_block_systems(const PermGroup& g);
bool is_primitive(const PermGroup& g);
/// Coarsest-possible system reached by repeatedly fusing along the least
/// minimal system of the quotient; its blocks action is primitive.
Blocks maximal_block_system(const PermGroup& g);

/// Index of the block containing each point.
std::vector<int> block_of_point(const Blocks& blocks, int degree);
Perm blocks_image(const Perm& p, const Blocks& blocks);
PermGroup blocks_action(const PermGroup& g, const Blocks& blocks);
/// Subgroup of g fixing block j as a set (exact, via the blocks orbit).
PermGroup block_setwise_stabilizer(const PermGroup& g, const Blocks& blocks, int j);
/// That stabilizer restricted to block j, renumbered along the block.
PermGroup block_constituent(const PermGroup& g, const Blocks& blocks, int j);

/// Degree b*m: bottom copied onto every block plus the top permuting blocks.
/// A declared tower is rebracketed so its top is not itself a declared tower;
/// the generator set is unchanged by that.
PermGroup wreath_imprimitive(const PermGroup& bottom, const PermGroup& top);
/// Degree b^m on tuples: bottom acting in each coordinate plus the top moving
/// coordinates, t'[sigma(i)] = t[i].
PermGroup wreath_product_action(const PermGroup& bottom, const PermGroup& top);

int tuple_code(const std::vector<int>& t, int radix);
std::vector<int> tuple_from_code(int code, int radix, int length);

struct CosetAction {
  PermGroup action{1};     // g acting on the right cosets of h
  std::vector<Perm> reps;  // reps[i] represents coset h*reps[i]; reps[0] = id
};
CosetAction coset_action(const PermGroup& g, const PermGroup& h);

} // namespace setstab
