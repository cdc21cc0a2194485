#pragma once

#include <string>

#include "setstab/group.hpp"

namespace setstab {

PermGroup trivial_group(int n);
PermGroup symmetric_group(int n);
PermGroup alternating_group(int n);
PermGroup cyclic_group(int n);
/// x -> ax+b over GF(q), q prime in {2,3,5,7} or q = 8; points are field
/// elements (bit-pattern labels for GF(8), built over t^3 + t + 1).
PermGroup affine_line(int q);
/// affine_line(8) extended by the squaring field automorphism.
PermGroup affine_semilinear_line_8();
/// Full affine plane group over GF(3); point (x, y) sits at 3x + y.
PermGroup affine_plane_3();

/// Grammar: name[:n] | wr_imp(expr,expr) | wr_prod(expr,expr) | @file.json
/// where the json file holds {"degree": n, "generators": [[images], ...]}.
PermGroup parse_group(const std::string& expr);

} // namespace setstab
