#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "setstab/actions.hpp"
#include "setstab/census.hpp"
#include "setstab/group.hpp"

namespace setstab {

/// d x d matrix over F_p, d <= 3. Entries live in [0,p) at stride 3 so that
/// equality and ordering work independently of d (unused cells stay zero).
struct Mat {
  int d = 1;
  std::array<uint8_t, 9> a{};

  uint8_t& at(int r, int c) { return a[r * 3 + c]; }
  uint8_t at(int r, int c) const { return a[r * 3 + c]; }
  bool operator==(const Mat& o) const { return d == o.d && a == o.a; }
  bool operator<(const Mat& o) const { return a < o.a; }
};

Mat mat_identity(int d);
Mat mat_mul(const Mat& x, const Mat& y, int p);
int mat_det(const Mat& x, int p);
Mat mat_inverse(const Mat& x, int p);

/// Matrix group given by generators with its elements materialized; the
/// catalog only ever needs |m| <= 200 (largest use is GL_3(2), order 168).
struct MatrixGroupSmall {
  int p = 2;
  int d = 1;
  std::vector<Mat> gens;      // small generating set
  std::vector<Mat> elements;  // sorted closure of gens
};

MatrixGroupSmall matrix_group(int p, int d, std::vector<Mat> gens);
MatrixGroupSmall full_gl(int p, int d);

/// Every subgroup of m, one representative per conjugacy class of m, sorted
/// by (order, element set). Errors: ORDER_CAP when |m| > 200.
std::vector<MatrixGroupSmall> subgroups_up_to_conjugacy(const MatrixGroupSmall& m);

/// True iff no proper nonzero subspace of F_p^d is invariant under every
/// generator. Subspaces are enumerated exhaustively (p^d <= 9 vectors).
bool is_irreducible(const MatrixGroupSmall& h);

/// The affine group V x| H on p^d points, generated by the coordinate
/// translations and the linear maps. Points encode vectors mixed-radix with
/// coordinate 0 most significant. Errors: NOT_IRREDUCIBLE.
PermGroup affine_group(const MatrixGroupSmall& h);

/// Conjugacy test in the ambient symmetric group: cheap invariant screen
/// (order, cycle-type multiset) and then a backtrack over relabelings.
bool permutation_isomorphic(const PermGroup& a, const PermGroup& b);

struct CatalogEntry {
  PermGroup group;
  int degree = 0;
  BigInt order;
  std::array<long long, 4> ell2{};  // 2-coloring classes with max stabilizer
                                    // orbit <= 1, 2, 3, 6
  long long subset_classes = 0;     // orbit count on the power set
  std::string label;                // invariant fingerprint
  std::string library_id_hint;      // id in the standard primitive-groups
                                    // library when forced by invariants
};

/// All primitive solvable groups of degree 2..max_degree (<= 9), one per
/// permutation-isomorphism class, from the affine construction over
/// (p,d) with p^d <= 9. Degree 6 is not a prime power, hence absent.
std::vector<CatalogEntry> enumerate_primitive_solvable(int max_degree = 9, const Caps& caps = {},
                                                       int jobs = 1);

struct TableRow {
  int degree = 0;
  std::array<long long, 4> ell{};  // ell_{2,1}, ell_{2,2}, ell_{2,3}, ell_{2,6}
};

/// Rows for every entry with fewer than 5 regular subset classes, sorted by
/// (degree, row).
std::vector<TableRow> table1_report(const std::vector<CatalogEntry>& entries);

struct EntryFlags {
  int degree = 0;
  std::string label;
  bool stab_orbits_le3 = false;    // some subset class whose stabilizer has
                                   // all point orbits of length <= 3
  bool metabelian_stab = false;    // some subset class with metabelian stabilizer
  bool abelian_stab = false;       // some subset class with abelian stabilizer
  bool asymmetric_4coloring = false;  // some 4-coloring with trivial stabilizer
};

std::vector<EntryFlags> primitive_lemma_report(const std::vector<CatalogEntry>& entries,
                                               const Caps& caps = {});

}  // namespace setstab
