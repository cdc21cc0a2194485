#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "setstab/perm.hpp"

namespace setstab {

using BigInt = boost::multiprecision::cpp_int;

struct WreathStructure;

struct ChainLevel {
  int base = -1;
  std::vector<Perm> gens;      // generators of this level's group
  std::vector<int> orbit;      // discovery order; orbit[0] == base
  std::vector<int32_t> pos;    // point -> index into orbit, -1 if outside
  std::vector<Perm> trans;     // trans[i] maps base to orbit[i]
  std::vector<Perm> trans_inv;
};

/// Base-and-strong-generating-set chain built with deterministic Schreier-Sims.
/// An optional base prefix forces the first base points (used for pointwise
/// stabilizers); prefix levels exist even when their orbit is trivial.
class StabChain {
public:
  StabChain(int degree, const std::vector<Perm>& gens, const std::vector<int>& base_prefix = {});

  int degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }
  const BigInt& order() const { return order_; }

  bool contains(const Perm& p) const;
  /// Reduce p through levels [from, end); returns residue and the level where
  /// sifting stopped (levels count when it ran through completely).
  std::pair<Perm, int> sift(const Perm& p, int from = 0) const;

  /// Strong generators of the subgroup fixing the first prefix_len base points.
  std::vector<Perm> level_generators(int level) const;

  void each_element(const std::function<void(const Perm&)>& cb) const;
  Perm random_element(std::mt19937_64& rng) const;

private:
  void add_strong_gen(int level, const Perm& g);
  void recompute_orbit(int level);
  void schreier_sims(int level);

  int degree_;
  std::vector<ChainLevel> levels_;
  BigInt order_;
};

/// Finitely generated permutation group with a lazily built stabilizer chain.
/// Immutable after construction; copies share the chain.
class PermGroup {
public:
  explicit PermGroup(int degree, std::vector<Perm> gens = {});

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  const StabChain& chain() const; // built on first use; not thread-safe to race
  const BigInt& order() const { return chain().order(); }
  bool is_trivial() const { return order() == 1; }
  bool contains(const Perm& p) const;

  std::vector<int> orbit(int point) const;                 // ascending
  std::vector<std::vector<int>> orbits() const;            // ascending reps, ascending members
  int max_orbit_length() const;
  bool is_transitive() const;
  bool fixes(int point) const;

  PermGroup pointwise_stabilizer(const std::vector<int>& points) const;
  PermGroup conjugated(const Perm& c) const; // c^{-1} G c
  /// Restriction to an invariant point set, renumbered by ascending position.
  PermGroup restrict_to(const std::vector<int>& points) const;

  void each_element(const std::function<void(const Perm&)>& cb) const;
  Perm random_element(std::mt19937_64& rng) const;

  // Declared wreath structure, set by the wreath builders.
  std::shared_ptr<const WreathStructure> decl() const { return decl_; }
  void set_decl(std::shared_ptr<const WreathStructure> d) { decl_ = std::move(d); }

private:
  int degree_;
  std::vector<Perm> gens_;
  mutable std::shared_ptr<const StabChain> chain_;
  std::shared_ptr<const WreathStructure> decl_;
};

struct DerivedSeriesReport {
  std::vector<BigInt> orders; // orders along the series, ending at 1 when solvable
  bool solvable = false;
  int derived_length = -1;    // -1 encodes NOT_SOLVABLE
};

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds);
PermGroup derived_subgroup(const PermGroup& g);
DerivedSeriesReport derived_series(const PermGroup& g);
bool is_solvable(const PermGroup& g);
/// Derived length; throws NotSolvable when the series stalls above 1.
int derived_length(const PermGroup& g);
bool is_elementary_abelian_2(const PermGroup& g);
bool is_abelian(const PermGroup& g);

/// Same degree, same order, and each generator of one lies in the other.
bool groups_equal(const PermGroup& a, const PermGroup& b);
bool is_subgroup(const PermGroup& sub, const PermGroup& g);

/// Subgroup spanned by a list of its elements, with a reduced generating set.
PermGroup group_from_elements(int degree, const std::vector<Perm>& elements);

} // namespace setstab
