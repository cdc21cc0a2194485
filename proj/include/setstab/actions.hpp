#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "setstab/bitset.hpp"
#include "setstab/errors.hpp"
#include "setstab/group.hpp"

namespace setstab {

/// Point i carries c[i]; colors are labels and are never permuted themselves.
using Coloring = std::vector<uint8_t>;

struct Caps {
  uint64_t orbit = uint64_t{1} << 22; // largest single orbit we will walk
  uint64_t space = uint64_t{1} << 24; // largest coloring space we will census
};

/// Image coloring d with d[g[i]] = c[i].
Coloring apply_coloring(const Perm& g, const Coloring& c);
inline Mask apply_subset(const Perm& g, const Mask& m) { return g.apply(m); }

struct ColoringHash {
  size_t operator()(const Coloring& c) const {
    size_t h = 1469598103934665603ull;
    for (uint8_t v : c) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

/// Mixed-radix code with point 0 as the most significant digit, so numeric
/// order on codes is lexicographic order on colorings.
uint64_t coloring_code(const Coloring& c, int colors);
Coloring coloring_from_code(uint64_t code, int colors, int degree);
int color_count_used(const Coloring& c); // 1 + max color value

/// Orbit of a state under a group action, with a Schreier-tree transporter per
/// state and (optionally) the exact stabilizer of the start state.
template <class State, class HashFn>
struct OrbitStab {
  int degree = 1;
  std::vector<State> orbit; // discovery order; orbit[0] is the start state
  std::vector<int32_t> parent;
  std::vector<int16_t> via;
  std::vector<Perm> gens;
  std::unordered_map<State, int32_t, HashFn> index;
  PermGroup stab{1};

  /// Group element carrying orbit[0] to orbit[idx].
  Perm transporter(int32_t idx) const {
    std::vector<int16_t> path;
    for (int32_t v = idx; parent[v] >= 0; v = parent[v]) path.push_back(via[v]);
    Perm r(degree);
    for (auto it = path.rbegin(); it != path.rend(); ++it) r = compose(r, gens[*it]);
    return r;
  }
};

/// apply must satisfy apply(p*q, s) == apply(q, apply(p, s)).
template <class State, class HashFn, class ApplyFn>
OrbitStab<State, HashFn> orbit_stabilizer(const PermGroup& g, const State& start, ApplyFn&& apply,
                                          uint64_t cap_orbit, bool want_stab = true) {
  OrbitStab<State, HashFn> r;
  r.degree = g.degree();
  r.gens = g.generators();
  r.orbit.push_back(start);
  r.parent.push_back(-1);
  r.via.push_back(-1);
  r.index.emplace(start, 0);
  for (size_t i = 0; i < r.orbit.size(); ++i)
    for (size_t k = 0; k < r.gens.size(); ++k) {
      State y = apply(r.gens[k], r.orbit[i]);
      if (r.index.emplace(y, static_cast<int32_t>(r.orbit.size())).second) {
        if (r.orbit.size() >= cap_orbit) fail(Err::OrbitCapExceeded, "orbit exceeds cap");
        r.orbit.push_back(std::move(y));
        r.parent.push_back(static_cast<int32_t>(i));
        r.via.push_back(static_cast<int16_t>(k));
      }
    }
  if (!want_stab) return r;
  if (g.order() % r.orbit.size() != 0) fail(Err::PropertyViolation, "orbit does not divide group order");
  BigInt target = g.order() / r.orbit.size();
  PermGroup cur(r.degree);
  if (target > 1) {
    std::vector<Perm> sgens;
    bool done = false;
    for (size_t i = 0; i < r.orbit.size() && !done; ++i) {
      Perm ui = r.transporter(static_cast<int32_t>(i));
      for (size_t k = 0; k < r.gens.size() && !done; ++k) {
        int32_t t = r.index.at(apply(r.gens[k], r.orbit[i]));
        Perm s = compose(compose(ui, r.gens[k]), r.transporter(t).inverse());
        if (s.is_identity() || cur.contains(s)) continue;
        sgens.push_back(std::move(s));
        cur = PermGroup(r.degree, sgens);
        if (cur.order() == target) done = true;
      }
    }
    if (cur.order() != target) fail(Err::PropertyViolation, "stabilizer assembly fell short");
  }
  r.stab = std::move(cur);
  return r;
}

OrbitStab<Mask, MaskHash> subset_orbit(const PermGroup& g, const Mask& s, uint64_t cap_orbit,
                                       bool want_stab = true);
OrbitStab<Coloring, ColoringHash> coloring_orbit(const PermGroup& g, const Coloring& c,
                                                 uint64_t cap_orbit, bool want_stab = true);

PermGroup subset_stabilizer(const PermGroup& g, const Mask& s, uint64_t cap_orbit);
/// Stabilizer of a coloring by refining through the color classes in turn.
PermGroup coloring_stabilizer(const PermGroup& g, const Coloring& c, uint64_t cap_orbit);
/// True when only the identity preserves the coloring.
bool is_asymmetric_coloring(const PermGroup& g, const Coloring& c, uint64_t cap_orbit);
/// Smallest coloring (by code) in the orbit of c.
Coloring canonical_coloring(const PermGroup& g, const Coloring& c, uint64_t cap_orbit);

} // namespace setstab
