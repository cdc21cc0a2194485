#include "setstab/actions.hpp"

#include <algorithm>

namespace setstab {

Coloring apply_coloring(const Perm& g, const Coloring& c) {
  if (static_cast<int>(c.size()) != g.degree()) fail(Err::DegreeMismatch, "coloring length mismatch");
  Coloring d(c.size());
  for (size_t i = 0; i < c.size(); ++i) d[g[static_cast<int>(i)]] = c[i];
  return d;
}

uint64_t coloring_code(const Coloring& c, int colors) {
  if (colors < 1) fail(Err::ColorCount, "need at least one color");
  uint64_t code = 0;
  for (uint8_t v : c) {
    if (v >= colors) fail(Err::ColorCount, "color value out of range");
    code = code * static_cast<uint64_t>(colors) + v;
  }
  return code;
}

Coloring coloring_from_code(uint64_t code, int colors, int degree) {
  Coloring c(degree);
  for (int i = degree - 1; i >= 0; --i) {
    c[i] = static_cast<uint8_t>(code % colors);
    code /= colors;
  }
  if (code != 0) fail(Err::BadInput, "code out of range for the coloring space");
  return c;
}

int color_count_used(const Coloring& c) {
  int m = 0;
  for (uint8_t v : c) m = std::max<int>(m, v + 1);
  return m;
}

OrbitStab<Mask, MaskHash> subset_orbit(const PermGroup& g, const Mask& s, uint64_t cap_orbit, bool want_stab) {
  return orbit_stabilizer<Mask, MaskHash>(g, s, &apply_subset, cap_orbit, want_stab);
}

OrbitStab<Coloring, ColoringHash> coloring_orbit(const PermGroup& g, const Coloring& c,
                                                 uint64_t cap_orbit, bool want_stab) {
  if (static_cast<int>(c.size()) != g.degree()) fail(Err::DegreeMismatch, "coloring length mismatch");
  return orbit_stabilizer<Coloring, ColoringHash>(g, c, &apply_coloring,
                                                                             cap_orbit, want_stab);
}

PermGroup subset_stabilizer(const PermGroup& g, const Mask& s, uint64_t cap_orbit) {
  return subset_orbit(g, s, cap_orbit, true).stab;
}

PermGroup coloring_stabilizer(const PermGroup& g, const Coloring& c, uint64_t cap_orbit) {
  if (static_cast<int>(c.size()) != g.degree()) fail(Err::DegreeMismatch, "coloring length mismatch");
  PermGroup h = g;
  for (int v = 0; v < color_count_used(c); ++v) {
    if (h.is_trivial()) break;
    Mask cls;
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] == v) cls.set(static_cast<int>(i));
    if (cls.empty() || cls.count() == g.degree()) continue;
    h = subset_stabilizer(h, cls, cap_orbit);
  }
  return h;
}

bool is_asymmetric_coloring(const PermGroup& g, const Coloring& c, uint64_t cap_orbit) {
  return coloring_stabilizer(g, c, cap_orbit).is_trivial();
}

Coloring canonical_coloring(const PermGroup& g, const Coloring& c, uint64_t cap_orbit) {
  auto os = coloring_orbit(g, c, cap_orbit, false);
  const Coloring* best = &os.orbit[0];
  for (const Coloring& x : os.orbit)
    if (x < *best) best = &x;
  return *best;
}

} // namespace setstab
