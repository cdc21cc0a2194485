#include "setstab/product.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "setstab/constructor.hpp"
#include "setstab/errors.hpp"
#include "setstab/structure.hpp"

namespace setstab {

namespace {

constexpr long long kElementCap = 1000000;    // explicit enumeration budget
constexpr long long kAmbientCap = 100000000;  // whole-wreath order budget

// code of the tuple that is zero everywhere except for w in coordinate i
int unit_code(int n, int d, int i, int w) {
  int c = w;
  for (int k = i + 1; k < d; ++k) c *= n;
  return c;
}

std::vector<Perm> sorted_elements(const PermGroup& g) {
  std::vector<Perm> out;
  out.reserve(1024);
  g.each_element([&](const Perm& e) { out.push_back(e); });
  std::sort(out.begin(), out.end());
  return out;
}

void check_enumeration_caps(const ProductInstance& inst) {
  if (inst.g.order() > BigInt(kAmbientCap))
    fail(Err::OrderCap, "wreath product too large for element filtration");
  if (inst.h.order() > BigInt(kElementCap))
    fail(Err::OrderCap, "base-tuple stabilizer too large to enumerate");
}

// the three projection computations, sharing one already-computed intersection
PermGroup projection_with_agreement(const ProductInstance& inst, const Perm& v,
                                    const PermGroup& iv, const Caps& caps) {
  int d = inst.d;
  std::vector<Perm> images;
  for (const Perm& gen : iv.generators()) images.push_back(top_component(inst, gen));
  PermGroup from_generators(d, images);

  std::vector<Perm> comps = base_components(inst, v);
  DoubleCosetDecomposition dc = double_coset_reps(inst.x, inst.y, caps);
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = dc.assignment.at(comps[i]);

  // coordinates grouped by the coset their component falls in
  int r = static_cast<int>(dc.reps.size());
  std::vector<std::vector<int>> parts(r);
  for (int i = 0; i < d; ++i) parts[idx[i]].push_back(i);

  auto stabilizes = [&](const Perm& sig, const std::vector<int>& part) {
    std::vector<int> moved;
    for (int i : part) moved.push_back(sig[i]);
    std::sort(moved.begin(), moved.end());
    return moved == part;
  };

  std::vector<Perm> matching, all_parts, drop_last;
  inst.s.each_element([&](const Perm& sig) {
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) ok = idx[sig[i]] == idx[i];
    if (ok) matching.push_back(sig);
    bool full = true;
    for (int j = 0; j < r && full; ++j) full = stabilizes(sig, parts[j]);
    if (full) all_parts.push_back(sig);
    bool most = true;
    for (int j = 0; j + 1 < r && most; ++j) most = stabilizes(sig, parts[j]);
    if (most) drop_last.push_back(sig);
  });
  PermGroup by_matching = group_from_elements(d, matching);
  PermGroup by_parts = group_from_elements(d, all_parts);
  PermGroup by_fewer = group_from_elements(d, drop_last);

  if (!groups_equal(from_generators, by_matching) || !groups_equal(by_matching, by_parts) ||
      !groups_equal(by_parts, by_fewer))
    fail(Err::PropertyViolation, "the three projection computations disagree");
  return from_generators;
}

int solvable_length(const PermGroup& g, const char* what) {
  DerivedSeriesReport ds = derived_series(g);
  if (!ds.solvable) fail(Err::PropertyViolation, std::string(what) + " is not solvable");
  return ds.derived_length;
}

}  // namespace

ProductInstance make_product_instance(const PermGroup& x, const PermGroup& t, int d,
                                      const PermGroup& s, const Caps&) {
  if (d < 2) fail(Err::BadInput, "product type needs at least two coordinates");
  if (!x.is_transitive()) fail(Err::NotTransitive, "the coordinate group must be transitive");
  if (s.degree() != d) fail(Err::DegreeMismatch, "the top group must act on the coordinates");
  if (!s.is_transitive()) fail(Err::NotTransitive, "the top group must be transitive");
  if (!is_solvable(s)) fail(Err::NotSolvable, "the top group must be solvable");

  ProductInstance inst;
  inst.x = x;
  inst.y = x.pointwise_stabilizer({0});
  if (!is_solvable(inst.y)) fail(Err::NotSolvable, "the point stabilizer must be solvable");
  if (!is_subgroup(t, x)) fail(Err::NotSubgroup, "the designated subgroup must sit inside");
  if (normal_closure(x, t.generators()).order() != t.order())
    fail(Err::NotNormal, "the designated subgroup must be normal");
  bool outside = false;
  for (const Perm& gen : t.generators())
    if (!inst.y.contains(gen)) outside = true;
  if (!outside) fail(Err::SocleInsideStabilizer, "the designated subgroup fixes the base point");
  inst.t = t;
  inst.d = d;
  inst.s = s;
  inst.g = wreath_product_action(x, s);
  inst.h = inst.g.pointwise_stabilizer({0});

  // the base-tuple stabilizer is exactly the coordinate-wise point stabilizers
  // extended by the coordinate action
  PermGroup ws = wreath_product_action(inst.y, s);
  BigInt expect = s.order();
  for (int i = 0; i < d; ++i) expect *= inst.y.order();
  if (inst.h.order() != expect || !is_subgroup(ws, inst.h))
    fail(Err::PropertyViolation, "base-tuple stabilizer has the wrong shape");
  return inst;
}

DoubleCosetDecomposition double_coset_reps(const PermGroup& x, const PermGroup& y,
                                           const Caps&) {
  if (!is_subgroup(y, x)) fail(Err::NotSubgroup, "cosets need a subgroup");
  if (x.order() > BigInt(kElementCap)) fail(Err::OrderCap, "too many elements to enumerate");

  std::vector<Perm> elems = sorted_elements(x);
  std::vector<Perm> ygens = y.generators();
  DoubleCosetDecomposition dc;
  for (const Perm& e : elems) {
    if (dc.assignment.count(e)) continue;
    int idx = static_cast<int>(dc.reps.size());
    dc.reps.push_back(e);  // ascending scan makes the first hit the least
    std::deque<Perm> queue{e};
    dc.assignment.emplace(e, idx);
    while (!queue.empty()) {
      Perm cur = std::move(queue.front());
      queue.pop_front();
      for (const Perm& yg : ygens) {
        for (Perm next : {compose(yg, cur), compose(cur, yg)}) {
          if (dc.assignment.emplace(next, idx).second) queue.push_back(std::move(next));
        }
      }
    }
  }
  if (dc.reps.size() < 2)
    fail(Err::NotCoreFree, "a single double coset means the subgroup is everything");
  return dc;
}

Perm pick_shift(const PermGroup& x, const PermGroup& y, const PermGroup& t) {
  if (!is_subgroup(t, x)) fail(Err::NotSubgroup, "the shift source must sit inside");
  if (t.order() > BigInt(kElementCap)) fail(Err::OrderCap, "too many elements to enumerate");
  for (const Perm& e : sorted_elements(t))
    if (!y.contains(e)) return e;
  fail(Err::SocleInsideStabilizer, "every designated element fixes the base point");
}

Perm embed_base(const ProductInstance& inst, const std::vector<Perm>& components) {
  int n = inst.x.degree(), d = inst.d, deg = inst.g.degree();
  if (static_cast<int>(components.size()) != d)
    fail(Err::AritySize, "one component per coordinate");
  for (const Perm& c : components)
    if (c.degree() != n) fail(Err::DegreeMismatch, "component degree must match the coordinate group");
  std::vector<int> img(deg);
  for (int code = 0; code < deg; ++code) {
    std::vector<int> tup = tuple_from_code(code, n, d);
    for (int i = 0; i < d; ++i) tup[i] = components[i][tup[i]];
    img[code] = tuple_code(tup, n);
  }
  return Perm::from_images(img);
}

Perm embed_in_coordinates(const ProductInstance& inst, const std::vector<int>& delta,
                          const Perm& e) {
  std::vector<Perm> comps(inst.d, Perm(inst.x.degree()));
  for (int i : delta) {
    if (i < 0 || i >= inst.d) fail(Err::PointOutOfRange, "coordinate outside the instance");
    comps[i] = e;
  }
  return embed_base(inst, comps);
}

Perm top_component(const ProductInstance& inst, const Perm& p) {
  int n = inst.x.degree(), d = inst.d;
  if (p.degree() != inst.g.degree()) fail(Err::DegreeMismatch, "element of the wreath expected");
  std::vector<int> u0 = tuple_from_code(p[0], n, d);
  std::vector<int> sig(d, -1);
  for (int i = 0; i < d; ++i) {
    std::vector<int> u1 = tuple_from_code(p[unit_code(n, d, i, 1)], n, d);
    int j = -1;
    for (int k = 0; k < d; ++k)
      if (u1[k] != u0[k]) {
        if (j >= 0) fail(Err::PropertyViolation, "element does not respect the coordinates");
        j = k;
      }
    if (j < 0) fail(Err::PropertyViolation, "element does not respect the coordinates");
    sig[i] = j;
  }
  return Perm::from_images(sig);
}

std::vector<Perm> base_components(const ProductInstance& inst, const Perm& v) {
  int n = inst.x.degree(), d = inst.d;
  if (!top_component(inst, v).is_identity())
    fail(Err::BadInput, "element moves coordinates, not a base element");
  std::vector<Perm> comps;
  for (int i = 0; i < d; ++i) {
    std::vector<int> img(n);
    for (int w = 0; w < n; ++w) img[w] = tuple_from_code(v[unit_code(n, d, i, w)], n, d)[i];
    comps.push_back(Perm::from_images(img));
  }
  if (embed_base(inst, comps) != v)
    fail(Err::BadInput, "element is not a coordinate-wise product");
  return comps;
}

PermGroup two_point_stabilizer(const ProductInstance& inst, const Perm& v, const Caps&) {
  if (v.degree() != inst.g.degree()) fail(Err::DegreeMismatch, "conjugator degree mismatch");
  if (!inst.g.contains(v)) fail(Err::NotAMember, "conjugator must lie in the wreath product");
  check_enumeration_caps(inst);
  PermGroup hv = inst.h.conjugated(v);
  std::vector<Perm> kept;
  inst.h.each_element([&](const Perm& e) {
    if (hv.contains(e)) kept.push_back(e);
  });
  return group_from_elements(inst.g.degree(), kept);
}

PermGroup top_projection(const ProductInstance& inst, const Perm& v, const Caps& caps) {
  PermGroup iv = two_point_stabilizer(inst, v, caps);
  return projection_with_agreement(inst, v, iv, caps);
}

TwoPointReport two_point_report(const ProductInstance& inst, const Caps& caps) {
  TwoPointReport rep;
  rep.dl_y = solvable_length(inst.y, "the point stabilizer");

  // smallest certified coordinate subset that is neither empty nor everything,
  // so the shift genuinely moves the base tuple
  CertifiedFamily fam = good_subsets(inst.s, 5, caps);
  int pick = -1;
  for (size_t i = 0; i < fam.family.colorings.size() && pick < 0; ++i) {
    int sz = 0;
    for (uint8_t c : fam.family.colorings[i]) sz += c;
    if (sz > 0 && sz < inst.d) pick = static_cast<int>(i);
  }
  if (pick < 0) fail(Err::SearchExhausted, "no proper nonempty coordinate class");
  for (int i = 0; i < inst.d; ++i)
    if (fam.family.colorings[pick][i]) rep.delta.push_back(i);

  rep.shift = pick_shift(inst.x, inst.y, inst.t);
  rep.v = embed_in_coordinates(inst, rep.delta, rep.shift);
  rep.base_point = 0;
  rep.moved_point = rep.v[0];
  if (rep.moved_point == rep.base_point)
    fail(Err::PropertyViolation, "the shift failed to move the base tuple");

  PermGroup iv = two_point_stabilizer(inst, rep.v, caps);
  rep.intersection_order = iv.order();
  PermGroup proj = projection_with_agreement(inst, rep.v, iv, caps);

  // intersecting with the base group lands inside the coordinate-wise
  // stabilizers: both filtrations must collect the same elements
  std::vector<Perm> base_part;
  size_t inner_count = 0;
  iv.each_element([&](const Perm& e) {
    if (!top_component(inst, e).is_identity()) return;
    base_part.push_back(e);
    bool inner = true;
    for (const Perm& c : base_components(inst, e))
      if (!inst.y.contains(c)) {
        inner = false;
        break;
      }
    if (inner) ++inner_count;
  });
  if (inner_count != base_part.size())
    fail(Err::PropertyViolation, "base-group part escapes the coordinate-wise stabilizers");
  PermGroup ibase = group_from_elements(inst.g.degree(), base_part);

  rep.dl_base_part = solvable_length(ibase, "the base-group part");
  rep.dl_projection = solvable_length(proj, "the projection");
  rep.dl_intersection = solvable_length(iv, "the two-point stabilizer");

  PermGroup pair = inst.g.pointwise_stabilizer({rep.base_point, rep.moved_point});
  if (!is_subgroup(pair, iv))
    fail(Err::PropertyViolation, "the point-pair stabilizer escapes the intersection");
  rep.dl_point_pair = solvable_length(pair, "the point-pair stabilizer");

  if (rep.dl_base_part > rep.dl_y)
    fail(Err::PropertyViolation, "base-group part exceeds the stabilizer's derived length");
  if (rep.dl_projection > 3)
    fail(Err::PropertyViolation, "projection exceeds derived length 3");
  if (rep.dl_intersection > rep.dl_base_part + rep.dl_projection)
    fail(Err::PropertyViolation, "derived length fails to split along the projection");
  if (rep.dl_intersection > rep.dl_y + 3)
    fail(Err::PropertyViolation, "two-point stabilizer exceeds the guaranteed bound");
  if (rep.dl_point_pair > rep.dl_intersection)
    fail(Err::PropertyViolation, "point-pair stabilizer exceeds the intersection bound");
  return rep;
}

int randomized_projection_agreement(const ProductInstance& inst, int trials, uint64_t seed,
                                    const Caps& caps) {
  if (trials < 1) fail(Err::BadInput, "need a positive trial count");
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<Perm> comps;
    for (int i = 0; i < inst.d; ++i) comps.push_back(inst.x.random_element(rng));
    Perm v = embed_base(inst, comps);
    top_projection(inst, v, caps);
  }
  return trials;
}

bool small_set_stabilizer_check(const ProductInstance& inst, int delta_size, const Caps& caps) {
  if (delta_size < 2 || delta_size > 4) fail(Err::BadInput, "supported set sizes are 2, 3 and 4");
  TwoPointReport rep = two_point_report(inst, caps);
  PermGroup iv = two_point_stabilizer(inst, rep.v, caps);

  std::vector<int> pts{rep.base_point, rep.moved_point};
  auto has = [&](int p) { return std::find(pts.begin(), pts.end(), p) != pts.end(); };
  auto fixed_by_iv = [&](int p) {
    for (const Perm& gen : iv.generators())
      if (gen[p] != p) return false;
    return true;
  };
  for (int p = 0; p < inst.g.degree() && static_cast<int>(pts.size()) < delta_size; ++p)
    if (!has(p) && fixed_by_iv(p)) pts.push_back(p);
  for (int p = 0; p < inst.g.degree() && static_cast<int>(pts.size()) < delta_size; ++p)
    if (!has(p)) pts.push_back(p);

  Mask m;
  for (int p : pts) m.set(p);
  PermGroup stab = subset_stabilizer(inst.g, m, caps.orbit);
  DerivedSeriesReport ds = derived_series(stab);
  return ds.solvable && ds.derived_length <= rep.dl_intersection + 3;
}

}  // namespace setstab
