#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "bridge.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "setstab/actions.hpp"
#include "setstab/builtins.hpp"
#include "setstab/group.hpp"
#include "setstab/product.hpp"

using namespace setstab;

namespace {

Perm pimg(const std::vector<int>& v) { return Perm::from_images(v); }

ProductInstance classic2() {
  return make_product_instance(symmetric_group(5), alternating_group(5), 2,
                               symmetric_group(2));
}

ProductInstance affine2() {
  return make_product_instance(affine_line(5), cyclic_group(5), 2, symmetric_group(2));
}

// the intersection recomputed from raw element lists, no library group ops
std::vector<oracle::Images> brute_intersection(const std::vector<oracle::Images>& elems,
                                               const oracle::Images& v) {
  std::set<oracle::Images> pool(elems.begin(), elems.end());
  oracle::Images vi = oracle::oinverse(v);
  return oracle::filter(elems, [&](const oracle::Images& e) {
    return pool.count(oracle::ocompose(oracle::ocompose(v, e), vi)) != 0;
  });
}

std::set<oracle::Images> element_set(const PermGroup& g) {
  auto v = bridge::elements_of(g);
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("double cosets partition the group with least representatives") {
  PermGroup x = symmetric_group(5);
  PermGroup y = x.pointwise_stabilizer({0});
  DoubleCosetDecomposition dc = double_coset_reps(x, y);
  REQUIRE(dc.reps.size() == 2);
  CHECK(dc.reps[0] == pimg({0, 1, 2, 3, 4}));
  CHECK(dc.reps[1] == pimg({1, 0, 2, 3, 4}));
  CHECK(dc.assignment.size() == 120);

  // brute double coset of each rep: every member carries the rep's index and
  // the rep is the least member; sizes add up to the whole group
  auto yelems = bridge::elements_of(y);
  size_t covered = 0;
  for (size_t j = 0; j < dc.reps.size(); ++j) {
    oracle::Images rep = bridge::images_of(dc.reps[j]);
    oracle::Images least = rep;
    std::set<oracle::Images> seen;
    for (const auto& a : yelems)
      for (const auto& b : yelems) {
        oracle::Images e = oracle::ocompose(oracle::ocompose(a, rep), b);
        if (!seen.insert(e).second) continue;
        least = std::min(least, e);
        CHECK(dc.assignment.at(bridge::perm_of(e)) == static_cast<int>(j));
      }
    CHECK(least == rep);
    covered += seen.size();
  }
  CHECK(covered == 120);

  // rank: one class per orbit of the stabilizer on points
  CHECK(dc.reps.size() == y.orbits().size());

  PermGroup agl = affine_line(5);
  PermGroup c4 = agl.pointwise_stabilizer({0});
  DoubleCosetDecomposition frob = double_coset_reps(agl, c4);
  CHECK(frob.reps.size() == 2);
  CHECK(frob.reps.size() == c4.orbits().size());
  CHECK(frob.assignment.size() == 20);

  // trivial stabilizer: every element is its own class
  PermGroup rot = cyclic_group(6);
  DoubleCosetDecomposition regular = double_coset_reps(rot, trivial_group(6));
  CHECK(regular.reps.size() == 6);
  auto all = bridge::elements_of(rot);
  std::sort(all.begin(), all.end());
  for (size_t j = 0; j < 6; ++j) CHECK(bridge::images_of(regular.reps[j]) == all[j]);

  CHECK(bridge::error_code_of([&] { double_coset_reps(x, x); }) == Err::NotCoreFree);
  CHECK(bridge::error_code_of([&] { double_coset_reps(alternating_group(5), y); }) ==
        Err::NotSubgroup);
  PermGroup big = symmetric_group(10);
  PermGroup bigstab = big.pointwise_stabilizer({0});
  CHECK(bridge::error_code_of([&] { double_coset_reps(big, bigstab); }) == Err::OrderCap);
}

TEST_CASE("the shift is the least element outside the stabilizer") {
  PermGroup x = symmetric_group(5);
  PermGroup y = x.pointwise_stabilizer({0});
  PermGroup t = alternating_group(5);
  Perm c2 = pick_shift(x, y, t);
  CHECK(c2 == pimg({1, 0, 2, 4, 3}));
  CHECK(c2[0] != 0);
  CHECK(t.contains(c2));
  CHECK_FALSE(y.contains(c2));
  // brute: nothing smaller qualifies
  auto telems = bridge::elements_of(t);
  std::sort(telems.begin(), telems.end());
  for (const auto& e : telems) {
    if (bridge::perm_of(e) == c2) break;
    CHECK(y.contains(bridge::perm_of(e)));
  }

  PermGroup agl = affine_line(5);
  Perm shift = pick_shift(agl, agl.pointwise_stabilizer({0}), cyclic_group(5));
  CHECK(shift == pimg({1, 2, 3, 4, 0}));

  CHECK(bridge::error_code_of([&] { pick_shift(x, y, y); }) == Err::SocleInsideStabilizer);
  CHECK(bridge::error_code_of([&] { pick_shift(x, y, trivial_group(5)); }) ==
        Err::SocleInsideStabilizer);
  CHECK(bridge::error_code_of([&] { pick_shift(alternating_group(5), y, x); }) ==
        Err::NotSubgroup);
}

TEST_CASE("instance construction checks every precondition") {
  ProductInstance inst = classic2();
  CHECK(inst.g.degree() == 25);
  CHECK(inst.g.order() == BigInt(28800));
  CHECK(inst.h.order() == BigInt(1152));
  CHECK(inst.y.order() == BigInt(24));
  CHECK(groups_equal(inst.y, symmetric_group(5).pointwise_stabilizer({0})));

  PermGroup x = symmetric_group(5);
  PermGroup t = alternating_group(5);
  PermGroup s2 = symmetric_group(2);
  CHECK(bridge::error_code_of([&] { make_product_instance(x, t, 1, trivial_group(1)); }) ==
        Err::BadInput);
  CHECK(bridge::error_code_of([&] { make_product_instance(x, t, 2, symmetric_group(3)); }) ==
        Err::DegreeMismatch);
  CHECK(bridge::error_code_of([&] { make_product_instance(x, t, 2, trivial_group(2)); }) ==
        Err::NotTransitive);
  CHECK(bridge::error_code_of([&] { make_product_instance(trivial_group(5), t, 2, s2); }) ==
        Err::NotTransitive);
  CHECK(bridge::error_code_of([&] {
          make_product_instance(symmetric_group(6), alternating_group(6), 2, s2);
        }) == Err::NotSolvable);
  CHECK(bridge::error_code_of([&] {
          make_product_instance(symmetric_group(5), alternating_group(5), 5,
                                symmetric_group(5));
        }) == Err::NotSolvable);
  PermGroup flip(5, {pimg({1, 0, 2, 3, 4})});
  CHECK(bridge::error_code_of([&] { make_product_instance(x, flip, 2, s2); }) ==
        Err::NotNormal);
  CHECK(bridge::error_code_of([&] { make_product_instance(x, trivial_group(5), 2, s2); }) ==
        Err::SocleInsideStabilizer);
  CHECK(bridge::error_code_of([&] {
          make_product_instance(alternating_group(5), symmetric_group(5), 2, s2);
        }) == Err::NotSubgroup);
}

TEST_CASE("coordinate embeddings and their inverses round-trip") {
  ProductInstance inst = classic2();
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Perm> comps{inst.x.random_element(rng), inst.x.random_element(rng)};
    Perm v = embed_base(inst, comps);
    CHECK(inst.g.contains(v));
    CHECK(base_components(inst, v) == comps);
    CHECK(top_component(inst, v).is_identity());
  }

  // acting by the embedded tuple then reading coordinates matches acting
  // coordinate-wise
  Perm a = inst.x.generators()[0];
  Perm b = inst.x.generators().back();
  Perm v = embed_base(inst, {a, b});
  for (int p = 0; p < 25; ++p) {
    int i = p / 5, j = p % 5;
    CHECK(v[p] == a[i] * 5 + b[j]);
  }

  Perm c2 = pick_shift(inst.x, inst.y, inst.t);
  Perm placed = embed_in_coordinates(inst, {1}, c2);
  auto comps = base_components(inst, placed);
  CHECK(comps[0].is_identity());
  CHECK(comps[1] == c2);
  CHECK(inst.t.contains(comps[0]));
  CHECK(inst.t.contains(comps[1]));

  // top extraction undoes the wreath's own coordinate action
  int found = 0;
  for (const Perm& gg : inst.g.generators()) {
    Perm sig = top_component(inst, gg);
    if (!sig.is_identity()) {
      ++found;
      CHECK(sig == pimg({1, 0}));
    }
  }
  CHECK(found >= 1);

  CHECK(bridge::error_code_of([&] { embed_base(inst, {a}); }) == Err::AritySize);
  CHECK(bridge::error_code_of([&] { embed_base(inst, {a, Perm(3)}); }) == Err::DegreeMismatch);
  CHECK(bridge::error_code_of([&] { embed_in_coordinates(inst, {2}, c2); }) ==
        Err::PointOutOfRange);
  CHECK(bridge::error_code_of([&] { base_components(inst, inst.g.generators().back()); }) ==
        Err::BadInput);
  CHECK(bridge::error_code_of([&] { top_component(inst, Perm(5)); }) == Err::DegreeMismatch);
}

TEST_CASE("two-point stabilizer equals the brute-force intersection") {
  ProductInstance inst = classic2();
  Perm c2 = pick_shift(inst.x, inst.y, inst.t);
  Perm v = embed_in_coordinates(inst, {1}, c2);

  PermGroup iv = two_point_stabilizer(inst, v);
  CHECK(iv.order() == BigInt(144));

  auto helems = bridge::elements_of(inst.h);
  auto brute = brute_intersection(helems, bridge::images_of(v));
  CHECK(brute.size() == 144);
  std::set<oracle::Images> lib = element_set(iv);
  CHECK(lib == std::set<oracle::Images>(brute.begin(), brute.end()));
  CHECK(oracle::derived_length(25, brute) == 3);

  // same subgroup rebuilt from all 28800 wreath elements without using the
  // library's point stabilizer: fix the base point before and after v
  auto gelems = bridge::elements_of(inst.g);
  CHECK(gelems.size() == 28800);
  oracle::Images vim = bridge::images_of(v), vinv = oracle::oinverse(vim);
  auto hcaphv = oracle::filter(gelems, [&](const oracle::Images& e) {
    return e[0] == 0 && oracle::ocompose(oracle::ocompose(vim, e), vinv)[0] == 0;
  });
  CHECK(std::set<oracle::Images>(hcaphv.begin(), hcaphv.end()) == lib);

  // identity conjugator keeps everything
  PermGroup whole = two_point_stabilizer(inst, Perm(25));
  CHECK(whole.order() == inst.h.order());
  CHECK(groups_equal(whole, inst.h));

  CHECK(bridge::error_code_of([&] { two_point_stabilizer(inst, Perm(5)); }) ==
        Err::DegreeMismatch);
  std::vector<int> img(25);
  for (int i = 0; i < 25; ++i) img[i] = i;
  std::swap(img[0], img[1]);
  CHECK(bridge::error_code_of([&] { two_point_stabilizer(inst, pimg(img)); }) ==
        Err::NotAMember);

  PermGroup fat = parse_group("wr_imp(sym:4,sym:3)");
  ProductInstance wide = make_product_instance(fat, fat, 2, symmetric_group(2));
  CHECK(bridge::error_code_of([&] { two_point_stabilizer(wide, Perm(144)); }) ==
        Err::OrderCap);
}

TEST_CASE("projection to the coordinate group, three ways") {
  ProductInstance inst = classic2();
  CHECK(top_projection(inst, Perm(25)).order() == BigInt(2));

  Perm c2 = pick_shift(inst.x, inst.y, inst.t);
  PermGroup proj = top_projection(inst, embed_in_coordinates(inst, {1}, c2));
  CHECK(proj.order() == BigInt(1));

  ProductInstance three = make_product_instance(symmetric_group(5), alternating_group(5), 3,
                                                symmetric_group(3));
  CHECK(top_projection(three, Perm(125)).order() == BigInt(6));
  PermGroup stab2 = top_projection(three, embed_in_coordinates(three, {2}, c2));
  CHECK(stab2.order() == BigInt(2));
  CHECK(stab2.contains(pimg({1, 0, 2})));

  // mixed tuple: coordinates 0 and 2 leave the stabilizer, 1 stays inside
  Perm inner = inst.y.generators()[0];
  PermGroup mixed = top_projection(three, embed_base(three, {c2, inner, c2}));
  CHECK(mixed.order() == BigInt(2));
  CHECK(mixed.contains(pimg({2, 1, 0})));

  // randomized conjugators keep all three computations in agreement
  CHECK(randomized_projection_agreement(inst, 12, 5) == 12);
  CHECK(randomized_projection_agreement(three, 8, 5) == 8);
  ProductInstance cyc = make_product_instance(symmetric_group(5), alternating_group(5), 3,
                                              cyclic_group(3));
  CHECK(randomized_projection_agreement(cyc, 8, 5) == 8);
  CHECK(randomized_projection_agreement(affine2(), 12, 5) == 12);
  CHECK(bridge::error_code_of([&] { randomized_projection_agreement(inst, 0, 1); }) ==
        Err::BadInput);
}

TEST_CASE("the two-point report certifies every claimed bound") {
  struct Expect {
    ProductInstance inst;
    std::vector<int> delta;
    int dl_y, dl_base, dl_proj, dl_inter, dl_pair;
    long long order;
  };
  std::vector<Expect> runs;
  runs.push_back({classic2(), {1}, 3, 3, 0, 3, 3, 144});
  runs.push_back({make_product_instance(symmetric_group(5), alternating_group(5), 3,
                                        symmetric_group(3)),
                  {2}, 3, 3, 1, 4, 4, 6912});
  runs.push_back({make_product_instance(symmetric_group(5), alternating_group(5), 3,
                                        cyclic_group(3)),
                  {2}, 3, 3, 0, 3, 3, 3456});
  runs.push_back({affine2(), {1}, 1, 1, 0, 1, 1, 4});

  for (const Expect& e : runs) {
    int degree = e.inst.g.degree();
    CAPTURE(degree);
    TwoPointReport rep = two_point_report(e.inst);
    CHECK(rep.delta == e.delta);
    CHECK(rep.dl_y == e.dl_y);
    CHECK(rep.dl_base_part == e.dl_base);
    CHECK(rep.dl_projection == e.dl_proj);
    CHECK(rep.dl_intersection == e.dl_inter);
    CHECK(rep.dl_point_pair == e.dl_pair);
    CHECK(rep.intersection_order == BigInt(e.order));

    CHECK(rep.base_point == 0);
    CHECK(rep.moved_point == rep.v[rep.base_point]);
    CHECK(rep.moved_point != rep.base_point);
    CHECK(rep.dl_projection <= 3);
    CHECK(rep.dl_intersection <= rep.dl_base_part + rep.dl_projection);
    CHECK(rep.dl_intersection <= rep.dl_y + 3);
    CHECK(rep.dl_y + 3 <= 13);
    CHECK(rep.dl_point_pair <= rep.dl_intersection);

    // the conjugator is a designated-subgroup tuple inside the wreath
    CHECK(e.inst.g.contains(rep.v));
    for (const Perm& comp : base_components(e.inst, rep.v))
      CHECK(e.inst.t.contains(comp));

    PermGroup iv = two_point_stabilizer(e.inst, rep.v);
    CHECK(iv.order() == rep.intersection_order);
    PermGroup pair = e.inst.g.pointwise_stabilizer({rep.base_point, rep.moved_point});
    CHECK(is_subgroup(pair, iv));

    // base-group part: identity on top, coordinates inside the stabilizer
    std::vector<Perm> base_part;
    iv.each_element([&](const Perm& el) {
      if (!top_component(e.inst, el).is_identity()) return;
      base_part.push_back(el);
      for (const Perm& comp : base_components(e.inst, el)) CHECK(e.inst.y.contains(comp));
    });
    DerivedSeriesReport ds = derived_series(group_from_elements(e.inst.g.degree(), base_part));
    CHECK(ds.solvable);
    CHECK(ds.derived_length == rep.dl_base_part);
  }

  // claimed derived lengths agree with the raw-element recomputation
  TwoPointReport rep = two_point_report(runs[0].inst);
  PermGroup iv = two_point_stabilizer(runs[0].inst, rep.v);
  auto elems = bridge::elements_of(iv);
  CHECK(oracle::derived_length(25, elems) == rep.dl_intersection);
  TwoPointReport frob = two_point_report(runs[3].inst);
  PermGroup fiv = two_point_stabilizer(runs[3].inst, frob.v);
  CHECK(oracle::derived_length(25, bridge::elements_of(fiv)) == frob.dl_intersection);
}

TEST_CASE("stabilizers of small point sets stay solvable and short") {
  ProductInstance inst = classic2();
  for (int size : {2, 3, 4}) CHECK(small_set_stabilizer_check(inst, size));
  ProductInstance frob = affine2();
  for (int size : {2, 3, 4}) CHECK(small_set_stabilizer_check(frob, size));

  // brute form of the size-2 claim: the set stabilizer of the point pair,
  // filtered from all 28800 elements, is solvable within the bound
  TwoPointReport rep = two_point_report(inst);
  auto gelems = bridge::elements_of(inst.g);
  auto pairstab = oracle::stab_of_set(gelems, {rep.base_point, rep.moved_point});
  int dl = oracle::derived_length(25, pairstab);
  CHECK(dl >= 0);
  CHECK(dl <= rep.dl_intersection + 3);
  Mask pairmask;
  pairmask.set(rep.base_point);
  pairmask.set(rep.moved_point);
  PermGroup lib = subset_stabilizer(inst.g, pairmask, Caps{}.orbit);
  CHECK(lib.order() == BigInt(static_cast<long long>(pairstab.size())));

  CHECK(bridge::error_code_of([&] { small_set_stabilizer_check(inst, 1); }) == Err::BadInput);
  CHECK(bridge::error_code_of([&] { small_set_stabilizer_check(inst, 5); }) == Err::BadInput);
}
