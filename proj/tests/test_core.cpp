#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "bridge.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "setstab/builtins.hpp"
#include "setstab/group.hpp"
#include "setstab/perm.hpp"

using namespace setstab;

TEST_CASE("composition is left-to-right") {
  Perm p = Perm::from_cycles(3, {{0, 1, 2}});
  Perm q = Perm::from_cycles(3, {{0, 1}});
  // (p*q)(x) = q(p(x))
  CHECK_EQ(bridge::images_of(p * q), (oracle::Images{0, 2, 1}));
  CHECK_EQ(bridge::images_of(q * p), (oracle::Images{2, 1, 0}));
  CHECK_EQ(compose(p, q), p * q);
  for (int x = 0; x < 3; ++x) CHECK_EQ((p * q)[x], q[p[x]]);
}

TEST_CASE("permutation basics") {
  Perm p = Perm::from_cycles(5, {{0, 1, 2}, {3, 4}});
  CHECK_EQ(p.degree(), 5);
  CHECK_EQ(bridge::images_of(p), (oracle::Images{1, 2, 0, 4, 3}));
  CHECK((p * p.inverse()).is_identity());
  CHECK_EQ(bridge::images_of(p.inverse()), (oracle::Images{2, 0, 1, 4, 3}));
  CHECK_EQ(p.cycle_string(), "(0 1 2)(3 4)");
  CHECK_EQ(Perm(4).cycle_string(), "()");
  CHECK_EQ(p.smallest_moved(), 0);
  CHECK_EQ(Perm::from_cycles(5, {{3, 4}}).smallest_moved(), 3);
  CHECK_EQ(conjugate(Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}}))
               .cycle_string(),
           "(1 2)");
}

TEST_CASE("permutation validation") {
  CHECK_EQ(bridge::error_code_of([] { Perm::from_images({0, 0, 1}); }), Err::NotABijection);
  CHECK_EQ(bridge::error_code_of([] { Perm::from_images({0, 3}); }), Err::NotABijection);
  CHECK_EQ(bridge::error_code_of([] { Perm(300); }), Err::DegreeCap);
  CHECK_EQ(bridge::error_code_of([] { Perm::from_cycles(3, {{0, 5}}); }), Err::PointOutOfRange);
  CHECK_EQ(bridge::error_code_of([] { Perm::from_cycles(3, {{0, 1, 0}}); }), Err::NotABijection);
}

TEST_CASE("subset images follow the point action") {
  Perm p = Perm::from_cycles(4, {{0, 1, 2, 3}});
  Mask s = Mask::of_points({0, 1});
  CHECK_EQ(p.apply(s).points(), (std::vector<int>{1, 2}));
  Perm q = Perm::from_cycles(4, {{0, 2}});
  CHECK_EQ(q.apply(p.apply(s)), (p * q).apply(s));
}

TEST_CASE("orbit of a point") {
  PermGroup s4 = symmetric_group(4);
  CHECK_EQ(s4.orbit(2), (std::vector<int>{0, 1, 2, 3}));
  PermGroup c = PermGroup(6, {Perm::from_cycles(6, {{0, 1, 2}, {3, 4}})});
  CHECK_EQ(c.orbit(4), (std::vector<int>{3, 4}));
  CHECK_EQ(c.orbit(5), (std::vector<int>{5}));
  auto orbs = c.orbits();
  REQUIRE_EQ(orbs.size(), 3);
  CHECK_EQ(orbs[0], (std::vector<int>{0, 1, 2}));
  CHECK_EQ(c.max_orbit_length(), 3);
  CHECK(!c.is_transitive());
  CHECK(s4.is_transitive());
}

TEST_CASE("orders match brute-force closure") {
  // every builtin the later experiments lean on, each small enough to enumerate
  const char* specs[] = {"sym:4",        "alt:4",   "alt:5",   "cyc:6",
                         "agl1:5",       "agl1:7",  "agl1:8",  "agammal1:8",
                         "agl2:3",       "sym:5",   "trivial:3",
                         "wr_imp(sym:2,sym:3)", "wr_imp(sym:3,sym:2)",
                         "wr_prod(sym:3,sym:2)", "wr_imp(sym:2,sym:2)"};
  for (const char* s : specs) {
    CAPTURE(s);
    PermGroup g = parse_group(s);
    CHECK_EQ(g.order(), BigInt(bridge::elements_of(g).size()));
  }
  CHECK_EQ(symmetric_group(4).order(), 24);
  CHECK_EQ(parse_group("agl2:3").order(), 432);
  CHECK_EQ(parse_group("agammal1:8").order(), 168);
  CHECK_EQ(parse_group("agl1:8").order(), 56);
  CHECK_EQ(trivial_group(5).order(), 1);
  CHECK_EQ(alternating_group(4).order(), 12);
  CHECK_EQ(symmetric_group(12).order(), BigInt(479001600));
}

TEST_CASE("membership") {
  PermGroup a4 = alternating_group(4);
  CHECK(!a4.contains(Perm::from_cycles(4, {{0, 1}})));
  CHECK(a4.contains(Perm(4)));
  CHECK(a4.contains(Perm::from_cycles(4, {{0, 1}, {2, 3}})));
  PermGroup s3at4(4, {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{0, 1, 2}})});
  CHECK(s3at4.contains(Perm::from_cycles(4, {{0, 1, 2}})));
  CHECK(!s3at4.contains(Perm::from_cycles(4, {{2, 3}})));
  CHECK_EQ(bridge::error_code_of([&] { a4.contains(Perm(5)); }), Err::DegreeMismatch);

  // exact agreement with the enumerated element set
  for (const char* s : {"agl1:5", "wr_imp(sym:2,sym:3)", "alt:4"}) {
    CAPTURE(s);
    PermGroup g = parse_group(s);
    auto elems = bridge::elements_of(g);
    std::set<oracle::Images> in(elems.begin(), elems.end());
    for (const auto& e : elems) CHECK(g.contains(bridge::perm_of(e)));
    // walk a few permutations outside the set
    auto probe = oracle::oid(g.degree());
    int misses = 0;
    do {
      if (!in.count(probe)) {
        CHECK(!g.contains(bridge::perm_of(probe)));
        if (++misses == 20) break;
      }
    } while (std::next_permutation(probe.begin(), probe.end()));
  }
}

TEST_CASE("pointwise stabilizers") {
  CHECK_EQ(symmetric_group(3).pointwise_stabilizer({0}).order(), 2);
  CHECK_EQ(symmetric_group(4).pointwise_stabilizer({0, 1, 2}).order(), 1);
  PermGroup agl5 = parse_group("agl1:5");
  CHECK_EQ(agl5.pointwise_stabilizer({0, 1}).order(), 1);
  CHECK_EQ(oracle::stab_of_points(bridge::elements_of(agl5), {0, 1}).size(), 1);
  CHECK_EQ(agl5.pointwise_stabilizer({0}).order(), 4);

  // orbit-stabilizer identity over a spread of groups and points
  for (const char* s : {"sym:4", "agl1:7", "agammal1:8", "wr_imp(sym:3,sym:2)", "cyc:6"}) {
    CAPTURE(s);
    PermGroup g = parse_group(s);
    for (int x = 0; x < g.degree(); ++x)
      CHECK_EQ(BigInt(g.orbit(x).size()) * g.pointwise_stabilizer({x}).order(), g.order());
  }

  // exact element agreement with the brute filter
  PermGroup w = parse_group("wr_imp(sym:2,sym:3)");
  auto brute = oracle::stab_of_points(bridge::elements_of(w), {0, 2});
  PermGroup h = w.pointwise_stabilizer({0, 2});
  CHECK_EQ(h.order(), BigInt(brute.size()));
  for (const auto& e : brute) CHECK(h.contains(bridge::perm_of(e)));

  CHECK_EQ(bridge::error_code_of([&] { w.pointwise_stabilizer({9}); }), Err::PointOutOfRange);
}

TEST_CASE("normal closure") {
  PermGroup s4 = symmetric_group(4);
  PermGroup v4 = normal_closure(s4, {Perm::from_cycles(4, {{0, 1}, {2, 3}})});
  CHECK_EQ(v4.order(), 4);
  CHECK(is_elementary_abelian_2(v4));
  CHECK_EQ(normal_closure(symmetric_group(3), {Perm::from_cycles(3, {{0, 1, 2}})}).order(), 3);
  CHECK_EQ(normal_closure(s4, {Perm(4)}).order(), 1);
  CHECK_EQ(bridge::error_code_of([&] {
             normal_closure(alternating_group(4), {Perm::from_cycles(4, {{0, 1}})});
           }),
           Err::NotAMember);

  // closure really is normal and contains the seeds
  PermGroup g = parse_group("wr_imp(sym:2,sym:3)");
  Perm seed = g.generators()[0];
  PermGroup n = normal_closure(g, {seed});
  CHECK(n.contains(seed));
  for (const auto& c : g.generators())
    for (const auto& h : n.generators()) CHECK(n.contains(conjugate(h, c)));
}

TEST_CASE("derived series") {
  auto s4 = derived_series(symmetric_group(4));
  CHECK(s4.solvable);
  CHECK_EQ(s4.derived_length, 3);
  REQUIRE_EQ(s4.orders.size(), 4);
  CHECK_EQ(s4.orders[0], 24);
  CHECK_EQ(s4.orders[1], 12);
  CHECK_EQ(s4.orders[2], 4);
  CHECK_EQ(s4.orders[3], 1);

  auto a5 = derived_series(alternating_group(5));
  CHECK(!a5.solvable);
  CHECK_EQ(a5.derived_length, -1);
  CHECK_EQ(a5.orders.back(), 60);

  PermGroup w = parse_group("wr_imp(sym:3,sym:2)");
  CHECK_EQ(derived_length(w), 3);
  CHECK_EQ(oracle::derived_length(6, bridge::elements_of(w)), 3);
  CHECK(is_solvable(w));
  CHECK(!is_solvable(alternating_group(5)));
  CHECK_EQ(bridge::error_code_of([] { derived_length(symmetric_group(5)); }), Err::NotSolvable);

  // solvable subgroups never exceed the parent's derived length
  PermGroup agl2 = parse_group("agl2:3");
  int dl = derived_length(agl2);
  for (int x = 0; x < 3; ++x) CHECK(derived_length(agl2.pointwise_stabilizer({x})) <= dl);
}

TEST_CASE("elementary abelian 2-groups") {
  PermGroup v4(4, {Perm::from_cycles(4, {{0, 1}, {2, 3}}), Perm::from_cycles(4, {{0, 2}, {1, 3}})});
  CHECK(is_elementary_abelian_2(v4));
  CHECK(!is_elementary_abelian_2(symmetric_group(3)));
  CHECK(is_elementary_abelian_2(trivial_group(3)));
  CHECK(!is_elementary_abelian_2(cyclic_group(4)));
  CHECK(is_abelian(cyclic_group(4)));
  CHECK(!is_abelian(symmetric_group(3)));
}

TEST_CASE("element enumeration and sampling") {
  for (const char* s : {"sym:4", "agl1:5", "wr_imp(sym:2,sym:2)"}) {
    CAPTURE(s);
    PermGroup g = parse_group(s);
    std::set<Perm> seen;
    g.each_element([&](const Perm& p) {
      CHECK(g.contains(p));
      seen.insert(p);
    });
    CHECK_EQ(BigInt(seen.size()), g.order());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) CHECK(g.contains(g.random_element(rng)));
  }
}

TEST_CASE("group equality and subgroups") {
  CHECK(groups_equal(symmetric_group(3), PermGroup(3, {Perm::from_cycles(3, {{0, 1}}),
                                                       Perm::from_cycles(3, {{1, 2}})})));
  CHECK(!groups_equal(symmetric_group(3), alternating_group(3)));
  CHECK(is_subgroup(alternating_group(4), symmetric_group(4)));
  CHECK(!is_subgroup(symmetric_group(4), alternating_group(4)));

  std::vector<Perm> elems;
  symmetric_group(3).each_element([&](const Perm& p) { elems.push_back(p); });
  CHECK(groups_equal(group_from_elements(3, elems), symmetric_group(3)));
}

TEST_CASE("parser and group files") {
  CHECK_EQ(parse_group("sym:6").degree(), 6);
  CHECK_EQ(parse_group("cyc:7").order(), 7);
  CHECK_EQ(parse_group("wr_imp(sym:2, sym:3)").degree(), 6);
  CHECK_EQ(parse_group("wr_prod(sym:3,sym:2)").degree(), 9);
  CHECK_EQ(bridge::error_code_of([] { parse_group("nonsense:3"); }), Err::BadInput);
  CHECK_EQ(bridge::error_code_of([] { parse_group("sym:4 trailing"); }), Err::BadInput);
  CHECK_EQ(bridge::error_code_of([] { parse_group("sym:300"); }), Err::DegreeCap);

  {
    std::ofstream f("tmp_group.json");
    f << "{\"degree\": 3, \"generators\": [[1,0,2],[1,2,0]]}\n";
  }
  PermGroup g = parse_group("@tmp_group.json");
  CHECK(groups_equal(g, symmetric_group(3)));
  std::remove("tmp_group.json");
}

TEST_CASE("deterministic construction") {
  PermGroup a = parse_group("agl2:3");
  PermGroup b = parse_group("agl2:3");
  CHECK_EQ(a.generators(), b.generators());
  CHECK_EQ(a.order(), b.order());
  std::vector<Perm> ea, eb;
  a.each_element([&](const Perm& p) { ea.push_back(p); });
  b.each_element([&](const Perm& p) { eb.push_back(p); });
  CHECK(ea == eb);
}
