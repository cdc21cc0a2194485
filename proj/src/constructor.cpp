#include "setstab/constructor.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "setstab/census.hpp"
#include "setstab/errors.hpp"

namespace setstab {

namespace {

// stabilizer of a coloring, taking the exact blockwise route on declared
// wreath towers where the generic orbit walk would blow the cap
PermGroup stab_of(const PermGroup& g, const Coloring& c, const Caps& caps) {
  if (g.decl() && !g.decl()->product_action) return imprimitive_coloring_stabilizer(g, c, caps);
  return coloring_stabilizer(g, c, caps.orbit);
}

bool census_fits(int k, int n, const Caps& caps) {
  uint64_t space = 1;
  for (int t = 0; t < n; ++t) {
    if (space > caps.space / k) return false;
    space *= k;
  }
  return space <= caps.space;
}

Certificate certify(const PermGroup& g, Coloring z, std::vector<std::string> trace,
                    const Caps& caps) {
  Certificate cert;
  cert.coloring = std::move(z);
  PermGroup st = stab_of(g, cert.coloring, caps);
  cert.stabilizer_generators = st.generators();
  cert.max_orbit_length = st.max_orbit_length();
  cert.derived_length = derived_series(st).derived_length;
  cert.elementary_abelian_2 = is_elementary_abelian_2(st);
  cert.construction_trace = std::move(trace);
  return cert;
}

// index tuples over the per-orbit choices in lexicographic order (last orbit
// fastest), scattered back onto the orbit points; stops at `want`
std::vector<Coloring> cross_per_orbit(const std::vector<std::vector<int>>& orbs,
                                      const std::vector<std::vector<Coloring>>& per_orbit,
                                      int degree, int want) {
  std::vector<size_t> idx(per_orbit.size(), 0);
  std::vector<Coloring> out;
  bool more = true;
  while (more && static_cast<int>(out.size()) < want) {
    Coloring z(degree, 0);
    for (size_t j = 0; j < orbs.size(); ++j)
      for (size_t s = 0; s < orbs[j].size(); ++s) z[orbs[j][s]] = per_orbit[j][idx[j]][s];
    out.push_back(std::move(z));
    int j = static_cast<int>(idx.size()) - 1;
    for (; j >= 0; --j) {
      if (++idx[j] < per_orbit[j].size()) break;
      idx[j] = 0;
    }
    more = (j >= 0);
  }
  return out;
}

// slot coordinates transported from block 0, so every block's constituent is
// literally the block-0 constituent and inner patterns keep their stabilizer
// shape on every block; row j lists t_j(blocks[0][s]) with t_j carrying
// block 0 onto block j
std::vector<std::vector<int>> coherent_blocks(const PermGroup& g, const Blocks& blocks) {
  int m = static_cast<int>(blocks.size());
  std::vector<int> bof = block_of_point(blocks, g.degree());
  std::vector<Perm> t(m, Perm(g.degree()));
  std::vector<char> seen(m, 0);
  std::vector<int> order{0};
  seen[0] = 1;
  for (size_t q = 0; q < order.size(); ++q) {
    int j = order[q];
    for (const Perm& p : g.generators()) {
      int k = bof[p[blocks[j][0]]];
      if (!seen[k]) {
        seen[k] = 1;
        t[k] = compose(t[j], p);
        order.push_back(k);
      }
    }
  }
  if (static_cast<int>(order.size()) != m) fail(Err::NotTransitive, "blocks are not one orbit");
  std::vector<std::vector<int>> pts(m, std::vector<int>(blocks[0].size()));
  for (int j = 0; j < m; ++j)
    for (size_t s = 0; s < blocks[0].size(); ++s) pts[j][s] = t[j][blocks[0][s]];
  return pts;
}

std::string size_list(const std::vector<std::vector<int>>& orbs) {
  std::string s;
  for (const auto& o : orbs) {
    if (!s.empty()) s += ",";
    s += std::to_string(o.size());
  }
  return s;
}

void append_indented(std::vector<std::string>& trace, const std::vector<std::string>& inner) {
  for (const auto& line : inner) trace.push_back("  " + line);
}

CertifiedFamily good_subsets_impl(const PermGroup& g, int want, const Caps& caps, uint64_t seed);

// the three cases of the imprimitive recursion: how many outer colors, which
// stabilizer-orbit grade the outer coloring must meet, and the grade the
// inner classes are known to meet
struct CaseChoice {
  int x;
  int outer_grade;
  int inner_grade;
};

CaseChoice pick_case(int inner_classes) {
  if (inner_classes >= 5) return {5, 1, 6};
  if (inner_classes == 4) return {4, 2, 3};
  return {3, 3, 2};
}

CertifiedFamily good_subsets_impl(const PermGroup& g, int want, const Caps& caps, uint64_t seed) {
  int n = g.degree();
  CertifiedFamily out;
  out.family.pairwise_inequivalent = true;

  if (n == 1) {
    for (int v = 0; v < std::min(want, 2); ++v) {
      Coloring z{static_cast<uint8_t>(v)};
      out.family.colorings.push_back(z);
      out.certificates.push_back(certify(g, std::move(z), {"single point: both subsets"}, caps));
    }
    return out;
  }

  auto orbs = g.orbits();
  if (orbs.size() > 1) {
    std::vector<std::vector<Coloring>> per(orbs.size());
    std::vector<std::string> trace{"split over point orbits of sizes " + size_list(orbs)};
    for (size_t j = 0; j < orbs.size(); ++j) {
      CertifiedFamily sub = good_subsets_impl(g.restrict_to(orbs[j]), want, caps, seed);
      per[j] = sub.family.colorings;
      if (j == 0) append_indented(trace, sub.certificates[0].construction_trace);
    }
    for (Coloring& z : cross_per_orbit(orbs, per, n, want)) {
      out.family.colorings.push_back(z);
      out.certificates.push_back(certify(g, std::move(z), trace, caps));
    }
    return out;
  }

  if (is_primitive(g)) {
    if (census_fits(2, n, caps)) {
      CensusReport rep = coloring_census(g, 2, caps, 1);
      for (const auto& cls : rep.classes) {
        if (static_cast<int>(out.family.colorings.size()) == want) break;
        if (cls.max_orbit_length > 6) continue;
        Certificate cert;
        cert.coloring = cls.rep;
        cert.stabilizer_generators = cls.stab_gens;
        cert.max_orbit_length = cls.max_orbit_length;
        cert.derived_length = cls.derived_length;
        cert.elementary_abelian_2 = is_elementary_abelian_2(PermGroup(n, cls.stab_gens));
        cert.construction_trace = {"primitive degree " + std::to_string(n) +
                                   ": censused all subsets"};
        out.family.colorings.push_back(cls.rep);
        out.certificates.push_back(std::move(cert));
      }
      if (static_cast<int>(out.family.colorings.size()) < want && n >= 4)
        fail(Err::SearchExhausted, "primitive census found fewer good subset classes than guaranteed");
    } else {
      ColoringFamily fam = asymmetric_colorings(g, 2, 6, want, caps, seed);
      for (Coloring& z : fam.colorings) {
        out.family.colorings.push_back(z);
        out.certificates.push_back(
            certify(g, std::move(z),
                    {"primitive degree " + std::to_string(n) + ": sampled subsets, seed " +
                     std::to_string(seed)},
                    caps));
      }
    }
    return out;
  }

  Blocks blocks = maximal_block_system(g);
  PermGroup a = blocks_action(g, blocks);
  PermGroup bcon = block_constituent(g, blocks, 0);
  int m = static_cast<int>(blocks.size()), b = bcon.degree();
  std::vector<std::vector<int>> pts = coherent_blocks(g, blocks);

  CertifiedFamily inner = good_subsets_impl(bcon, 5, caps, seed);
  CaseChoice cs = pick_case(static_cast<int>(inner.family.colorings.size()));
  for (size_t t = 0; t < inner.certificates.size() && t < static_cast<size_t>(cs.x); ++t)
    if (inner.certificates[t].max_orbit_length > cs.inner_grade)
      fail(Err::PropertyViolation, "inner subset classes exceed the orbit grade of their case");

  std::vector<std::string> trace{
      "imprimitive: " + std::to_string(m) + " blocks of " + std::to_string(b),
      "case x=" + std::to_string(cs.x) + " y=2: outer grade " + std::to_string(cs.outer_grade) +
          ", inner grade " + std::to_string(cs.inner_grade),
      census_fits(cs.x, m, caps)
          ? "outer colorings censused on the blocks action"
          : "outer colorings sampled on the blocks action, seed " + std::to_string(seed)};
  append_indented(trace, inner.certificates[0].construction_trace);

  ColoringFamily xf = asymmetric_colorings(a, cs.x, cs.outer_grade, want, caps, seed);
  for (int t = 0; t < static_cast<int>(xf.colorings.size()); ++t) {
    const Coloring& x = xf.colorings[t];
    Coloring z(n, 0);
    for (int j = 0; j < m; ++j)
      for (int s = 0; s < b; ++s) z[pts[j][s]] = inner.family.colorings[x[j]][s];
    std::vector<std::string> tr = trace;
    tr.push_back("outer coloring class " + std::to_string(t));
    Certificate cert = certify(g, z, std::move(tr), caps);
    if (cert.max_orbit_length > 6)
      fail(Err::PropertyViolation, "combined subset stabilizer exceeds orbit length 6");
    out.family.colorings.push_back(std::move(z));
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

struct Asym3Family {
  std::vector<Coloring> colorings;
  std::vector<std::string> trace;
};

// `want` inequivalent 3-colorings whose stabilizers have all orbits <= 2;
// inner levels always request five, mirroring the subset recursion with x=5
// outer colors and the inner 3-colorings as block colors
Asym3Family asym3_family(const PermGroup& g, int want, const Caps& caps, uint64_t seed) {
  int n = g.degree();
  Asym3Family out;

  if (n == 1) {
    for (int v = 0; v < std::min(want, 3); ++v) out.colorings.push_back({static_cast<uint8_t>(v)});
    out.trace = {"single point: constant colorings"};
    return out;
  }

  auto orbs = g.orbits();
  if (orbs.size() > 1) {
    std::vector<std::vector<Coloring>> per(orbs.size());
    out.trace = {"split over point orbits of sizes " + size_list(orbs)};
    for (size_t j = 0; j < orbs.size(); ++j) {
      Asym3Family sub = asym3_family(g.restrict_to(orbs[j]), 5, caps, seed);
      per[j] = std::move(sub.colorings);
      if (j == 0) append_indented(out.trace, sub.trace);
    }
    out.colorings = cross_per_orbit(orbs, per, n, want);
    return out;
  }

  if (is_primitive(g)) {
    out.trace = {census_fits(3, n, caps)
                     ? "primitive degree " + std::to_string(n) + ": censused 3-colorings"
                     : "primitive degree " + std::to_string(n) +
                           ": sampled 3-colorings, seed " + std::to_string(seed)};
    out.colorings = asymmetric_colorings(g, 3, 2, want, caps, seed).colorings;
    return out;
  }

  Blocks blocks = maximal_block_system(g);
  PermGroup a = blocks_action(g, blocks);
  PermGroup bcon = block_constituent(g, blocks, 0);
  int m = static_cast<int>(blocks.size()), b = bcon.degree();
  std::vector<std::vector<int>> pts = coherent_blocks(g, blocks);

  Asym3Family inner = asym3_family(bcon, 5, caps, seed);
  if (inner.colorings.size() < 5)
    fail(Err::SearchExhausted, "fewer than five inner 3-coloring classes");
  out.trace = {"imprimitive: " + std::to_string(m) + " blocks of " + std::to_string(b),
               "case x=5 y=3: asymmetric outer colorings"};
  append_indented(out.trace, inner.trace);

  ColoringFamily xf = asymmetric_colorings(a, 5, 1, want, caps, seed);
  for (const Coloring& x : xf.colorings) {
    Coloring z(n, 0);
    for (int j = 0; j < m; ++j)
      for (int s = 0; s < b; ++s) z[pts[j][s]] = inner.colorings[x[j]][s];
    out.colorings.push_back(std::move(z));
  }
  return out;
}

} // namespace

Coloring combine_colorings(const Coloring& x, const std::vector<Coloring>& ys,
                           const WreathStructure& structure) {
  if (structure.product_action || !structure.bottom || !structure.top)
    fail(Err::AritySize, "combining needs the blocks form of a wreath structure");
  int m = structure.top->degree(), b = structure.bottom->degree();
  if (static_cast<int>(x.size()) != m)
    fail(Err::AritySize, "outer coloring length must match the block count");
  if (static_cast<int>(ys.size()) != color_count_used(x))
    fail(Err::AritySize, "need exactly one inner coloring per color of the outer one");
  for (const Coloring& y : ys)
    if (static_cast<int>(y.size()) != b)
      fail(Err::AritySize, "inner coloring length must match the block size");
  Coloring z(static_cast<size_t>(m) * b);
  for (int j = 0; j < m; ++j)
    for (int s = 0; s < b; ++s) z[j * b + s] = ys[x[j]][s];
  return z;
}

bool stab_embedding_check(const WreathStructure& structure, const Coloring& x,
                          const std::vector<Coloring>& ys, const Coloring& z, const Caps& caps) {
  if (structure.product_action || !structure.bottom || !structure.top)
    fail(Err::AritySize, "the check needs the blocks form of a wreath structure");
  const PermGroup& bot = *structure.bottom;
  const PermGroup& top = *structure.top;
  int m = top.degree(), b = bot.degree();
  if (static_cast<int>(x.size()) != m || static_cast<int>(z.size()) != m * b ||
      static_cast<int>(ys.size()) != color_count_used(x))
    fail(Err::AritySize, "coloring shapes do not match the structure");

  PermGroup g = wreath_imprimitive(bot, top);
  PermGroup sz = imprimitive_coloring_stabilizer(g, z, caps);

  // one stabilizer factor per block: the block-j constituent of Stab(z)
  // preserves the inner coloring block j carries
  std::vector<BigInt> order_of(ys.size());
  std::vector<int> maxorb_of(ys.size(), 1);
  std::vector<char> used(ys.size(), 0);
  for (uint8_t v : x) used[v] = 1;
  for (size_t i = 0; i < ys.size(); ++i) {
    if (!used[i]) continue;
    PermGroup sy = stab_of(bot, ys[i], caps);
    order_of[i] = sy.order();
    maxorb_of[i] = sy.max_orbit_length();
  }
  BigInt bound = 1;
  int inner_max = 1;
  for (uint8_t v : x) {
    bound *= order_of[v];
    inner_max = std::max(inner_max, maxorb_of[v]);
  }

  // colors of x carrying bottom-equivalent inner colorings are merged before
  // the top stabilizer enters either bound; with pairwise inequivalent ys the
  // merged coloring is x itself
  std::vector<int> cls(ys.size());
  std::vector<int> reps;
  for (size_t i = 0; i < ys.size(); ++i) {
    size_t r = 0;
    for (; r < reps.size(); ++r)
      if (coloring_transporter(bot, ys[reps[r]], ys[i], caps)) break;
    if (r == reps.size()) reps.push_back(static_cast<int>(i));
    cls[i] = static_cast<int>(r);
  }
  Coloring merged(x.size());
  for (size_t j = 0; j < x.size(); ++j) merged[j] = static_cast<uint8_t>(cls[x[j]]);
  PermGroup sx = coloring_stabilizer(top, merged, caps.orbit);
  bound *= sx.order();

  if (bound % sz.order() != 0) return false;
  return sz.max_orbit_length() <= inner_max * sx.max_orbit_length();
}

ColoringFamily asymmetric_colorings(const PermGroup& a, int k, int i, int want, const Caps& caps,
                                    uint64_t seed) {
  if (k < 1 || k > 8) fail(Err::ColorCount, "supported alphabets have 1 to 8 colors");
  if (i != 1 && i != 2 && i != 3 && i != 6) fail(Err::BadInput, "orbit grades are 1, 2, 3 and 6");
  if (want < 1) fail(Err::BadInput, "need a positive number of classes");
  int n = a.degree();
  ColoringFamily fam;
  fam.pairwise_inequivalent = true;

  if (census_fits(k, n, caps)) {
    CensusReport rep = coloring_census(a, k, caps, 1);
    for (const auto& cls : rep.classes) {
      if (static_cast<int>(fam.colorings.size()) == want) break;
      if (cls.max_orbit_length <= i) fam.colorings.push_back(cls.rep);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> color(0, k - 1);
    std::set<Coloring> found;
    const int budget = 200000;
    for (int t = 0; t < budget && static_cast<int>(found.size()) < want; ++t) {
      Coloring c(n);
      for (auto& v : c) v = static_cast<uint8_t>(color(rng));
      if (coloring_stabilizer(a, c, caps.orbit).max_orbit_length() > i) continue;
      found.insert(canonical_coloring(a, c, caps.orbit));
    }
    fam.colorings.assign(found.begin(), found.end());
  }

  if (static_cast<int>(fam.colorings.size()) < want)
    fail(Err::SearchExhausted, "fewer suitable coloring classes than requested");
  fam.colorings.resize(want);
  return fam;
}

CertifiedFamily good_subsets(const PermGroup& g, int want, const Caps& caps, uint64_t seed) {
  if (want < 1 || want > 5) fail(Err::BadInput, "between one and five classes per request");
  if (!is_solvable(g)) fail(Err::NotSolvable, "good subsets are guaranteed for solvable groups only");
  return good_subsets_impl(g, want, caps, seed);
}

Certificate three_coloring_2asym(const PermGroup& g, const Caps& caps, uint64_t seed) {
  if (!is_solvable(g))
    fail(Err::NotSolvable, "the 3-coloring guarantee holds for solvable groups only");
  Asym3Family fam = asym3_family(g, 5, caps, seed);
  // among the constructed classes, prefer the smallest stabilizer orbits and
  // then the lexicographically least coloring
  Certificate best;
  bool first = true;
  for (const Coloring& c : fam.colorings) {
    Certificate cert = certify(g, c, fam.trace, caps);
    if (first || cert.max_orbit_length < best.max_orbit_length ||
        (cert.max_orbit_length == best.max_orbit_length && cert.coloring < best.coloring)) {
      best = std::move(cert);
      first = false;
    }
  }
  best.construction_trace.push_back("picked the class with the smallest stabilizer orbits");
  if (best.max_orbit_length > 2 || !best.elementary_abelian_2)
    fail(Err::PropertyViolation, "three-coloring stabilizer misses the orbit-2 guarantee");
  return best;
}

bool verify_certificate(const PermGroup& g, const Certificate& cert, const Caps& caps) {
  if (static_cast<int>(cert.coloring.size()) != g.degree()) return false;
  PermGroup st = stab_of(g, cert.coloring, caps);
  for (const Perm& p : cert.stabilizer_generators)
    if (p.degree() != g.degree() || !st.contains(p)) return false;
  if (PermGroup(g.degree(), cert.stabilizer_generators).order() != st.order()) return false;
  if (st.max_orbit_length() != cert.max_orbit_length) return false;
  if (derived_series(st).derived_length != cert.derived_length) return false;
  if (is_elementary_abelian_2(st) != cert.elementary_abelian_2) return false;
  return true;
}

} // namespace setstab
