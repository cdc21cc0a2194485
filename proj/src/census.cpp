#include "setstab/census.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "setstab/errors.hpp"
#include "setstab/structure.hpp"

namespace setstab {

namespace {

struct CodeSpace {
  int n = 0;
  int k = 0;
  uint64_t total = 1;
  std::vector<uint64_t> pw;  // pw[j] = k^j
  std::vector<Perm> gens;
};

CodeSpace make_space(const PermGroup& g, int k, const Caps& caps) {
  if (k < 1 || k > 8) fail(Err::ColorCount, "color count must be between 1 and 8");
  CodeSpace cs;
  cs.n = g.degree();
  cs.k = k;
  cs.pw.assign(cs.n + 1, 1);
  for (int j = 1; j <= cs.n; ++j) {
    if (cs.pw[j - 1] > caps.space / k) fail(Err::SpaceCapExceeded, "coloring space exceeds cap");
    cs.pw[j] = cs.pw[j - 1] * k;
    if (cs.pw[j] > caps.space) fail(Err::SpaceCapExceeded, "coloring space exceeds cap");
  }
  cs.total = cs.pw[cs.n];
  cs.gens = g.generators();
  return cs;
}

// image of the coloring with this code under p: digit at point i moves to p[i]
uint64_t apply_code(const Perm& p, uint64_t code, const CodeSpace& cs) {
  uint64_t out = 0;
  for (int i = cs.n - 1; i >= 0; --i) {
    out += (code % cs.k) * cs.pw[cs.n - 1 - p[i]];
    code /= cs.k;
  }
  return out;
}

// breadth-first orbit of one seed, with Schreier-tree bookkeeping
struct ClassWalk {
  std::vector<uint64_t> orbit;
  std::vector<int32_t> parent;
  std::vector<int16_t> via;
};

template <class Mark, class Seen>
ClassWalk walk_class(uint64_t seed, const CodeSpace& cs, Mark mark, Seen seen) {
  ClassWalk w;
  w.orbit.push_back(seed);
  w.parent.push_back(-1);
  w.via.push_back(-1);
  mark(seed);
  for (size_t i = 0; i < w.orbit.size(); ++i)
    for (size_t t = 0; t < cs.gens.size(); ++t) {
      uint64_t img = apply_code(cs.gens[t], w.orbit[i], cs);
      if (seen(img)) continue;
      mark(img);
      w.orbit.push_back(img);
      w.parent.push_back(static_cast<int32_t>(i));
      w.via.push_back(static_cast<int16_t>(t));
    }
  return w;
}

OrbitClassInfo class_stats(const PermGroup& g, const CodeSpace& cs, const ClassWalk& w) {
  OrbitClassInfo cls;
  cls.rep = coloring_from_code(w.orbit[0], cs.k, cs.n);
  cls.orbit_size = w.orbit.size();
  if (g.order() % w.orbit.size() != 0)
    fail(Err::PropertyViolation, "orbit size does not divide the group order");
  BigInt target = g.order() / w.orbit.size();
  PermGroup stab(cs.n);
  if (target > 1) {
    // transporters for the whole class, one composition per member
    std::vector<Perm> up;
    up.reserve(w.orbit.size());
    up.emplace_back(cs.n);
    for (size_t i = 1; i < w.orbit.size(); ++i)
      up.push_back(compose(up[w.parent[i]], cs.gens[w.via[i]]));
    std::unordered_map<uint64_t, int32_t> where;
    where.reserve(w.orbit.size() * 2);
    for (size_t i = 0; i < w.orbit.size(); ++i) where.emplace(w.orbit[i], static_cast<int32_t>(i));
    std::vector<Perm> sgens;
    bool done = false;
    for (size_t i = 0; i < w.orbit.size() && !done; ++i)
      for (size_t t = 0; t < cs.gens.size() && !done; ++t) {
        int32_t j = where.at(apply_code(cs.gens[t], w.orbit[i], cs));
        Perm s = compose(compose(up[i], cs.gens[t]), up[j].inverse());
        if (s.is_identity() || stab.contains(s)) continue;
        sgens.push_back(std::move(s));
        stab = PermGroup(cs.n, sgens);
        if (stab.order() == target) done = true;
      }
    if (stab.order() != target) fail(Err::PropertyViolation, "stabilizer assembly fell short");
  }
  cls.stab_order = stab.order();
  cls.stab_gens = stab.generators();
  cls.max_orbit_length = stab.max_orbit_length();
  auto series = derived_series(stab);
  cls.derived_length = series.solvable ? series.derived_length : -1;
  return cls;
}

}  // namespace

std::vector<uint32_t> census_labels_serial(const PermGroup& g, int k, const Caps& caps) {
  CodeSpace cs = make_space(g, k, caps);
  std::vector<uint32_t> label(cs.total);
  std::vector<uint8_t> done(cs.total, 0);
  for (uint64_t seed = 0; seed < cs.total; ++seed) {
    if (done[seed]) continue;
    ClassWalk w = walk_class(
        seed, cs, [&](uint64_t c) { done[c] = 1; }, [&](uint64_t c) { return done[c] != 0; });
    for (uint64_t c : w.orbit) label[c] = static_cast<uint32_t>(seed);
  }
  return label;
}

std::vector<uint32_t> census_labels_parallel(const PermGroup& g, int k, const Caps& caps,
                                             int jobs) {
  CodeSpace cs = make_space(g, k, caps);
  std::vector<uint32_t> label(cs.total);
  std::iota(label.begin(), label.end(), 0u);
  const int64_t total = static_cast<int64_t>(cs.total);
  auto at = [&](uint64_t i) { return std::atomic_ref<uint32_t>(label[i]); };
  auto fetch_min = [&](uint64_t i, uint32_t v) {
    auto a = at(i);
    uint32_t cur = a.load(std::memory_order_relaxed);
    while (v < cur && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
    return v < cur;
  };
  std::atomic<bool> changed{true};
  while (changed.load()) {
    changed.store(false);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs)
#endif
    for (int64_t c = 0; c < total; ++c) {
      // chase the label chain to its current root
      uint32_t best = at(c).load(std::memory_order_relaxed);
      while (true) {
        uint32_t next = at(best).load(std::memory_order_relaxed);
        if (next == best) break;
        best = next;
      }
      for (const Perm& p : cs.gens) {
        uint64_t img = apply_code(p, static_cast<uint64_t>(c), cs);
        uint32_t lbl = at(img).load(std::memory_order_relaxed);
        if (lbl < best) best = lbl;
        if (fetch_min(img, best)) changed.store(true, std::memory_order_relaxed);
      }
      if (fetch_min(static_cast<uint64_t>(c), best)) changed.store(true, std::memory_order_relaxed);
    }
  }
  (void)jobs;
  return label;
}

CensusReport coloring_census(const PermGroup& g, int k, const Caps& caps, int jobs,
                             const std::string& group_id) {
  CodeSpace cs = make_space(g, k, caps);
  CensusReport rep;
  rep.group_id = group_id;
  rep.degree = cs.n;
  rep.colors = k;

  if (jobs <= 1) {
    std::vector<uint8_t> done(cs.total, 0);
    uint64_t classified = 0;
    for (uint64_t seed = 0; seed < cs.total; ++seed) {
      if (done[seed]) continue;
      ClassWalk w = walk_class(
          seed, cs, [&](uint64_t c) { done[c] = 1; }, [&](uint64_t c) { return done[c] != 0; });
      classified += w.orbit.size();
      rep.classes.push_back(class_stats(g, cs, w));
    }
    if (classified != cs.total) fail(Err::PropertyViolation, "classes do not cover the space");
    return rep;
  }

  std::vector<uint32_t> label = census_labels_parallel(g, k, caps, jobs);
  std::vector<uint64_t> reps;
  for (uint64_t c = 0; c < cs.total; ++c)
    if (label[c] == c) reps.push_back(c);
  rep.classes.resize(reps.size());
  std::atomic<uint64_t> classified{0};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
  for (int64_t r = 0; r < static_cast<int64_t>(reps.size()); ++r) {
    // classes are disjoint, so each walk keeps its own visited set
    std::unordered_set<uint64_t> seen;
    ClassWalk w = walk_class(
        reps[r], cs, [&](uint64_t c) { seen.insert(c); },
        [&](uint64_t c) { return seen.count(c) != 0; });
    classified += w.orbit.size();
    rep.classes[r] = class_stats(g, cs, w);
  }
  if (classified.load() != cs.total) fail(Err::PropertyViolation, "classes do not cover the space");
  return rep;
}

long long ell(const PermGroup& g, int k, int i, const Caps& caps) {
  return coloring_census(g, k, caps).ell(i);
}

long long power_set_orbit_count(const PermGroup& g, const Caps& caps) {
  auto label = census_labels_serial(g, 2, caps);
  long long classes = 0;
  for (uint64_t c = 0; c < label.size(); ++c)
    if (label[c] == c) ++classes;
  if (classes < g.degree() + 1)
    fail(Err::PropertyViolation, "fewer subset classes than degree+1");
  return classes;
}

PermGroup imprimitive_subset_stabilizer(const PermGroup& g, const Mask& s, const Caps& caps) {
  auto decl = g.decl();
  if (!decl || decl->product_action)
    fail(Err::StructureMissing, "needs a group built as an imprimitive wreath product");
  const PermGroup& bottom = *decl->bottom;
  const PermGroup& top = *decl->top;
  int b = bottom.degree(), m = top.degree();

  // per-block restrictions, their orbits inside the bottom group, and a
  // transporter from each restriction to its class representative
  std::vector<Mask> local(m);
  for (int j = 0; j < m; ++j)
    for (int x = 0; x < b; ++x)
      if (s.test(j * b + x)) local[j].set(x);

  std::vector<PermGroup> block_stab;
  std::vector<Perm> to_rep;
  std::vector<Mask> rep_mask(m);
  for (int j = 0; j < m; ++j) {
    auto os = subset_orbit(bottom, local[j], caps.orbit);
    int32_t best = 0;
    for (int32_t i = 1; i < static_cast<int32_t>(os.orbit.size()); ++i)
      if (os.orbit[i].indicator_less(os.orbit[best])) best = i;
    rep_mask[j] = os.orbit[best];
    to_rep.push_back(os.transporter(best));
    block_stab.push_back(std::move(os.stab));
  }

  // blocks with the same representative restriction form one color class
  Coloring key(m, 0);
  std::vector<Mask> distinct;
  for (int j = 0; j < m; ++j) {
    size_t c = 0;
    while (c < distinct.size() && !(distinct[c] == rep_mask[j])) ++c;
    if (c == distinct.size()) distinct.push_back(rep_mask[j]);
    key[j] = static_cast<uint8_t>(c);
  }
  PermGroup adm = coloring_stabilizer(top, key, caps.orbit);

  std::vector<Perm> gens;
  for (int j = 0; j < m; ++j)
    for (const Perm& h : block_stab[j].generators()) {
      std::vector<int> img(g.degree());
      std::iota(img.begin(), img.end(), 0);
      for (int x = 0; x < b; ++x) img[j * b + x] = j * b + h[x];
      gens.push_back(Perm::from_images(img));
    }
  for (const Perm& sigma : adm.generators()) {
    std::vector<int> img(g.degree());
    for (int j = 0; j < m; ++j) {
      // carry block j onto block sigma(j), correcting the restriction to land
      // on the target block's restriction
      Perm d = compose(to_rep[j], to_rep[sigma[j]].inverse());
      for (int x = 0; x < b; ++x) img[j * b + x] = sigma[j] * b + d[x];
    }
    gens.push_back(Perm::from_images(img));
  }

  PermGroup result(g.degree(), gens);
  BigInt expect = adm.order();
  for (int j = 0; j < m; ++j) expect *= block_stab[j].order();
  if (result.order() != expect)
    fail(Err::PropertyViolation, "assembled stabilizer has unexpected order");
  return result;
}

namespace {

std::vector<Coloring> block_patterns(const Coloring& c, int m, int b) {
  std::vector<Coloring> pat(m, Coloring(b));
  for (int j = 0; j < m; ++j)
    for (int x = 0; x < b; ++x) pat[j][x] = c[j * b + x];
  return pat;
}

} // namespace

std::optional<Perm> coloring_transporter(const PermGroup& g, const Coloring& a,
                                         const Coloring& b, const Caps& caps) {
  int n = g.degree();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    fail(Err::DegreeMismatch, "coloring length mismatch");
  if (a == b) return Perm(n);
  auto decl = g.decl();
  if (!decl || decl->product_action) {
    auto os = coloring_orbit(g, a, caps.orbit, false);
    auto it = os.index.find(b);
    if (it == os.index.end()) return std::nullopt;
    return os.transporter(it->second);
  }
  const PermGroup& bot = *decl->bottom;
  const PermGroup& top = *decl->top;
  int nb = bot.degree(), m = top.degree();
  std::vector<Coloring> pa = block_patterns(a, m, nb), pb = block_patterns(b, m, nb);

  // classes of block patterns across both sides, each pattern with a
  // transporter from its class representative
  std::vector<Coloring> reps;
  std::unordered_map<Coloring, std::pair<int, Perm>, ColoringHash> seen;
  auto classify = [&](const Coloring& p) -> std::pair<int, Perm> {
    auto it = seen.find(p);
    if (it != seen.end()) return it->second;
    for (size_t r = 0; r < reps.size(); ++r)
      if (auto t = coloring_transporter(bot, reps[r], p, caps))
        return seen.emplace(p, std::make_pair(static_cast<int>(r), *t)).first->second;
    reps.push_back(p);
    return seen.emplace(p, std::make_pair(static_cast<int>(reps.size()) - 1, Perm(nb)))
        .first->second;
  };

  Coloring ka(m), kb(m);
  std::vector<Perm> ta(m), tb(m); // class rep -> block pattern
  for (int j = 0; j < m; ++j) {
    auto [ca, pa_t] = classify(pa[j]);
    ka[j] = static_cast<uint8_t>(ca);
    ta[j] = pa_t;
    auto [cb, pb_t] = classify(pb[j]);
    kb[j] = static_cast<uint8_t>(cb);
    tb[j] = pb_t;
  }
  auto sigma = coloring_transporter(top, ka, kb, caps);
  if (!sigma) return std::nullopt;

  std::vector<int> img(n);
  for (int j = 0; j < m; ++j) {
    Perm d = compose(ta[j].inverse(), tb[(*sigma)[j]]);
    for (int x = 0; x < nb; ++x) img[j * nb + x] = (*sigma)[j] * nb + d[x];
  }
  Perm v = Perm::from_images(img);
  if (apply_coloring(v, a) != b) fail(Err::PropertyViolation, "assembled transporter misses");
  return v;
}

PermGroup imprimitive_coloring_stabilizer(const PermGroup& g, const Coloring& c,
                                          const Caps& caps) {
  auto decl = g.decl();
  if (!decl || decl->product_action)
    fail(Err::StructureMissing, "needs a group built as an imprimitive wreath product");
  if (static_cast<int>(c.size()) != g.degree()) fail(Err::DegreeMismatch, "coloring length mismatch");
  const PermGroup& bot = *decl->bottom;
  const PermGroup& top = *decl->top;
  int nb = bot.degree(), m = top.degree();
  std::vector<Coloring> pat = block_patterns(c, m, nb);

  // per-block stabilizers, recursing when the bottom is itself a declared
  // wreath; class key and rep->pattern transporters for the admissible lifts
  std::vector<PermGroup> block_stab;
  Coloring key(m);
  std::vector<Perm> to_pat(m);
  std::vector<Coloring> reps;
  for (int j = 0; j < m; ++j) {
    auto sub = bot.decl() && !bot.decl()->product_action
                   ? imprimitive_coloring_stabilizer(bot, pat[j], caps)
                   : coloring_stabilizer(bot, pat[j], caps.orbit);
    block_stab.push_back(std::move(sub));
    size_t r = 0;
    Perm t(nb);
    for (; r < reps.size(); ++r) {
      auto tr = coloring_transporter(bot, reps[r], pat[j], caps);
      if (tr) {
        t = *tr;
        break;
      }
    }
    if (r == reps.size()) reps.push_back(pat[j]);
    key[j] = static_cast<uint8_t>(r);
    to_pat[j] = t;
  }
  PermGroup adm = coloring_stabilizer(top, key, caps.orbit);

  std::vector<Perm> gens;
  for (int j = 0; j < m; ++j)
    for (const Perm& h : block_stab[j].generators()) {
      std::vector<int> img(g.degree());
      std::iota(img.begin(), img.end(), 0);
      for (int x = 0; x < nb; ++x) img[j * nb + x] = j * nb + h[x];
      gens.push_back(Perm::from_images(img));
    }
  for (const Perm& sigma : adm.generators()) {
    std::vector<int> img(g.degree());
    for (int j = 0; j < m; ++j) {
      Perm d = compose(to_pat[j].inverse(), to_pat[sigma[j]]);
      for (int x = 0; x < nb; ++x) img[j * nb + x] = sigma[j] * nb + d[x];
    }
    Perm v = Perm::from_images(img);
    if (apply_coloring(v, c) != c) fail(Err::PropertyViolation, "lifted block permutation moves the coloring");
    gens.push_back(std::move(v));
  }

  PermGroup result(g.degree(), gens);
  BigInt expect = adm.order();
  for (int j = 0; j < m; ++j) expect *= block_stab[j].order();
  if (result.order() != expect)
    fail(Err::PropertyViolation, "assembled stabilizer has unexpected order");
  return result;
}

}  // namespace setstab
