#include "setstab/group.hpp"

#include <algorithm>
#include <set>

#include "setstab/errors.hpp"

namespace setstab {

// ---------------------------------------------------------------------------
// StabChain

StabChain::StabChain(int degree, const std::vector<Perm>& gens, const std::vector<int>& base_prefix)
    : degree_(degree) {
  if (degree < 1 || degree > kDegreeCap) fail(Err::DegreeCap, "chain degree out of range");
  std::set<int> seen;
  for (int b : base_prefix) {
    if (b < 0 || b >= degree) fail(Err::PointOutOfRange, "base point out of range");
    if (!seen.insert(b).second) fail(Err::BadInput, "repeated base point");
    ChainLevel lv;
    lv.base = b;
    levels_.push_back(std::move(lv));
  }
  for (const Perm& g : gens) {
    if (g.degree() != degree) fail(Err::DegreeMismatch, "generator degree mismatch");
    if (!g.is_identity()) add_strong_gen(0, g);
  }
  for (int i = static_cast<int>(levels_.size()) - 1; i >= 0; --i) schreier_sims(i);
  // Prefix-only levels never saw schreier_sims; give them their trivial orbit.
  for (auto& lv : levels_)
    if (lv.orbit.empty()) {
      lv.pos.assign(degree_, -1);
      lv.pos[lv.base] = 0;
      lv.orbit = {lv.base};
      lv.trans = {Perm(degree_)};
      lv.trans_inv = {Perm(degree_)};
    }
  order_ = 1;
  for (const auto& lv : levels_) order_ *= static_cast<int>(lv.orbit.size());
}

void StabChain::add_strong_gen(int level, const Perm& g) {
  int j = level;
  while (true) {
    if (j == static_cast<int>(levels_.size())) {
      ChainLevel lv;
      lv.base = g.smallest_moved(); // g fixes all earlier bases by construction
      levels_.push_back(std::move(lv));
    }
    levels_[j].gens.push_back(g);
    if (g[levels_[j].base] != levels_[j].base) break;
    ++j;
  }
}

void StabChain::recompute_orbit(int level) {
  ChainLevel& lv = levels_[level];
  lv.pos.assign(degree_, -1);
  lv.orbit.clear();
  lv.trans.clear();
  lv.trans_inv.clear();
  lv.orbit.push_back(lv.base);
  lv.pos[lv.base] = 0;
  lv.trans.push_back(Perm(degree_));
  lv.trans_inv.push_back(Perm(degree_));
  for (size_t i = 0; i < lv.orbit.size(); ++i)
    for (const Perm& g : lv.gens) {
      int y = g[lv.orbit[i]];
      if (lv.pos[y] < 0) {
        lv.pos[y] = static_cast<int32_t>(lv.orbit.size());
        lv.orbit.push_back(y);
        lv.trans.push_back(compose(lv.trans[i], g));
        lv.trans_inv.push_back(lv.trans.back().inverse());
      }
    }
}

void StabChain::schreier_sims(int level) {
  recompute_orbit(level);
  for (size_t i = 0; i < levels_[level].orbit.size(); ++i)
    for (size_t k = 0; k < levels_[level].gens.size(); ++k) {
      // Reacquired each pass: recursion below may grow levels_ and move it.
      const ChainLevel& lv = levels_[level];
      // Schreier generator: into the orbit, across g, back along the transversal.
      Perm s = compose(compose(lv.trans[i], lv.gens[k]), lv.trans_inv[lv.pos[lv.gens[k][lv.orbit[i]]]]);
      if (s.is_identity()) continue;
      auto [res, at] = sift(s, level + 1);
      if (!res.is_identity()) {
        // The residue joins every level it fixes the bases of, so the level
        // groups stay nested; then every touched level is re-closed, deepest
        // first.
        add_strong_gen(level + 1, res);
        at = std::min<int>(at, static_cast<int>(levels_.size()) - 1);
        for (int l = at; l > level; --l) schreier_sims(l);
      }
    }
}

std::pair<Perm, int> StabChain::sift(const Perm& p, int from) const {
  Perm r = p;
  int j = from;
  for (; j < static_cast<int>(levels_.size()); ++j) {
    if (r.is_identity()) break;
    const ChainLevel& lv = levels_[j];
    int x = r[lv.base];
    if (lv.pos.empty() ? x != lv.base : lv.pos[x] < 0) return {r, j};
    if (x != lv.base) r = compose(r, lv.trans_inv[lv.pos[x]]);
  }
  return {r, j};
}

bool StabChain::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  return sift(p).first.is_identity();
}

std::vector<Perm> StabChain::level_generators(int level) const {
  if (level >= static_cast<int>(levels_.size())) return {};
  return levels_[level].gens;
}

void StabChain::each_element(const std::function<void(const Perm&)>& cb) const {
  // Elements factor as trans[n-1][i_{n-1}] * ... * trans[0][i_0].
  std::function<void(int, const Perm&)> rec = [&](int level, const Perm& suffix) {
    if (level < 0) {
      cb(suffix);
      return;
    }
    for (const Perm& u : levels_[level].trans) rec(level - 1, compose(suffix, u));
  };
  rec(static_cast<int>(levels_.size()) - 1, Perm(degree_));
}

Perm StabChain::random_element(std::mt19937_64& rng) const {
  Perm r(degree_);
  for (int level = static_cast<int>(levels_.size()) - 1; level >= 0; --level) {
    const auto& tr = levels_[level].trans;
    std::uniform_int_distribution<size_t> pick(0, tr.size() - 1);
    r = compose(r, tr[pick(rng)]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(int degree, std::vector<Perm> gens) : degree_(degree) {
  if (degree < 1 || degree > kDegreeCap) fail(Err::DegreeCap, "group degree out of range");
  for (const Perm& g : gens) {
    if (g.degree() != degree) fail(Err::DegreeMismatch, "generator degree mismatch");
    if (!g.is_identity()) gens_.push_back(g);
  }
}

const StabChain& PermGroup::chain() const {
  if (!chain_) chain_ = std::make_shared<const StabChain>(degree_, gens_);
  return *chain_;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) fail(Err::DegreeMismatch, "membership test across degrees");
  return chain().contains(p);
}

std::vector<int> PermGroup::orbit(int point) const {
  if (point < 0 || point >= degree_) fail(Err::PointOutOfRange, "orbit of point out of range");
  std::vector<char> in(degree_, 0);
  std::vector<int> q{point};
  in[point] = 1;
  for (size_t i = 0; i < q.size(); ++i)
    for (const Perm& g : gens_) {
      int y = g[q[i]];
      if (!in[y]) {
        in[y] = 1;
        q.push_back(y);
      }
    }
  std::sort(q.begin(), q.end());
  return q;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<char> done(degree_, 0);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < degree_; ++p) {
    if (done[p]) continue;
    auto orb = orbit(p);
    for (int x : orb) done[x] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

int PermGroup::max_orbit_length() const {
  int best = 0;
  for (const auto& o : orbits()) best = std::max<int>(best, static_cast<int>(o.size()));
  return best;
}

bool PermGroup::is_transitive() const { return static_cast<int>(orbit(0).size()) == degree_; }

bool PermGroup::fixes(int point) const {
  for (const Perm& g : gens_)
    if (g[point] != point) return false;
  return true;
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& points) const {
  std::vector<int> prefix;
  for (int p : points) {
    if (p < 0 || p >= degree_) fail(Err::PointOutOfRange, "stabilized point out of range");
    if (std::find(prefix.begin(), prefix.end(), p) == prefix.end()) prefix.push_back(p);
  }
  StabChain ch(degree_, gens_, prefix);
  return PermGroup(degree_, ch.level_generators(static_cast<int>(prefix.size())));
}

PermGroup PermGroup::conjugated(const Perm& c) const {
  if (c.degree() != degree_) fail(Err::DegreeMismatch, "conjugating element degree mismatch");
  std::vector<Perm> gs;
  gs.reserve(gens_.size());
  for (const Perm& g : gens_) gs.push_back(conjugate(g, c));
  return PermGroup(degree_, std::move(gs));
}

PermGroup PermGroup::restrict_to(const std::vector<int>& points) const {
  if (points.empty()) fail(Err::BadInput, "restriction to empty point set");
  std::vector<int> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<int> idx(degree_, -1);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] < 0 || pts[i] >= degree_) fail(Err::PointOutOfRange, "restriction point out of range");
    idx[pts[i]] = static_cast<int>(i);
  }
  int m = static_cast<int>(pts.size());
  std::vector<Perm> gs;
  for (const Perm& g : gens_) {
    std::vector<int> img(m);
    for (int i = 0; i < m; ++i) {
      int y = g[pts[i]];
      if (idx[y] < 0) fail(Err::BadInput, "point set is not invariant");
      img[i] = idx[y];
    }
    gs.push_back(Perm::from_images(img));
  }
  return PermGroup(m, std::move(gs));
}

void PermGroup::each_element(const std::function<void(const Perm&)>& cb) const {
  chain().each_element(cb);
}

Perm PermGroup::random_element(std::mt19937_64& rng) const { return chain().random_element(rng); }

// ---------------------------------------------------------------------------
// Derived structure

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds) {
  // keep the generating set pruned by membership, so large towers stay at a
  // handful of generators instead of squaring at every derived step
  std::vector<Perm> gens;
  PermGroup h(g.degree());
  auto add = [&](const Perm& t) {
    if (t.is_identity() || h.contains(t)) return;
    gens.push_back(t);
    h = PermGroup(g.degree(), gens);
  };
  for (const Perm& s : seeds) {
    if (s.degree() != g.degree()) fail(Err::DegreeMismatch, "closure seed degree mismatch");
    if (!g.contains(s)) fail(Err::NotAMember, "closure seed lies outside the group");
    add(s);
  }
  for (size_t i = 0; i < gens.size(); ++i)
    for (const Perm& c : g.generators()) add(conjugate(gens[i], c));
  return h;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  const auto& gs = g.generators();
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = i + 1; j < gs.size(); ++j) {
      // [b,a] is the inverse of [a,b]; one of the pair generates the same group
      Perm c = commutator(gs[i], gs[j]);
      if (!c.is_identity()) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

DerivedSeriesReport derived_series(const PermGroup& g) {
  DerivedSeriesReport rep;
  PermGroup h = g;
  rep.orders.push_back(h.order());
  while (rep.orders.back() != 1) {
    PermGroup d = derived_subgroup(h);
    if (d.order() == h.order()) return rep; // perfect above 1: not solvable
    h = std::move(d);
    rep.orders.push_back(h.order());
  }
  rep.solvable = true;
  rep.derived_length = static_cast<int>(rep.orders.size()) - 1;
  return rep;
}

bool is_solvable(const PermGroup& g) { return derived_series(g).solvable; }

int derived_length(const PermGroup& g) {
  auto rep = derived_series(g);
  if (!rep.solvable) fail(Err::NotSolvable, "derived series does not reach 1");
  return rep.derived_length;
}

bool is_abelian(const PermGroup& g) {
  const auto& gs = g.generators();
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = i + 1; j < gs.size(); ++j)
      if (!commutator(gs[i], gs[j]).is_identity()) return false;
  return true;
}

bool is_elementary_abelian_2(const PermGroup& g) {
  for (const Perm& p : g.generators())
    if (!compose(p, p).is_identity()) return false;
  return is_abelian(g);
}

bool groups_equal(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) return false;
  if (a.order() != b.order()) return false;
  for (const Perm& g : a.generators())
    if (!b.contains(g)) return false;
  return true;
}

bool is_subgroup(const PermGroup& sub, const PermGroup& g) {
  if (sub.degree() != g.degree()) return false;
  for (const Perm& s : sub.generators())
    if (!g.contains(s)) return false;
  return true;
}

PermGroup group_from_elements(int degree, const std::vector<Perm>& elements) {
  std::vector<Perm> gens;
  PermGroup h(degree);
  for (const Perm& e : elements)
    if (!h.contains(e)) {
      gens.push_back(e);
      h = PermGroup(degree, gens);
    }
  return h;
}

} // namespace setstab
