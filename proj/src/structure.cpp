#include "setstab/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "setstab/actions.hpp"
#include "setstab/errors.hpp"

namespace setstab {

namespace {

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

Blocks blocks_from_labels(const std::vector<int>& parent_in) {
  std::vector<int> parent = parent_in;
  int n = static_cast<int>(parent.size());
  std::vector<std::vector<int>> by_root(n);
  for (int x = 0; x < n; ++x) by_root[uf_find(parent, x)].push_back(x);
  Blocks out;
  for (auto& b : by_root)
    if (!b.empty()) out.push_back(std::move(b)); // members ascend already
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return out;
}

// every a-block inside a single b-block
bool refines(const Blocks& a, const Blocks& b, int degree) {
  auto bo = block_of_point(b, degree);
  for (const auto& blk : a)
    for (int x : blk)
      if (bo[x] != bo[blk[0]]) return false;
  return true;
}

} // namespace

std::vector<int> block_of_point(const Blocks& blocks, int degree) {
  std::vector<int> of(degree, -1);
  for (size_t j = 0; j < blocks.size(); ++j)
    for (int x : blocks[j]) {
      if (x < 0 || x >= degree || of[x] != -1) fail(Err::BadInput, "blocks do not partition the points");
      of[x] = static_cast<int>(j);
    }
  for (int x = 0; x < degree; ++x)
    if (of[x] == -1) fail(Err::BadInput, "blocks do not cover the points");
  return of;
}

bool is_block_system(const PermGroup& g, const Blocks& blocks) {
  if (blocks.empty()) return false;
  std::vector<int> of;
  try {
    of = block_of_point(blocks, g.degree());
  } catch (const Error&) {
    return false;
  }
  for (const Perm& p : g.generators())
    for (const auto& blk : blocks) {
      int target = of[p[blk[0]]];
      for (int x : blk)
        if (of[p[x]] != target) return false;
    }
  return true;
}

Blocks finest_blocks_joining(const PermGroup& g, int p, int q) {
  int n = g.degree();
  if (p < 0 || p >= n || q < 0 || q >= n) fail(Err::PointOutOfRange, "pair out of range");
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::pair<int, int>> work{{p, q}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int ra = uf_find(parent, a), rb = uf_find(parent, b);
    if (ra == rb) continue;
    parent[rb] = ra;
    for (const Perm& t : g.generators()) work.emplace_back(t[a], t[b]);
  }
  return blocks_from_labels(parent);
}

std::vector<Blocks> minimal_block_systems(const PermGroup& g) {
  if (!g.is_transitive()) fail(Err::NotTransitive, "block systems need a transitive group");
  int n = g.degree();
  std::vector<Blocks> found;
  for (int p = 1; p < n; ++p) {
    Blocks s = finest_blocks_joining(g, 0, p);
    if (static_cast<int>(s.size()) <= 1) continue; // collapsed to a single block
    if (std::find(found.begin(), found.end(), s) == found.end()) found.push_back(std::move(s));
  }
  std::vector<Blocks> out;
  for (const Blocks& s : found) {
    bool minimal = true;
    for (const Blocks& t : found)
      if (&t != &s && t != s && refines(t, s, n)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const Blocks& a, const Blocks& b) {
    if (a[0].size() != b[0].size()) return a[0].size() < b[0].size();
    return a < b;
  });
  return out;
}

bool is_primitive(const PermGroup& g) {
  return minimal_block_systems(g).empty();
}

namespace {

// Fuse blocks of `cur` along a system of the quotient action.
Blocks pull_back(const Blocks& cur, const Blocks& quot_sys) {
  Blocks next;
  for (const auto& qb : quot_sys) {
    std::vector<int> fused;
    for (int bi : qb) fused.insert(fused.end(), cur[bi].begin(), cur[bi].end());
    std::sort(fused.begin(), fused.end());
    next.push_back(std::move(fused));
  }
  std::sort(next.begin(), next.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return next;
}

}  // namespace

Blocks maximal_block_system(const PermGroup& g) {
  auto mins = minimal_block_systems(g);
  if (mins.empty()) fail(Err::IsPrimitive, "primitive group has no block system to grow");
  // Walk the whole lattice of nontrivial systems upward from the minimal ones:
  // each coarsening step pulls back a minimal system of the quotient action.
  std::set<std::vector<int>> seen;
  std::vector<Blocks> queue;
  std::vector<int> best_of;
  Blocks best;
  for (const auto& m : mins) {
    if (seen.insert(block_of_point(m, g.degree())).second) queue.push_back(m);
  }
  while (!queue.empty()) {
    Blocks cur = std::move(queue.back());
    queue.pop_back();
    PermGroup quot = blocks_action(g, cur);
    auto qmins = minimal_block_systems(quot);
    if (qmins.empty()) {
      // Quotient is primitive, so `cur` is maximal; keep the lexicographically
      // smallest block_of array among all maximal systems.
      auto of = block_of_point(cur, g.degree());
      if (best_of.empty() || of < best_of) {
        best_of = std::move(of);
        best = std::move(cur);
      }
      continue;
    }
    for (const auto& qm : qmins) {
      Blocks next = pull_back(cur, qm);
      if (seen.insert(block_of_point(next, g.degree())).second) queue.push_back(next);
    }
  }
  return best;
}

Perm blocks_image(const Perm& p, const Blocks& blocks) {
  auto of = block_of_point(blocks, p.degree());
  std::vector<int> img(blocks.size());
  for (size_t j = 0; j < blocks.size(); ++j) {
    int target = of[p[blocks[j][0]]];
    for (int x : blocks[j])
      if (of[p[x]] != target) fail(Err::BadInput, "permutation does not respect the blocks");
    img[j] = target;
  }
  return Perm::from_images(img);
}

PermGroup blocks_action(const PermGroup& g, const Blocks& blocks) {
  if (!is_block_system(g, blocks)) fail(Err::BadInput, "not a block system for the group");
  std::vector<Perm> gens;
  gens.reserve(g.generators().size());
  for (const Perm& p : g.generators()) gens.push_back(blocks_image(p, blocks));
  return PermGroup(static_cast<int>(blocks.size()), std::move(gens));
}

PermGroup block_setwise_stabilizer(const PermGroup& g, const Blocks& blocks, int j) {
  if (!is_block_system(g, blocks)) fail(Err::BadInput, "not a block system for the group");
  if (j < 0 || j >= static_cast<int>(blocks.size())) fail(Err::PointOutOfRange, "block index out of range");
  auto of = block_of_point(blocks, g.degree());
  auto apply = [&](const Perm& p, int state) { return of[p[blocks[state][0]]]; };
  auto os = orbit_stabilizer<int, std::hash<int>>(g, j, apply, uint64_t{1} << 22);
  return os.stab;
}

PermGroup block_constituent(const PermGroup& g, const Blocks& blocks, int j) {
  return block_setwise_stabilizer(g, blocks, j).restrict_to(blocks[j]);
}

PermGroup wreath_imprimitive(const PermGroup& bottom, const PermGroup& top) {
  if (top.decl() && !top.decl()->product_action)
    return wreath_imprimitive(wreath_imprimitive(bottom, *top.decl()->bottom), *top.decl()->top);
  int b = bottom.degree(), m = top.degree();
  if (b * m > kDegreeCap) fail(Err::DegreeCap, "wreath degree exceeds the cap");
  std::vector<Perm> gens;
  for (int i = 0; i < m; ++i)
    for (const Perm& beta : bottom.generators()) {
      std::vector<int> img(b * m);
      std::iota(img.begin(), img.end(), 0);
      for (int s = 0; s < b; ++s) img[i * b + s] = i * b + beta[s];
      gens.push_back(Perm::from_images(img));
    }
  for (const Perm& sigma : top.generators()) {
    std::vector<int> img(b * m);
    for (int i = 0; i < m; ++i)
      for (int s = 0; s < b; ++s) img[i * b + s] = sigma[i] * b + s;
    gens.push_back(Perm::from_images(img));
  }
  PermGroup w(b * m, std::move(gens));
  auto decl = std::make_shared<WreathStructure>();
  decl->product_action = false;
  decl->bottom = std::make_shared<const PermGroup>(bottom);
  decl->top = std::make_shared<const PermGroup>(top);
  w.set_decl(std::move(decl));
  return w;
}

int tuple_code(const std::vector<int>& t, int radix) {
  int code = 0;
  for (int v : t) code = code * radix + v;
  return code;
}

std::vector<int> tuple_from_code(int code, int radix, int length) {
  std::vector<int> t(length);
  for (int i = length - 1; i >= 0; --i) {
    t[i] = code % radix;
    code /= radix;
  }
  return t;
}

PermGroup wreath_product_action(const PermGroup& bottom, const PermGroup& top) {
  int b = bottom.degree(), m = top.degree();
  long long deg = 1;
  for (int i = 0; i < m; ++i) {
    deg *= b;
    if (deg > kDegreeCap) fail(Err::DegreeCap, "power action degree exceeds the cap");
  }
  int n = static_cast<int>(deg);
  std::vector<Perm> gens;
  for (int i = 0; i < m; ++i)
    for (const Perm& beta : bottom.generators()) {
      std::vector<int> img(n);
      for (int code = 0; code < n; ++code) {
        auto t = tuple_from_code(code, b, m);
        t[i] = beta[t[i]];
        img[code] = tuple_code(t, b);
      }
      gens.push_back(Perm::from_images(img));
    }
  for (const Perm& sigma : top.generators()) {
    std::vector<int> img(n);
    for (int code = 0; code < n; ++code) {
      auto t = tuple_from_code(code, b, m);
      std::vector<int> u(m);
      for (int i = 0; i < m; ++i) u[sigma[i]] = t[i];
      img[code] = tuple_code(u, b);
    }
    gens.push_back(Perm::from_images(img));
  }
  PermGroup w(n, std::move(gens));
  auto decl = std::make_shared<WreathStructure>();
  decl->product_action = true;
  decl->bottom = std::make_shared<const PermGroup>(bottom);
  decl->top = std::make_shared<const PermGroup>(top);
  w.set_decl(std::move(decl));
  return w;
}

CosetAction coset_action(const PermGroup& g, const PermGroup& h) {
  if (!is_subgroup(h, g)) fail(Err::NotSubgroup, "cosets need a subgroup");
  BigInt index = g.order() / h.order();
  if (index > kDegreeCap) fail(Err::IndexCap, "coset space exceeds the degree cap");
  int m = static_cast<int>(index);
  CosetAction out;
  out.reps.push_back(Perm(g.degree()));
  std::vector<std::vector<int>> images(g.generators().size());
  auto coset_of = [&](const Perm& x) -> int {
    for (size_t j = 0; j < out.reps.size(); ++j)
      if (h.contains(compose(x, out.reps[j].inverse()))) return static_cast<int>(j);
    return -1;
  };
  for (size_t i = 0; i < out.reps.size(); ++i)
    for (size_t k = 0; k < g.generators().size(); ++k) {
      Perm x = compose(out.reps[i], g.generators()[k]);
      int j = coset_of(x);
      if (j < 0) {
        j = static_cast<int>(out.reps.size());
        out.reps.push_back(std::move(x));
      }
      images[k].push_back(j); // images[k][i]
    }
  if (static_cast<int>(out.reps.size()) != m) fail(Err::PropertyViolation, "coset walk missed cosets");
  std::vector<Perm> gens;
  for (auto& img : images) gens.push_back(Perm::from_images(img));
  out.action = PermGroup(m, std::move(gens));
  return out;
}

} // namespace setstab
