#include "setstab/catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "setstab/builtins.hpp"
#include "setstab/errors.hpp"

namespace setstab {

Mat mat_identity(int d) {
  Mat m;
  m.d = d;
  for (int i = 0; i < d && i < 3; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_mul(const Mat& x, const Mat& y, int p) {
  Mat r;
  r.d = x.d;
  for (int i = 0; i < x.d; ++i)
    for (int j = 0; j < x.d; ++j) {
      int s = 0;
      for (int k = 0; k < x.d; ++k) s += x.at(i, k) * y.at(k, j);
      r.at(i, j) = uint8_t(s % p);
    }
  return r;
}

int mat_det(const Mat& x, int p) {
  int d = x.d;
  int v = 0;
  if (d == 1) v = x.at(0, 0);
  if (d == 2) v = x.at(0, 0) * x.at(1, 1) - x.at(0, 1) * x.at(1, 0);
  if (d == 3)
    v = x.at(0, 0) * (x.at(1, 1) * x.at(2, 2) - x.at(1, 2) * x.at(2, 1)) -
        x.at(0, 1) * (x.at(1, 0) * x.at(2, 2) - x.at(1, 2) * x.at(2, 0)) +
        x.at(0, 2) * (x.at(1, 0) * x.at(2, 1) - x.at(1, 1) * x.at(2, 0));
  return ((v % p) + p) % p;
}

Mat mat_inverse(const Mat& x, int p) {
  Mat id = mat_identity(x.d);
  Mat prev = id, cur = x;
  while (!(cur == id)) {
    prev = cur;
    cur = mat_mul(cur, x, p);
  }
  return prev;
}

namespace {

uint32_t mat_key(const Mat& x, int p) {
  uint32_t k = 0;
  for (int i = 8; i >= 0; --i) k = k * uint32_t(p) + x.a[i];
  return k;
}

std::vector<Mat> close_gens(int p, int d, const std::vector<Mat>& gens, size_t cap) {
  std::vector<Mat> elems{mat_identity(d)};
  std::unordered_set<uint32_t> seen{mat_key(elems[0], p)};
  for (size_t i = 0; i < elems.size(); ++i)
    for (const Mat& g : gens) {
      Mat nx = mat_mul(elems[i], g, p);
      if (seen.insert(mat_key(nx, p)).second) {
        if (elems.size() >= cap) fail(Err::OrderCap, "matrix group closure exceeded its cap");
        elems.push_back(nx);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// lex-least elements picked greedily until they span the whole list
std::vector<Mat> greedy_mat_gens(int p, int d, const std::vector<Mat>& elements) {
  std::vector<Mat> gens;
  std::vector<Mat> cur = close_gens(p, d, gens, elements.size() + 1);
  while (cur.size() < elements.size()) {
    for (const Mat& e : elements)
      if (!std::binary_search(cur.begin(), cur.end(), e)) {
        gens.push_back(e);
        break;
      }
    cur = close_gens(p, d, gens, elements.size() + 1);
  }
  return gens;
}

int int_pow(int b, int e) {
  int v = 1;
  while (e-- > 0) v *= b;
  return v;
}

std::vector<int> decode_vec(int x, int p, int d) {
  std::vector<int> v(d);
  for (int i = d - 1; i >= 0; --i) {
    v[i] = x % p;
    x /= p;
  }
  return v;
}

int encode_vec(const std::vector<int>& v, int p) {
  int x = 0;
  for (int c : v) x = x * p + ((c % p) + p) % p;
  return x;
}

int mat_apply_vec(const Mat& m, int x, int p) {
  std::vector<int> v = decode_vec(x, p, m.d), w(m.d, 0);
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) w[i] += m.at(i, j) * v[j];
  return encode_vec(w, p);
}

// multiset of cycle types over all elements; cheap conjugacy invariant
std::map<std::vector<int>, long long> cycle_fingerprint(const PermGroup& g) {
  std::map<std::vector<int>, long long> fp;
  g.each_element([&](const Perm& e) {
    std::vector<int> lens;
    std::vector<char> done(g.degree(), 0);
    for (int i = 0; i < g.degree(); ++i) {
      if (done[i]) continue;
      int len = 0, j = i;
      do {
        done[j] = 1;
        j = e[j];
        ++len;
      } while (j != i);
      lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    ++fp[lens];
  });
  return fp;
}

}  // namespace

namespace {

void check_field(int p, int d) {
  if (p != 2 && p != 3 && p != 5 && p != 7) fail(Err::BadInput, "matrix entries want a prime modulus");
  if (d < 1 || d > 3 || int_pow(p, d) > 9) fail(Err::BadInput, "matrix group wants p^d <= 9, d <= 3");
}

}  // namespace

MatrixGroupSmall matrix_group(int p, int d, std::vector<Mat> gens) {
  check_field(p, d);
  for (Mat& g : gens) {
    g.d = d;
    for (int i = 0; i < 9; ++i)
      if (g.a[i] >= p) fail(Err::BadInput, "matrix entry out of range");
    if (mat_det(g, p) == 0) fail(Err::BadInput, "matrix is singular");
  }
  MatrixGroupSmall m;
  m.p = p;
  m.d = d;
  m.gens = std::move(gens);
  m.elements = close_gens(p, d, m.gens, 4096);
  return m;
}

MatrixGroupSmall full_gl(int p, int d) {
  check_field(p, d);
  MatrixGroupSmall m;
  m.p = p;
  m.d = d;
  int cells = d * d, total = int_pow(p, cells);
  for (int code = 0; code < total; ++code) {
    Mat x;
    x.d = d;
    int c = code;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        x.at(i, j) = uint8_t(c % p);
        c /= p;
      }
    if (mat_det(x, p) != 0) m.elements.push_back(x);
  }
  std::sort(m.elements.begin(), m.elements.end());
  m.gens = greedy_mat_gens(p, d, m.elements);
  return m;
}

std::vector<MatrixGroupSmall> subgroups_up_to_conjugacy(const MatrixGroupSmall& m) {
  if (m.elements.size() > 200) fail(Err::OrderCap, "subgroup enumeration wants order <= 200");
  const int p = m.p, d = m.d;
  using Key = std::vector<uint32_t>;
  auto key_of = [&](const std::vector<Mat>& elems) {
    Key k;
    k.reserve(elems.size());
    for (const Mat& e : elems) k.push_back(mat_key(e, p));
    std::sort(k.begin(), k.end());
    return k;
  };

  struct Sub {
    std::vector<Mat> elements;  // sorted
    std::vector<Mat> gens;
  };
  std::vector<Sub> subs;
  std::map<Key, int> index;
  auto add = [&](std::vector<Mat> elems, std::vector<Mat> gens) {
    Key k = key_of(elems);
    auto [it, fresh] = index.emplace(std::move(k), int(subs.size()));
    if (fresh) subs.push_back({std::move(elems), std::move(gens)});
    return it->second;
  };

  add({mat_identity(d)}, {});
  std::vector<int> cyclic;  // indices of the cyclic seeds
  for (const Mat& e : m.elements) {
    if (e == mat_identity(d)) continue;
    size_t before = subs.size();
    int id = add(close_gens(p, d, {e}, m.elements.size() + 1), {e});
    if (subs.size() > before) cyclic.push_back(id);
  }

  // every subgroup is a join of cyclic ones, so repeated joins reach them all
  for (size_t i = 0; i < subs.size(); ++i)
    for (int ci : cyclic) {
      if (std::includes(subs[i].elements.begin(), subs[i].elements.end(),
                        subs[ci].elements.begin(), subs[ci].elements.end()))
        continue;
      std::vector<Mat> gens = subs[i].gens;
      gens.insert(gens.end(), subs[ci].gens.begin(), subs[ci].gens.end());
      std::vector<Mat> joined = close_gens(p, d, gens, m.elements.size() + 1);
      add(std::move(joined), std::move(gens));
    }

  std::vector<int> order_idx(subs.size());
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::vector<Key> keys(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) keys[i] = key_of(subs[i].elements);
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    if (subs[a].elements.size() != subs[b].elements.size())
      return subs[a].elements.size() < subs[b].elements.size();
    return keys[a] < keys[b];
  });

  std::set<Key> assigned;
  std::vector<MatrixGroupSmall> out;
  for (int si : order_idx) {
    if (assigned.count(keys[si])) continue;
    for (const Mat& g : m.elements) {
      Mat gi = mat_inverse(g, p);
      std::vector<Mat> conj;
      conj.reserve(subs[si].elements.size());
      for (const Mat& x : subs[si].elements) conj.push_back(mat_mul(mat_mul(g, x, p), gi, p));
      assigned.insert(key_of(conj));
    }
    MatrixGroupSmall rep;
    rep.p = p;
    rep.d = d;
    rep.elements = subs[si].elements;
    rep.gens = greedy_mat_gens(p, d, rep.elements);
    out.push_back(std::move(rep));
  }
  return out;
}

bool is_irreducible(const MatrixGroupSmall& h) {
  const int p = h.p, d = h.d;
  const int n = int_pow(p, d);  // number of vectors
  auto add_vec = [&](int x, int y) {
    std::vector<int> a = decode_vec(x, p, d), b = decode_vec(y, p, d);
    for (int i = 0; i < d; ++i) a[i] += b[i];
    return encode_vec(a, p);
  };
  for (uint32_t s = 1; s < (uint32_t(1) << n); s += 2) {  // subsets containing the zero vector
    int size = __builtin_popcount(s);
    if (size <= 1 || size >= n) continue;
    bool closed = true;
    for (int x = 0; x < n && closed; ++x)
      for (int y = x; y < n && closed; ++y)
        if ((s >> x & 1) && (s >> y & 1) && !(s >> add_vec(x, y) & 1)) closed = false;
    if (!closed) continue;
    bool invariant = true;
    for (const Mat& g : h.gens)
      for (int x = 0; x < n && invariant; ++x)
        if ((s >> x & 1) && !(s >> mat_apply_vec(g, x, p) & 1)) invariant = false;
    if (invariant) return false;
  }
  return true;
}

PermGroup affine_group(const MatrixGroupSmall& h) {
  if (!is_irreducible(h)) fail(Err::NotIrreducible, "affine construction wants an irreducible linear part");
  const int p = h.p, d = h.d;
  const int n = int_pow(p, d);
  std::vector<Perm> gens;
  for (int i = 0; i < d; ++i) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) {
      std::vector<int> v = decode_vec(x, p, d);
      v[i] += 1;
      img[x] = encode_vec(v, p);
    }
    gens.push_back(Perm::from_images(img));
  }
  for (const Mat& m : h.gens) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = mat_apply_vec(m, x, p);
    gens.push_back(Perm::from_images(img));
  }
  return PermGroup(n, std::move(gens));
}

bool permutation_isomorphic(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) return false;
  if (a.order() != b.order()) return false;
  if (groups_equal(a, b)) return true;
  if (cycle_fingerprint(a) != cycle_fingerprint(b)) return false;
  const int n = a.degree();
  std::vector<int> g(n);
  std::iota(g.begin(), g.end(), 0);
  do {
    bool ok = true;
    for (const Perm& x : a.generators()) {
      std::vector<int> y(n);
      for (int i = 0; i < n; ++i) y[g[i]] = g[x[i]];
      if (!b.contains(Perm::from_images(y))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(g.begin(), g.end()));
  return false;
}

std::vector<CatalogEntry> enumerate_primitive_solvable(int max_degree, const Caps& caps, int jobs) {
  if (max_degree > 9) max_degree = 9;  // affine range of prime-power degrees <= 9
  struct Cand {
    PermGroup g;
    int degree;
  };
  std::vector<Cand> kept;
  const std::pair<int, int> range[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};
  for (auto [p, d] : range) {
    int deg = int_pow(p, d);
    if (deg > max_degree) continue;
    MatrixGroupSmall gl = full_gl(p, d);
    for (const MatrixGroupSmall& h : subgroups_up_to_conjugacy(gl)) {
      if (!is_irreducible(h)) continue;
      PermGroup g = affine_group(h);
      if (!is_solvable(g)) continue;
      bool dup = false;
      for (const Cand& k : kept)
        if (k.degree == deg && permutation_isomorphic(k.g, g)) {
          dup = true;
          break;
        }
      if (!dup) kept.push_back({std::move(g), deg});
    }
  }

  const CatalogEntry blank{PermGroup(1), 0, BigInt(), {}, 0, {}, {}};
  std::vector<CatalogEntry> entries(kept.size(), blank);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 1 ? jobs : 1)
#endif
  for (size_t i = 0; i < kept.size(); ++i) {
    CensusReport rep = coloring_census(kept[i].g, 2, caps);
    CatalogEntry e = blank;
    e.group = kept[i].g;
    e.degree = kept[i].degree;
    e.order = kept[i].g.order();
    e.ell2 = {rep.ell(1), rep.ell(2), rep.ell(3), rep.ell(6)};
    e.subset_classes = static_cast<long long>(rep.classes.size());
    std::ostringstream lab;
    lab << "deg=" << e.degree << " order=" << e.order << " ell2=" << e.ell2[0] << "," << e.ell2[1]
        << "," << e.ell2[2] << "," << e.ell2[3] << " classes=" << e.subset_classes;
    e.label = lab.str();
    entries[i] = std::move(e);
  }

  // identifications forced by invariants: (4,2) is the full symmetric group,
  // (8,2) the semilinear affine line over GF(8), (9,7) the affine plane group
  PermGroup s4 = symmetric_group(4);
  PermGroup agm8 = affine_semilinear_line_8();
  PermGroup agl23 = affine_plane_3();
  for (CatalogEntry& e : entries) {
    if (e.degree == 4 && groups_equal(e.group, s4)) e.library_id_hint = "[4,2]";
    if (e.degree == 8 && permutation_isomorphic(e.group, agm8)) e.library_id_hint = "[8,2]";
    if (e.degree == 9 && permutation_isomorphic(e.group, agl23)) e.library_id_hint = "[9,7]";
  }

  std::sort(entries.begin(), entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.ell2 != b.ell2) return a.ell2 < b.ell2;
    if (a.order != b.order) return a.order < b.order;
    return a.label < b.label;
  });
  return entries;
}

std::vector<TableRow> table1_report(const std::vector<CatalogEntry>& entries) {
  std::vector<TableRow> rows;
  for (const CatalogEntry& e : entries)
    if (e.ell2[0] < 5) rows.push_back({e.degree, e.ell2});
  std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.ell < b.ell;
  });
  return rows;
}

std::vector<EntryFlags> primitive_lemma_report(const std::vector<CatalogEntry>& entries,
                                               const Caps& caps) {
  std::vector<EntryFlags> out;
  for (const CatalogEntry& e : entries) {
    EntryFlags f;
    f.degree = e.degree;
    f.label = e.label;
    CensusReport rep = coloring_census(e.group, 2, caps);
    for (const OrbitClassInfo& c : rep.classes) {
      if (c.max_orbit_length <= 3) f.stab_orbits_le3 = true;
      if (c.derived_length >= 0 && c.derived_length <= 2) f.metabelian_stab = true;
      if (c.derived_length >= 0 && c.derived_length <= 1) f.abelian_stab = true;
    }
    f.asymmetric_4coloring = ell(e.group, 4, 1, caps) >= 1;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace setstab
