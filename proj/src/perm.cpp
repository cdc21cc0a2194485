#include "setstab/perm.hpp"

#include <algorithm>
#include <sstream>

#include "setstab/errors.hpp"

namespace setstab {

Perm::Perm(int degree) {
  if (degree < 1 || degree > kDegreeCap) fail(Err::DegreeCap, "degree out of range: " + std::to_string(degree));
  img_.resize(size_t(degree));
  for (int i = 0; i < degree; i++) img_[size_t(i)] = uint16_t(i);
}

Perm::Perm(std::vector<uint16_t> images) : img_(std::move(images)) {
  int n = int(img_.size());
  if (n < 1 || n > kDegreeCap) fail(Err::DegreeCap, "degree out of range: " + std::to_string(n));
  std::vector<char> seen(size_t(n), 0);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v]) fail(Err::NotABijection, "image array is not a bijection");
    seen[v] = 1;
  }
}

Perm Perm::from_images(const std::vector<int>& images) {
  std::vector<uint16_t> v;
  v.reserve(images.size());
  for (int x : images) {
    if (x < 0 || x >= kDegreeCap) fail(Err::NotABijection, "image out of range");
    v.push_back(uint16_t(x));
  }
  return Perm(std::move(v));
}

Perm Perm::from_cycles(int degree, std::initializer_list<std::initializer_list<int>> cycles) {
  Perm p(degree);
  for (const auto& cyc : cycles) {
    std::vector<int> c(cyc);
    for (size_t i = 0; i < c.size(); i++) {
      int from = c[i], to = c[(i + 1) % c.size()];
      if (from < 0 || from >= degree || to < 0 || to >= degree)
        fail(Err::PointOutOfRange, "cycle point out of range");
      p.img_[size_t(from)] = uint16_t(to);
    }
  }
  // from_cycles may produce junk on overlapping cycles; re-validate.
  return Perm(std::move(p.img_));
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < img_.size(); i++)
    if (img_[i] != i) return false;
  return true;
}

int Perm::smallest_moved() const {
  for (size_t i = 0; i < img_.size(); i++)
    if (img_[i] != i) return int(i);
  return -1;
}

Perm Perm::inverse() const {
  std::vector<uint16_t> inv(img_.size());
  for (size_t i = 0; i < img_.size(); i++) inv[img_[i]] = uint16_t(i);
  Perm p;
  p.img_ = std::move(inv);
  return p;
}

Mask Perm::apply(const Mask& s) const {
  Mask out;
  for (int i = 0; i < Mask::kWords; i++) {
    uint64_t x = s.w[i];
    while (x) {
      int pt = i * 64 + std::countr_zero(x);
      x &= x - 1;
      out.set(img_[size_t(pt)]);
    }
  }
  return out;
}

size_t Perm::hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  for (auto v : img_) {
    h ^= v;
    h *= 0x100000001b3ull;
  }
  return size_t(h);
}

std::string Perm::cycle_string() const {
  int n = degree();
  std::vector<char> done(size_t(n), 0);
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < n; i++) {
    if (done[size_t(i)] || img_[size_t(i)] == i) continue;
    os << '(';
    int x = i;
    bool first = true;
    while (!done[size_t(x)]) {
      done[size_t(x)] = 1;
      if (!first) os << ' ';
      os << x;
      first = false;
      x = img_[size_t(x)];
    }
    os << ')';
    any = true;
  }
  if (!any) return "()";
  return os.str();
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) fail(Err::DegreeMismatch, "compose: degree mismatch");
  std::vector<uint16_t> v(size_t(p.degree()));
  for (int x = 0; x < p.degree(); x++) v[size_t(x)] = uint16_t(q[p[x]]);
  Perm r;
  r = Perm(std::move(v));
  return r;
}

Perm conjugate(const Perm& p, const Perm& q) { return compose(compose(q.inverse(), p), q); }

Perm commutator(const Perm& p, const Perm& q) {
  return compose(compose(p.inverse(), q.inverse()), compose(p, q));
}

} // namespace setstab
