#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "setstab/bitset.hpp"

namespace setstab {

constexpr int kDegreeCap = 256;

/// Permutation of {0,...,n-1}, stored as the image array.
/// Composition is left-to-right throughout: (p * q)(x) = q(p(x)).
class Perm {
public:
  Perm() = default;
  explicit Perm(int degree);                    // identity
  explicit Perm(std::vector<uint16_t> images);  // validates bijection + degree cap

  static Perm from_images(const std::vector<int>& images);
  // Cycle notation helper: degree n, product of the given cycles.
  static Perm from_cycles(int degree, std::initializer_list<std::initializer_list<int>> cycles);

  int degree() const { return int(img_.size()); }
  int operator[](int x) const { return img_[size_t(x)]; }
  const std::vector<uint16_t>& images() const { return img_; }

  bool is_identity() const;
  bool moves(int x) const { return img_[size_t(x)] != x; }
  int smallest_moved() const; // -1 if identity

  Perm inverse() const;
  Mask apply(const Mask& s) const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; } // lex on images

  size_t hash() const;
  std::string cycle_string() const;

private:
  std::vector<uint16_t> img_;
};

/// Apply-p-then-q composition.
Perm compose(const Perm& p, const Perm& q);
inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }
/// q^{-1} p q.
Perm conjugate(const Perm& p, const Perm& q);
/// p^{-1} q^{-1} p q.
Perm commutator(const Perm& p, const Perm& q);

struct PermHash {
  size_t operator()(const Perm& p) const { return p.hash(); }
};

} // namespace setstab
