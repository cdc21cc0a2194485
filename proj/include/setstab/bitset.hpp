#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace setstab {

// Fixed-capacity bitset for point sets; degree is capped at 256 repo-wide.
struct Mask {
  static constexpr int kWords = 4;
  std::array<uint64_t, kWords> w{0, 0, 0, 0};

  void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool empty() const { return !(w[0] | w[1] | w[2] | w[3]); }

  bool operator==(const Mask& o) const { return w == o.w; }
  bool operator!=(const Mask& o) const { return w != o.w; }

  // Orders masks by their 0/1 indicator sequence read from point 0 upward
  // (the sequence with the earlier 0 at the first difference is smaller).
  bool indicator_less(const Mask& o) const {
    for (int i = 0; i < kWords; i++) {
      uint64_t d = w[i] ^ o.w[i];
      if (d) {
        uint64_t low = d & ~(d - 1); // lowest differing bit
        return (o.w[i] & low) != 0;  // we have 0 there -> smaller
      }
    }
    return false;
  }

  std::vector<int> points() const {
    std::vector<int> out;
    for (int i = 0; i < kWords; i++) {
      uint64_t x = w[i];
      while (x) {
        out.push_back(i * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
    return out;
  }

  static Mask of_points(const std::vector<int>& pts) {
    Mask m;
    for (int p : pts) m.set(p);
    return m;
  }

  size_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (auto x : w) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return size_t(h);
  }
};

struct MaskHash {
  size_t operator()(const Mask& m) const { return m.hash(); }
};

} // namespace setstab
