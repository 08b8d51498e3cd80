#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace coh {

// Fixed-length bitset sized at runtime. Used for subsets of points and
// for lattice elements given as up-sets.
class bits {
 public:
  bits() = default;
  explicit bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static bits all(std::size_t n);

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v)
      w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  std::size_t count() const;
  bool none() const;
  bool any() const { return !none(); }
  bool subset_of(const bits& o) const;
  bool intersects(const bits& o) const;
  int first() const;  // -1 when empty

  bits& operator&=(const bits& o);
  bits& operator|=(const bits& o);
  bits operator~() const;
  friend bits operator&(bits a, const bits& b) { return a &= b; }
  friend bits operator|(bits a, const bits& b) { return a |= b; }
  friend bool operator==(const bits& a, const bits& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
  friend bool operator!=(const bits& a, const bits& b) { return !(a == b); }
  friend bool operator<(const bits& a, const bits& b);

  std::vector<int> members() const;
  std::string hex() const;
  static bits from_hex(const std::string& h, std::size_t n);  // throws on bad input
  std::string to_string() const;                              // "0101..." low index first
  std::size_t hash() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        int b = __builtin_ctzll(w);
        f(static_cast<int>(k * 64 + b));
        w &= w - 1;
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct bits_hash {
  std::size_t operator()(const bits& b) const { return b.hash(); }
};

}  // namespace coh
