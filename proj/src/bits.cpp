#include "coh/bits.hpp"

#include <stdexcept>

namespace coh {

bits bits::all(std::size_t n) {
  bits b(n);
  for (auto& w : b.w_) w = ~std::uint64_t{0};
  if (n % 64) b.w_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  return b;
}

std::size_t bits::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += __builtin_popcountll(w);
  return c;
}

bool bits::none() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

bool bits::subset_of(const bits& o) const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & ~o.w_[k]) return false;
  return true;
}

bool bits::intersects(const bits& o) const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & o.w_[k]) return true;
  return false;
}

int bits::first() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return static_cast<int>(k * 64 + __builtin_ctzll(w_[k]));
  return -1;
}

bits& bits::operator&=(const bits& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
  return *this;
}

bits& bits::operator|=(const bits& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  return *this;
}

bits bits::operator~() const {
  bits r(n_);
  for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
  if (n_ % 64) r.w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  return r;
}

bool operator<(const bits& a, const bits& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (std::size_t k = a.w_.size(); k-- > 0;)
    if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k];
  return false;
}

std::vector<int> bits::members() const {
  std::vector<int> r;
  for_each([&](int i) { r.push_back(i); });
  return r;
}

std::string bits::hex() const {
  static const char* digits = "0123456789abcdef";
  std::size_t nd = (n_ + 3) / 4;
  if (nd == 0) return "0";
  std::string s(nd, '0');
  for (std::size_t d = 0; d < nd; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      std::size_t i = d * 4 + b;
      if (i < n_ && test(i)) v |= 1 << b;
    }
    s[nd - 1 - d] = digits[v];
  }
  return s;
}

bits bits::from_hex(const std::string& h, std::size_t n) {
  bits b(n);
  std::size_t nd = h.size();
  for (std::size_t d = 0; d < nd; ++d) {
    char c = h[nd - 1 - d];
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit in '" + h + "'");
    for (int k = 0; k < 4; ++k) {
      if (!(v >> k & 1)) continue;
      std::size_t i = d * 4 + k;
      if (i >= n) throw std::invalid_argument("hex value '" + h + "' exceeds " + std::to_string(n) + " bits");
      b.set(i);
    }
  }
  return b;
}

std::string bits::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

std::size_t bits::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ n_;
  for (auto w : w_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace coh
