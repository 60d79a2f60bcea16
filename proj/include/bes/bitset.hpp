// Dense bitset over base identifiers.
//
// Sets of bases are indexed by the base's rule mask, so a universe with k
// rules gives bitsets of 2^k bits.  The subset-lattice operations
// (down_closure / up_closure) rely on that indexing: bit i of an index is
// membership of rule i.

#ifndef BES_BITSET_HPP
#define BES_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace bes {

class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  static BitSet full(std::size_t bits) {
    BitSet s(bits);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t size() const { return bits_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }
  bool all() const { return count() == bits_; }

  bool is_subset_of(const BitSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const BitSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// Smallest element, or size() when empty.
  std::size_t first() const { return next(0); }
  /// Smallest element >= i, or size() when none.
  std::size_t next(std::size_t i) const {
    if (i >= bits_) return bits_;
    std::size_t w = i >> 6;
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w >= words_.size()) return bits_;
      cur = words_[w];
    }
  }
  /// Smallest element of (*this \ o), or size() when *this is a subset of o.
  std::size_t first_not_in(const BitSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (auto d = words_[w] & ~o.words_[w]) return (w << 6) + static_cast<std::size_t>(std::countr_zero(d));
    return bits_;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t cur = words_[w];
      while (cur) {
        f((w << 6) + static_cast<std::size_t>(std::countr_zero(cur)));
        cur &= cur - 1;
      }
    }
  }

  BitSet& operator&=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitSet& operator|=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  BitSet& operator-=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  BitSet& operator^=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitSet operator~() const {
    BitSet r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
  friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend BitSet operator-(BitSet a, const BitSet& b) { return a -= b; }
  friend BitSet operator^(BitSet a, const BitSet& b) { return a ^= b; }
  bool operator==(const BitSet& o) const = default;

  /// Adds every index obtained by clearing bits of a member index, i.e. all
  /// subsets of members.  size() must be a power of two.
  BitSet& down_closure();
  /// Adds every index obtained by setting bits of a member index.
  BitSet& up_closure();

  std::size_t hash() const {
    std::size_t h = bits_;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void trim() {
    if (bits_ & 63) words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
  }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitSetHash {
  std::size_t operator()(const BitSet& s) const { return s.hash(); }
};

/// Calls f(s) for every superset s of `mask` with s < limit, in increasing
/// order.  `limit` must be a power of two.
template <typename F>
void for_each_superset(std::uint64_t mask, std::uint64_t limit, F&& f) {
  for (std::uint64_t s = mask; s < limit; s = (s + 1) | mask) f(s);
}

/// Calls f(s) for every subset s of `mask`, in decreasing order.
template <typename F>
void for_each_subset(std::uint64_t mask, F&& f) {
  for (std::uint64_t s = mask;; s = (s - 1) & mask) {
    f(s);
    if (s == 0) break;
  }
}

}  // namespace bes

#endif  // BES_BITSET_HPP
