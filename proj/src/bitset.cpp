#include "bes/bitset.hpp"

#include <stdexcept>

namespace bes {

namespace {

// Bit positions whose index has bit i clear, for i < 6.
constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

unsigned lattice_rank(std::size_t bits) {
  if (bits == 0 || !std::has_single_bit(bits))
    throw std::logic_error("subset closure needs a power-of-two sized bitset");
  return static_cast<unsigned>(std::countr_zero(bits));
}

}  // namespace

BitSet& BitSet::down_closure() {
  const unsigned rank = lattice_rank(bits_);
  for (unsigned i = 0; i < rank; ++i) {
    if (i < 6) {
      const unsigned shift = 1U << i;
      for (auto& w : words_) w |= (w >> shift) & kLowHalf[i];
    } else {
      const std::size_t d = std::size_t{1} << (i - 6);
      for (std::size_t w = 0; w < words_.size(); ++w)
        if (w & d) words_[w ^ d] |= words_[w];
    }
  }
  return *this;
}

BitSet& BitSet::up_closure() {
  const unsigned rank = lattice_rank(bits_);
  for (unsigned i = 0; i < rank; ++i) {
    if (i < 6) {
      const unsigned shift = 1U << i;
      for (auto& w : words_) w |= (w << shift) & ~kLowHalf[i];
    } else {
      const std::size_t d = std::size_t{1} << (i - 6);
      for (std::size_t w = 0; w < words_.size(); ++w)
        if (!(w & d)) words_[w | d] |= words_[w];
    }
  }
  trim();
  return *this;
}

}  // namespace bes
