#include "pht/bitset.hpp"

#include <bit>
#include <stdexcept>

#include "pht/kernels.hpp"

namespace pht {

std::size_t BitSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitSet::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool BitSet::is_subset_of(const BitSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

BitSet BitSet::operator&(const BitSet& other) const {
  if (size_ != other.size_) throw std::invalid_argument("BitSet size mismatch");
  BitSet out(size_);
  kernels::and_words(out.words(), words(), other.words());
  return out;
}

BitSet& BitSet::operator|=(const BitSet& other) {
  if (size_ != other.size_) throw std::invalid_argument("BitSet size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

}  // namespace pht
