#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nfprop/graph.hpp"

namespace nfprop {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

/// dst |= src. Throws std::invalid_argument on width mismatch.
void or_accumulate(std::span<Word> dst, std::span<const Word> src);

/// Number of bits set in `new_row` but not in `old_row`. `new_row` must be a
/// bitwise superset of `old_row` (asserted in debug builds).
std::size_t flip_count(std::span<const Word> old_row, std::span<const Word> new_row);

/// Fused dst |= src returning the number of bits that flipped 0 -> 1 in dst.
inline std::size_t or_accumulate_counting(std::span<Word> dst, std::span<const Word> src) noexcept {
  assert(dst.size() == src.size());
  std::size_t flips = 0;
  for (std::size_t w = 0; w < dst.size(); ++w) {
    Word merged = dst[w] | src[w];
    flips += static_cast<std::size_t>(std::popcount(merged ^ dst[w]));
    dst[w] = merged;
  }
  return flips;
}

/// n x s bit matrix, one row per node and one column per seed. Rows are
/// packed into whole words; padding bits past column s stay zero. After
/// construction rows only grow: writes go through OR-merges or copies from a
/// matrix whose row is a superset.
class SignatureMatrix {
 public:
  SignatureMatrix(std::size_t n, std::size_t s);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return s_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  std::span<const Word> row(std::size_t u) const noexcept {
    return {words_.data() + u * stride_, stride_};
  }

  void set(std::size_t u, std::size_t col) noexcept {
    words_[u * stride_ + col / kWordBits] |= Word{1} << (col % kWordBits);
  }
  bool test(std::size_t u, std::size_t col) const noexcept {
    return (words_[u * stride_ + col / kWordBits] >> (col % kWordBits)) & 1U;
  }

  /// row(u) |= src, returning the flip count.
  std::size_t merge_row(std::size_t u, std::span<const Word> src) noexcept {
    return or_accumulate_counting(mutable_row(u), src);
  }

  /// row(u) = from.row(u). `from` must hold a superset of the current row.
  void copy_row(std::size_t u, const SignatureMatrix& from) noexcept;

  /// All s columns of row u are set.
  bool saturated(std::size_t u) const noexcept;

  std::size_t row_popcount(std::size_t u) const noexcept;
  std::size_t popcount() const noexcept;

 private:
  std::span<Word> mutable_row(std::size_t u) noexcept { return {words_.data() + u * stride_, stride_}; }

  std::size_t n_;
  std::size_t s_;
  std::size_t stride_;
  Word last_mask_;
  std::vector<Word> words_;
};

/// Bit (u, i) set iff u == seeds[i]. Throws std::out_of_range for a seed
/// >= n and std::invalid_argument for duplicates.
SignatureMatrix init_signatures(std::size_t n, std::span<const NodeId> seeds);

/// One bit per node: the reach of a single seed.
class GraphSignature {
 public:
  explicit GraphSignature(std::size_t n) : n_(n), words_(words_for(n), 0) {}

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t u) const noexcept { return (words_[u / kWordBits] >> (u % kWordBits)) & 1U; }
  /// Returns true when the bit was previously clear.
  bool set(std::size_t u) noexcept {
    Word bit = Word{1} << (u % kWordBits);
    Word& w = words_[u / kWordBits];
    bool fresh = (w & bit) == 0;
    w |= bit;
    return fresh;
  }
  std::span<const Word> words() const noexcept { return words_; }
  std::size_t merge(const GraphSignature& other) noexcept {
    return or_accumulate_counting(words_, other.words_);
  }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }
  std::size_t popcount() const noexcept;

 private:
  std::size_t n_;
  std::vector<Word> words_;
};

}  // namespace nfprop
