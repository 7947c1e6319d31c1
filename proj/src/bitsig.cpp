#include "nfprop/bitsig.hpp"

#include <algorithm>
#include <stdexcept>

namespace nfprop {

void or_accumulate(std::span<Word> dst, std::span<const Word> src) {
  if (dst.size() != src.size()) throw std::invalid_argument("signature rows differ in width");
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

std::size_t flip_count(std::span<const Word> old_row, std::span<const Word> new_row) {
  if (old_row.size() != new_row.size()) throw std::invalid_argument("signature rows differ in width");
  std::size_t flips = 0;
  for (std::size_t w = 0; w < old_row.size(); ++w) {
    assert((old_row[w] & ~new_row[w]) == 0 && "signature bit reset");
    flips += static_cast<std::size_t>(std::popcount(old_row[w] ^ new_row[w]));
  }
  return flips;
}

SignatureMatrix::SignatureMatrix(std::size_t n, std::size_t s)
    : n_(n), s_(s), stride_(words_for(s)), words_(n * words_for(s), 0) {
  std::size_t tail = s % kWordBits;
  last_mask_ = tail == 0 ? ~Word{0} : (Word{1} << tail) - 1;
}

void SignatureMatrix::copy_row(std::size_t u, const SignatureMatrix& from) noexcept {
  auto src = from.row(u);
  auto dst = mutable_row(u);
#ifndef NDEBUG
  for (std::size_t w = 0; w < stride_; ++w) assert((dst[w] & ~src[w]) == 0 && "signature bit reset");
#endif
  std::copy(src.begin(), src.end(), dst.begin());
}

bool SignatureMatrix::saturated(std::size_t u) const noexcept {
  if (stride_ == 0) return true;
  auto r = row(u);
  for (std::size_t w = 0; w + 1 < stride_; ++w)
    if (r[w] != ~Word{0}) return false;
  return r[stride_ - 1] == last_mask_;
}

std::size_t SignatureMatrix::row_popcount(std::size_t u) const noexcept {
  std::size_t c = 0;
  for (Word w : row(u)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t SignatureMatrix::popcount() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

SignatureMatrix init_signatures(std::size_t n, std::span<const NodeId> seeds) {
  SignatureMatrix sig(n, seeds.size());
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    NodeId u = seeds[i];
    if (u >= n) throw std::out_of_range("seed id out of range");
    if (seen[u]) throw std::invalid_argument("duplicate seed");
    seen[u] = true;
    sig.set(u, i);
  }
  return sig;
}

std::size_t GraphSignature::popcount() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

}  // namespace nfprop
