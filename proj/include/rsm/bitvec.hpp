#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsm {

/// Fixed-length packed bit vector. Bit i lives in word i/64 at position i%64.
class BitVec {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

  /// Low min(n, 64) bits of `value`.
  static BitVec from_u64(std::size_t n, std::uint64_t value);
  static BitVec ones(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool v) {
    const Word bit = Word{1} << (i % kWordBits);
    if (v) {
      words_[i / kWordBits] |= bit;
    } else {
      words_[i / kWordBits] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (Word w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// First word, for n <= 64 fast paths and configuration indexing.
  std::uint64_t to_u64() const { return words_.empty() ? 0 : words_[0]; }

  BitVec& operator&=(const BitVec& o);
  BitVec& operator|=(const BitVec& o);
  BitVec& operator^=(const BitVec& o);
  /// Complement restricted to the n valid bits.
  BitVec operator~() const;

  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  /// Lowercase hex of the n-bit number, most significant digit first,
  /// zero padded to ceil(n/4) digits.
  std::string to_hex() const;
  /// Inverse of to_hex. Throws DomainError on bad digits, wrong length, or
  /// bits set beyond n.
  static BitVec from_hex(std::size_t n, std::string_view hex);

 private:
  void clear_tail();

  std::size_t n_ = 0;
  std::vector<Word> words_;
};

/// popcount((a XOR b) AND mask) without allocating.
inline std::size_t masked_mismatch(const BitVec& a, const BitVec& b, const BitVec& mask) {
  std::size_t c = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  const auto wm = mask.words();
  for (std::size_t k = 0; k < wa.size(); ++k) {
    c += static_cast<std::size_t>(std::popcount((wa[k] ^ wb[k]) & wm[k]));
  }
  return c;
}

/// popcount((a XOR b) AND m1 AND m2) without allocating.
inline std::size_t masked_mismatch(const BitVec& a, const BitVec& b, const BitVec& m1,
                                   const BitVec& m2) {
  std::size_t c = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  const auto w1 = m1.words();
  const auto w2 = m2.words();
  for (std::size_t k = 0; k < wa.size(); ++k) {
    c += static_cast<std::size_t>(std::popcount((wa[k] ^ wb[k]) & w1[k] & w2[k]));
  }
  return c;
}

inline std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
  std::size_t c = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t k = 0; k < wa.size(); ++k) {
    c += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k]));
  }
  return c;
}

}  // namespace rsm
