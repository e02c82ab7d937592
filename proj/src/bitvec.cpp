#include "rsm/bitvec.hpp"

#include "rsm/errors.hpp"

namespace rsm {

BitVec BitVec::from_u64(std::size_t n, std::uint64_t value) {
  BitVec v(n);
  if (!v.words_.empty()) v.words_[0] = value;
  v.clear_tail();
  return v;
}

BitVec BitVec::ones(std::size_t n) {
  BitVec v(n);
  for (Word& w : v.words_) w = ~Word{0};
  v.clear_tail();
  return v;
}

void BitVec::clear_tail() {
  const std::size_t rem = n_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

BitVec& BitVec::operator&=(const BitVec& o) {
  if (o.n_ != n_) throw DomainError("BitVec: length mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
  return *this;
}

BitVec& BitVec::operator|=(const BitVec& o) {
  if (o.n_ != n_) throw DomainError("BitVec: length mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
  return *this;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw DomainError("BitVec: length mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
  return *this;
}

BitVec BitVec::operator~() const {
  BitVec v = *this;
  for (Word& w : v.words_) w = ~w;
  v.clear_tail();
  return v;
}

std::string BitVec::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (n_ + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const std::size_t bit = 4 * d;
    const Word nib = (words_[bit / kWordBits] >> (bit % kWordBits)) & 0xF;
    out[digits - 1 - d] = kDigits[nib];
  }
  return out;
}

BitVec BitVec::from_hex(std::size_t n, std::string_view hex) {
  const std::size_t digits = (n + 3) / 4;
  if (hex.size() != digits) throw DomainError("BitVec::from_hex: wrong digit count");
  BitVec v(n);
  for (std::size_t d = 0; d < digits; ++d) {
    const char c = hex[digits - 1 - d];
    Word nib = 0;
    if (c >= '0' && c <= '9') {
      nib = static_cast<Word>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nib = static_cast<Word>(c - 'a' + 10);
    } else {
      throw DomainError("BitVec::from_hex: invalid hex digit");
    }
    const std::size_t bit = 4 * d;
    v.words_[bit / kWordBits] |= nib << (bit % kWordBits);
  }
  const BitVec before = v;
  v.clear_tail();
  if (!(before == v)) throw DomainError("BitVec::from_hex: bits set beyond length");
  return v;
}

}  // namespace rsm
