#pragma once

// Packed {+1, -1} codes. Bit i of the code lives in word i / 64 at position
// i % 64 (LSB first); a set bit is the symbol +1. Bits at positions >= L in
// the last word are always zero, so word-wise equality is code equality.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hashbound/errors.hpp"

namespace hashbound {

class BinaryCode {
 public:
  static constexpr int kWordBits = 64;

  BinaryCode() = default;

  /// All symbols -1.
  explicit BinaryCode(int length);

  /// Throws InputError on a wrong word count or non-zero padding bits.
  static BinaryCode from_words(int length, std::vector<std::uint64_t> words);

  static constexpr std::size_t words_for(int length) {
    return static_cast<std::size_t>((length + kWordBits - 1) / kWordBits);
  }

  int length() const { return length_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool bit(int i) const { return (words_[word_index(i)] >> bit_index(i)) & 1ULL; }
  int symbol(int i) const { return bit(i) ? 1 : -1; }
  void set_bit(int i, bool value);
  void flip(int i) { words_[word_index(i)] ^= 1ULL << bit_index(i); }

  BinaryCode complement() const;

  friend bool operator==(const BinaryCode&, const BinaryCode&) = default;

 private:
  static std::size_t word_index(int i) { return static_cast<std::size_t>(i) / kWordBits; }
  static int bit_index(int i) { return i % kWordBits; }

  int length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Binarize with sgn(0) = +1. Throws InputError on an empty or non-finite input.
template <typename Derived>
BinaryCode from_signs(const Eigen::DenseBase<Derived>& values) {
  const auto n = static_cast<int>(values.size());
  if (n < 1) throw InputError("from_signs: empty vector");
  BinaryCode code(n);
  for (int i = 0; i < n; ++i) {
    const double v = static_cast<double>(values.derived().coeff(i));
    if (!std::isfinite(v)) {
      throw InputError("from_signs: non-finite entry at position " + std::to_string(i));
    }
    if (v >= 0.0) code.set_bit(i, true);
  }
  return code;
}

/// One code per row.
template <typename Derived>
std::vector<BinaryCode> binarize_rows(const Eigen::MatrixBase<Derived>& relaxed) {
  std::vector<BinaryCode> codes;
  codes.reserve(static_cast<std::size_t>(relaxed.rows()));
  for (Eigen::Index r = 0; r < relaxed.rows(); ++r) codes.push_back(from_signs(relaxed.row(r)));
  return codes;
}

int hamming_distance(const BinaryCode& a, const BinaryCode& b);

/// Sum of a_i * b_i over the +-1 symbols, i.e. L - 2 * hamming_distance.
int inner_product(const BinaryCode& a, const BinaryCode& b);

/// (L - theta) / 2; throws InputError when |theta| > L or L - theta is odd.
int distance_from_theta(int code_length, int theta);

struct Codebook {
  std::vector<BinaryCode> codes;
  std::vector<int> class_ids;  // empty, or one per code

  int length() const { return codes.empty() ? 0 : codes.front().length(); }
  std::size_t size() const { return codes.size(); }

  /// Throws InputError on an empty book, mixed lengths or a class_ids size mismatch.
  void validate() const;
};

/// Minimum over unordered pairs; 0 when the book holds duplicates.
int codebook_min_distance(const Codebook& book);

inline int correction_radius(int d_min) { return (d_min - 1) / 2; }

struct Decoded {
  std::size_t index = 0;
  int distance = 0;
};

/// Nearest code by Hamming distance, lowest index on ties.
Decoded nearest_codeword(const Codebook& book, const BinaryCode& query);

// Code file: "HMX1", L (u32 LE), N (u64 LE), then N records of
// ceil(L/64) little-endian u64 words.
void write_codes(std::ostream& out, std::span<const BinaryCode> codes, int code_length);
std::vector<BinaryCode> read_codes(std::istream& in, int* code_length = nullptr);
void write_codes_file(const std::filesystem::path& path, std::span<const BinaryCode> codes,
                      int code_length);
std::vector<BinaryCode> read_codes_file(const std::filesystem::path& path,
                                        int* code_length = nullptr);

}  // namespace hashbound
