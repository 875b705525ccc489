#include "hashbound/binary_codes.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace hashbound {

namespace {

std::uint64_t padding_mask(int length) {
  const int used = length % BinaryCode::kWordBits;
  return used == 0 ? ~0ULL : (1ULL << used) - 1;
}

void require_same_length(const BinaryCode& a, const BinaryCode& b, const char* op) {
  if (a.length() != b.length()) {
    throw InputError(std::string(op) + ": code length mismatch (" + std::to_string(a.length()) +
                     " vs " + std::to_string(b.length()) + ")");
  }
}

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw ParseError(std::string("code file truncated while reading ") + what);
  }
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return static_cast<T>(value);
}

constexpr std::array<char, 4> kMagic = {'H', 'M', 'X', '1'};

}  // namespace

BinaryCode::BinaryCode(int length) : length_(length), words_(words_for(length), 0) {
  if (length < 1) throw InputError("BinaryCode: length must be >= 1");
}

BinaryCode BinaryCode::from_words(int length, std::vector<std::uint64_t> words) {
  BinaryCode code(length);
  if (words.size() != code.words_.size()) {
    throw InputError("BinaryCode::from_words: expected " + std::to_string(code.words_.size()) +
                     " words, got " + std::to_string(words.size()));
  }
  if ((words.back() & ~padding_mask(length)) != 0) {
    throw InputError("BinaryCode::from_words: padding bits beyond length are set");
  }
  code.words_ = std::move(words);
  return code;
}

void BinaryCode::set_bit(int i, bool value) {
  const std::uint64_t mask = 1ULL << bit_index(i);
  if (value) {
    words_[word_index(i)] |= mask;
  } else {
    words_[word_index(i)] &= ~mask;
  }
}

BinaryCode BinaryCode::complement() const {
  BinaryCode out = *this;
  for (auto& w : out.words_) w = ~w;
  out.words_.back() &= padding_mask(length_);
  return out;
}

int hamming_distance(const BinaryCode& a, const BinaryCode& b) {
  require_same_length(a, b, "hamming_distance");
  const auto wa = a.words();
  const auto wb = b.words();
  int distance = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) distance += std::popcount(wa[i] ^ wb[i]);
  return distance;
}

int inner_product(const BinaryCode& a, const BinaryCode& b) {
  require_same_length(a, b, "inner_product");
  return a.length() - 2 * hamming_distance(a, b);
}

int distance_from_theta(int code_length, int theta) {
  if (theta > code_length || theta < -code_length) {
    throw InputError("distance_from_theta: |theta| = " + std::to_string(theta) +
                     " exceeds L = " + std::to_string(code_length));
  }
  if ((code_length - theta) % 2 != 0) {
    throw InputError("distance_from_theta: L - theta must be even");
  }
  return (code_length - theta) / 2;
}

void Codebook::validate() const {
  if (codes.empty()) throw InputError("codebook is empty");
  const int len = codes.front().length();
  for (const auto& c : codes) {
    if (c.length() != len) throw InputError("codebook holds codes of different lengths");
  }
  if (!class_ids.empty() && class_ids.size() != codes.size()) {
    throw InputError("codebook class_ids size does not match code count");
  }
}

int codebook_min_distance(const Codebook& book) {
  book.validate();
  if (book.size() < 2) throw InputError("codebook_min_distance needs at least two codes");
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < book.size(); ++i) {
    for (std::size_t j = i + 1; j < book.size(); ++j) {
      best = std::min(best, hamming_distance(book.codes[i], book.codes[j]));
      if (best == 0) return 0;
    }
  }
  return best;
}

Decoded nearest_codeword(const Codebook& book, const BinaryCode& query) {
  book.validate();
  Decoded best{0, std::numeric_limits<int>::max()};
  for (std::size_t i = 0; i < book.size(); ++i) {
    const int d = hamming_distance(book.codes[i], query);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

void write_codes(std::ostream& out, std::span<const BinaryCode> codes, int code_length) {
  if (code_length < 1) throw InputError("write_codes: code length must be >= 1");
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(code_length));
  put_le<std::uint64_t>(out, codes.size());
  for (const auto& c : codes) {
    if (c.length() != code_length) throw InputError("write_codes: code length mismatch");
    for (const auto w : c.words()) put_le<std::uint64_t>(out, w);
  }
  if (!out) throw std::runtime_error("write_codes: stream write failed");
}

std::vector<BinaryCode> read_codes(std::istream& in, int* code_length) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != 4 || magic != kMagic) throw ParseError("code file: bad magic, expected HMX1");
  const auto length = get_le<std::uint32_t>(in, "code length");
  const auto count = get_le<std::uint64_t>(in, "record count");
  if (length < 1 || length > static_cast<std::uint32_t>(std::numeric_limits<int>::max() - 64)) {
    throw ParseError("code file: invalid code length " + std::to_string(length));
  }
  const int len = static_cast<int>(length);
  const std::size_t per_code = BinaryCode::words_for(len);
  std::vector<BinaryCode> codes;
  for (std::uint64_t n = 0; n < count; ++n) {
    std::vector<std::uint64_t> words(per_code);
    for (auto& w : words) w = get_le<std::uint64_t>(in, "record");
    try {
      codes.push_back(BinaryCode::from_words(len, std::move(words)));
    } catch (const InputError& e) {
      throw ParseError("code file record " + std::to_string(n) + ": " + e.what());
    }
  }
  if (code_length != nullptr) *code_length = len;
  return codes;
}

void write_codes_file(const std::filesystem::path& path, std::span<const BinaryCode> codes,
                      int code_length) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_codes(out, codes, code_length);
}

std::vector<BinaryCode> read_codes_file(const std::filesystem::path& path, int* code_length) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_codes(in, code_length);
}

}  // namespace hashbound
