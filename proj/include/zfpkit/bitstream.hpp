#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zfpkit {

// Bits packed MSB-first within each byte.
struct BitBuffer {
  std::vector<std::uint8_t> bytes;
  std::size_t bits = 0;

  bool bit(std::size_t i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1; }
  std::string to_string() const;  // "0101..."
  friend bool operator==(const BitBuffer&, const BitBuffer&) = default;
};

class BitWriter {
 public:
  void put(bool bit);
  // Low `count` bits of value, most significant first.
  void put_bits(std::uint64_t value, int count);
  void append(const BitBuffer& other);
  void align();
  const BitBuffer& buffer() const { return buf_; }
  BitBuffer take() { return std::move(buf_); }

 private:
  BitBuffer buf_;
};

// Reading past the end throws DecodeError.
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bits);
  explicit BitReader(const BitBuffer& b) : BitReader(b.bytes, b.bits) {}

  bool get();
  std::uint64_t get_bits(int count);
  void align();
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace zfpkit
