#include "zfpkit/bitstream.hpp"

#include "zfpkit/error.hpp"

namespace zfpkit {

std::string BitBuffer::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < bits; ++i) s.push_back(bit(i) ? '1' : '0');
  return s;
}

void BitWriter::put(bool bit) {
  if ((buf_.bits & 7) == 0) buf_.bytes.push_back(0);
  if (bit) buf_.bytes.back() |= static_cast<std::uint8_t>(0x80u >> (buf_.bits & 7));
  ++buf_.bits;
}

void BitWriter::put_bits(std::uint64_t value, int count) {
  for (int i = count - 1; i >= 0; --i) put((value >> i) & 1);
}

void BitWriter::append(const BitBuffer& other) {
  for (std::size_t i = 0; i < other.bits; ++i) put(other.bit(i));
}

void BitWriter::align() { buf_.bits = buf_.bytes.size() * 8; }

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bits)
    : bytes_(bytes), size_(bits) {
  if (bits > bytes.size() * 8) throw DecodeError("bit count exceeds buffer");
}

bool BitReader::get() {
  if (pos_ >= size_) throw DecodeError("unexpected end of stream");
  bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
  ++pos_;
  return b;
}

std::uint64_t BitReader::get_bits(int count) {
  std::uint64_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint64_t>(get());
  return v;
}

void BitReader::align() {
  std::size_t next = (pos_ + 7) & ~std::size_t{7};
  pos_ = next < size_ ? next : size_;
}

}  // namespace zfpkit
