#include "zfpkit/bitvec.hpp"

#include <algorithm>
#include <climits>

#include "zfpkit/error.hpp"

namespace zfpkit {
namespace mp = boost::multiprecision;
namespace {

using Storage = BitString::Storage;

// Ripple-carry sum of two magnitudes.
Storage add_magnitudes(std::span<const int> a, std::span<const int> b) {
  Storage out;
  std::size_t i = 0, j = 0;
  bool carry = false;
  int carry_pos = 0;
  while (i < a.size() || j < b.size() || carry) {
    int p = INT_MAX;
    if (i < a.size()) p = std::min(p, a[i]);
    if (j < b.size()) p = std::min(p, b[j]);
    if (carry) p = std::min(p, carry_pos);
    int total = (carry && carry_pos == p) ? 1 : 0;
    if (i < a.size() && a[i] == p) ++total, ++i;
    if (j < b.size() && b[j] == p) ++total, ++j;
    if (total & 1) out.push_back(p);
    carry = total >= 2;
    carry_pos = p + 1;
  }
  return out;
}

// Ripple-borrow difference a - b, requires |a| >= |b|.
Storage subtract_magnitudes(std::span<const int> a, std::span<const int> b) {
  Storage out;
  std::size_t i = 0, j = 0;
  bool borrow = false;
  int borrow_pos = 0;
  while (i < a.size() || j < b.size() || borrow) {
    if (i >= a.size() && borrow) throw InternalError("magnitude subtraction underflow");
    int p = INT_MAX;
    if (i < a.size()) p = std::min(p, a[i]);
    if (j < b.size()) p = std::min(p, b[j]);
    if (borrow) p = std::min(p, borrow_pos);
    int digit = 0;
    if (i < a.size() && a[i] == p) ++digit, ++i;
    if (j < b.size() && b[j] == p) --digit, ++j;
    if (borrow && borrow_pos == p) --digit;
    borrow = digit < 0;
    if (borrow) digit += 2;
    if (digit) out.push_back(p);
    borrow_pos = p + 1;
  }
  return out;
}

BitString bits_of(const BigInt& magnitude, std::int64_t offset) {
  Storage out;
  if (magnitude == 0) return {};
  auto high = mp::msb(magnitude);
  for (unsigned b = mp::lsb(magnitude); b <= high; ++b)
    if (mp::bit_test(magnitude, b)) out.push_back(static_cast<int>(offset + b));
  return BitString::from_sorted(std::move(out));
}

Dyadic sum_of_powers(std::span<const int> positions) {
  if (positions.empty()) return {};
  BigInt m = 0;
  int base = positions.front();
  for (int p : positions) mp::bit_set(m, static_cast<unsigned>(p - base));
  return Dyadic(m, base);
}

template <class T>
Dyadic max_abs(std::span<const T> block) {
  Dyadic best;
  for (const auto& v : block) best = std::max(best, value_of(v).abs());
  return best;
}

template <class T, class Bits>
std::optional<ExponentRange> range_of(std::span<const T> block, Bits bits) {
  std::optional<ExponentRange> r;
  for (const auto& v : block) {
    const BitString& s = bits(v);
    if (s.empty()) continue;
    int lo = *s.bottom(), hi = *s.top();
    if (!r) r = ExponentRange{lo, hi};
    r->min = std::min(r->min, lo);
    r->max = std::max(r->max, hi);
  }
  return r;
}

}  // namespace

BitString::BitString(std::initializer_list<int> positions)
    : BitString(from_positions(std::vector<int>(positions))) {}

BitString BitString::from_positions(std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
    throw ParamError("duplicate bit position");
  BitString s;
  s.bits_.assign(positions.begin(), positions.end());
  return s;
}

BitString BitString::from_sorted(Storage positions) {
  for (std::size_t i = 1; i < positions.size(); ++i)
    if (positions[i - 1] >= positions[i]) throw ParamError("bit positions not strictly increasing");
  BitString s;
  s.bits_ = std::move(positions);
  return s;
}

bool BitString::test(int position) const {
  return std::binary_search(bits_.begin(), bits_.end(), position);
}

std::optional<int> BitString::top() const {
  if (bits_.empty()) return std::nullopt;
  return bits_.back();
}

std::optional<int> BitString::bottom() const {
  if (bits_.empty()) return std::nullopt;
  return bits_.front();
}

std::string BitString::digits(int high, int low) const {
  std::string s;
  for (int p = high; p >= low; --p) s.push_back(test(p) ? '1' : '0');
  return s;
}

BitString truncate(const BitString& v, int cutoff) {
  auto pos = v.positions();
  auto first = std::upper_bound(pos.begin(), pos.end(), cutoff);
  return BitString::from_sorted(Storage(first, pos.end()));
}

BitString shift(const BitString& v, int ell) {
  Storage out;
  for (int p : v.positions()) out.push_back(p - ell);
  return BitString::from_sorted(std::move(out));
}

SignedBinary::SignedBinary(bool negative, BitString magnitude)
    : negative_(negative), magnitude_(std::move(magnitude)) {
  if (negative_ && magnitude_.empty()) throw ParamError("negative zero is not a valid signed binary");
}

SignedBinary SignedBinary::operator-() const {
  if (is_zero()) return *this;
  return SignedBinary(!negative_, magnitude_);
}

SignedBinary operator+(const SignedBinary& a, const SignedBinary& b) {
  auto ma = a.magnitude().positions(), mb = b.magnitude().positions();
  if (a.negative() == b.negative())
    return SignedBinary(a.negative(), BitString::from_sorted(add_magnitudes(ma, mb)));
  int c = compare_magnitude(a.magnitude(), b.magnitude());
  if (c == 0) return {};
  if (c > 0) return SignedBinary(a.negative(), BitString::from_sorted(subtract_magnitudes(ma, mb)));
  return SignedBinary(b.negative(), BitString::from_sorted(subtract_magnitudes(mb, ma)));
}

SignedBinary operator-(const SignedBinary& a, const SignedBinary& b) { return a + (-b); }

int compare_magnitude(const BitString& a, const BitString& b) {
  auto pa = a.positions(), pb = b.positions();
  auto ia = pa.rbegin(), ib = pb.rbegin();
  for (; ia != pa.rend() && ib != pb.rend(); ++ia, ++ib)
    if (*ia != *ib) return *ia > *ib ? 1 : -1;
  if (ia != pa.rend()) return 1;
  if (ib != pb.rend()) return -1;
  return 0;
}

Dyadic value_of(const SignedBinary& v) {
  Dyadic m = sum_of_powers(v.magnitude().positions());
  return v.negative() ? -m : m;
}

Dyadic value_of(const Negabinary& v) {
  Storage even, odd;
  for (int p : v.digits().positions()) ((p & 1) ? odd : even).push_back(p);
  return sum_of_powers({even.data(), even.size()}) - sum_of_powers({odd.data(), odd.size()});
}

SignedBinary to_signed_binary(const Dyadic& x) {
  if (x.is_zero()) return {};
  BigInt mag = x.sign() < 0 ? BigInt(-x.mantissa()) : x.mantissa();
  return SignedBinary(x.sign() < 0, bits_of(mag, x.exponent()));
}

SignedBinary to_signed_binary(const Rational& x) {
  return to_signed_binary(Dyadic::from_rational(x));
}

Negabinary to_negabinary(const BigInt& x) {
  Storage out;
  BigInt v = x;
  int pos = 0;
  while (v != 0) {
    // v = -2 * next + digit with digit in {0, 1}
    bool digit = mp::bit_test(v < 0 ? BigInt(-v) : v, 0);
    if (digit) {
      out.push_back(pos);
      v -= 1;
    }
    v /= -2;
    ++pos;
  }
  return Negabinary(BitString::from_sorted(std::move(out)));
}

SignedBinary truncate(const SignedBinary& v, int cutoff) {
  BitString m = truncate(v.magnitude(), cutoff);
  bool negative = v.negative() && !m.empty();
  return SignedBinary(negative, std::move(m));
}

SignedBinary shift(const SignedBinary& v, int ell) {
  return SignedBinary(v.negative(), shift(v.magnitude(), ell));
}

Negabinary truncate(const Negabinary& v, int cutoff) { return Negabinary(truncate(v.digits(), cutoff)); }

Negabinary shift(const Negabinary& v, int ell) { return Negabinary(shift(v.digits(), ell)); }

SignedBinary round_half(const SignedBinary& v) {
  if (v.is_zero()) return v;
  if (*v.magnitude().bottom() < 0) throw ParamError("round_half needs an integer");
  // floor halving: drop the unit digit, after stepping negatives down by one
  SignedBinary base = v.negative() ? v - SignedBinary(false, BitString{0}) : v;
  return truncate(shift(base, 1), -1);
}

Dyadic norm_inf(std::span<const SignedBinary> block) { return max_abs(block); }
Dyadic norm_inf(std::span<const Negabinary> block) { return max_abs(block); }

std::optional<ExponentRange> exponent_range(std::span<const SignedBinary> block) {
  return range_of(block, [](const SignedBinary& v) -> const BitString& { return v.magnitude(); });
}

std::optional<ExponentRange> exponent_range(std::span<const Negabinary> block) {
  return range_of(block, [](const Negabinary& v) -> const BitString& { return v.digits(); });
}

}  // namespace zfpkit
