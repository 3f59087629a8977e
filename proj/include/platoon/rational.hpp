#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace platoon {

// Exact rational arithmetic over 64-bit integers.
//
// Every monetary quantity in the library (profits, penalties, prices, score
// valuations) and every score delta is a small-denominator rational: decimal
// config inputs plus 1/n platoon shares. Keeping them exact makes the
// profit-transfer identities hold to the bit instead of to a tolerance.
// Intermediates run through 128-bit integers; an operation whose reduced
// result does not fit in int64 throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t numerator, std::int64_t denominator);

  // Accepts "105", "-26.25", "1.05e2" and fraction form "105/4".
  static Rational parse(std::string_view text);
  static std::optional<Rational> try_parse(std::string_view text);
  // Converts via the shortest decimal that round-trips the double, so a JSON
  // literal like 0.35 becomes exactly 35/100.
  static Rational from_double(double value);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Exact decimal string when the denominator is 2^a*5^b, else "num/den".
  std::string to_string() const;
  // Fixed-point decimal with `digits` places, rounded half away from zero.
  std::string to_decimal(int digits) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  static Rational reduce(__int128 numerator, __int128 denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

using Money = Rational;

}  // namespace platoon

template <>
struct std::hash<platoon::Rational> {
  std::size_t operator()(const platoon::Rational& r) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(r.numerator()) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(r.denominator()) + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};
