#include "platoon/rational.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace platoon {
namespace {

using int128 = __int128;

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

int128 pow10_128(int exponent) {
  if (exponent < 0 || exponent > 37) {
    throw std::overflow_error("decimal exponent out of range");
  }
  int128 v = 1;
  for (int i = 0; i < exponent; ++i) v *= 10;
  return v;
}

std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

}  // namespace

Rational Rational::reduce(int128 numerator, int128 denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  if (numerator == 0) return Rational();
  int128 g = gcd128(numerator, denominator);
  Rational r;
  r.num_ = narrow(numerator / g);
  r.den_ = narrow(denominator / g);
  return r;
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  *this = reduce(numerator, denominator);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-static_cast<int128>(num_));
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = reduce(static_cast<int128>(num_) * rhs.den_ + static_cast<int128>(rhs.num_) * den_,
                 static_cast<int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = reduce(static_cast<int128>(num_) * rhs.den_ - static_cast<int128>(rhs.num_) * den_,
                 static_cast<int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = reduce(static_cast<int128>(num_) * rhs.num_, static_cast<int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  *this = reduce(static_cast<int128>(num_) * rhs.den_, static_cast<int128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  int128 a = static_cast<int128>(lhs.num_) * rhs.den_;
  int128 b = static_cast<int128>(rhs.num_) * lhs.den_;
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<Rational> Rational::try_parse(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t num = 0, den = 0;
    auto ns = text.substr(0, slash);
    auto ds = text.substr(slash + 1);
    auto r1 = std::from_chars(ns.data(), ns.data() + ns.size(), num);
    auto r2 = std::from_chars(ds.data(), ds.data() + ds.size(), den);
    if (r1.ec != std::errc() || r1.ptr != ns.data() + ns.size()) return std::nullopt;
    if (r2.ec != std::errc() || r2.ptr != ds.data() + ds.size()) return std::nullopt;
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  }

  bool negative = false;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  int128 mantissa = 0;
  int frac_digits = 0;
  bool seen_digit = false;
  bool seen_dot = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (mantissa > (static_cast<int128>(1) << 100)) return std::nullopt;
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      break;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;

  int exponent = 0;
  if (pos < text.size()) {  // at 'e'/'E'
    auto es = text.substr(pos + 1);
    auto r = std::from_chars(es.data(), es.data() + es.size(), exponent);
    if (r.ec != std::errc() || r.ptr != es.data() + es.size()) return std::nullopt;
  }

  try {
    int128 num = negative ? -mantissa : mantissa;
    int128 den = pow10_128(frac_digits);
    if (exponent > 0) {
      num *= pow10_128(exponent);
    } else if (exponent < 0) {
      den *= pow10_128(-exponent);
    }
    return reduce(num, den);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

Rational Rational::parse(std::string_view text) {
  auto r = try_parse(text);
  if (!r) throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  return *r;
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("cannot represent non-finite value exactly");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return parse(std::string_view(buf, res.ptr - buf));
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  // Count the 2s and 5s in the denominator; anything left means the decimal
  // expansion does not terminate and we fall back to fraction form.
  std::int64_t rest = den_;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  int places = twos > fives ? twos : fives;
  int128 scaled = static_cast<int128>(num_);
  for (int i = 0; i < places - twos; ++i) scaled *= 2;
  for (int i = 0; i < places - fives; ++i) scaled *= 5;

  std::string digits = int128_to_string(abs128(scaled));
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - places, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return (num_ < 0 ? "-" : "") + digits;
}

std::string Rational::to_decimal(int digits) const {
  int128 scale = pow10_128(digits);
  int128 n = static_cast<int128>(num_) * scale;
  int128 q = n / den_;
  int128 rem = abs128(n % den_);
  if (2 * rem >= den_) q += (num_ < 0 ? -1 : 1);

  std::string body = int128_to_string(abs128(q));
  if (digits > 0) {
    if (static_cast<int>(body.size()) <= digits) {
      body.insert(0, digits + 1 - body.size(), '0');
    }
    body.insert(body.size() - digits, ".");
  }
  bool negative = (q < 0);
  return (negative ? "-" : "") + body;
}

}  // namespace platoon
