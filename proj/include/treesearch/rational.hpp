#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace treesearch {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator. Used for every cost, threshold and decision-tree cost.
class Rational {
 public:
  using Impl = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(implicit)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = Impl(num, den);
  }
  explicit Rational(Impl value) : value_(std::move(value)) {}

  /// Exact value of a binary64 number (every finite double is dyadic).
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite threshold");
    if (x == 0.0) return Rational{};
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num = scaled;
    BigInt den = 1;
    if (exp >= 0) {
      num <<= exp;
    } else {
      den <<= -exp;
    }
    return Rational(num, den);
  }

  /// Parses "p/q" or "p" (optional leading sign on p). Throws
  /// std::invalid_argument on anything else.
  static Rational parse(std::string_view text) {
    auto parse_int = [&](std::string_view part, bool allow_sign) {
      if (part.empty()) throw std::invalid_argument("empty integer in rational '" + std::string(text) + "'");
      std::size_t i = 0;
      bool negative = false;
      if (allow_sign && (part[0] == '-' || part[0] == '+')) {
        negative = part[0] == '-';
        i = 1;
      }
      if (i == part.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      BigInt v = 0;
      for (; i < part.size(); ++i) {
        char ch = part[i];
        if (ch < '0' || ch > '9') throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        v = v * 10 + (ch - '0');
      }
      return negative ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true), 1);
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const Impl& impl() const { return value_; }

  bool is_positive() const { return value_ > 0; }
  bool is_zero() const { return value_ == 0; }
  double to_double() const { return value_.convert_to<double>(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const {
    BigInt den = denominator();
    if (den == 1) return numerator().str();
    return numerator().str() + "/" + den.str();
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  Impl value_{0};
};

}  // namespace treesearch

template <>
struct std::hash<treesearch::Rational> {
  std::size_t operator()(const treesearch::Rational& r) const {
    return std::hash<std::string>{}(r.str());
  }
};
