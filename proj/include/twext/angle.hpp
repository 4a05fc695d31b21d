#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "twext/errors.hpp"

namespace twext {

/// An element of Q/Z, standing for exp(2 pi i * num/den).  Always reduced
/// with 0 <= num < den.
class Angle {
 public:
  constexpr Angle() = default;
  Angle(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("angle with zero denominator");
    __int128 n = num, d = den;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    n %= d;
    if (n < 0) n += d;
    const auto g = std::gcd(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    num_ = static_cast<std::int64_t>(n / (g ? g : 1));
    den_ = static_cast<std::int64_t>(d / (g ? g : 1));
    if (num_ == 0) den_ = 1;
  }

  /// Parses "p/q" or an integer.
  static Angle parse(const std::string& s);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double radians() const;

  friend Angle operator+(const Angle& a, const Angle& b) { return combine(a, b, 1); }
  friend Angle operator-(const Angle& a, const Angle& b) { return combine(a, b, -1); }
  Angle operator-() const { return Angle(-num_, den_); }
  Angle& operator+=(const Angle& o) { return *this = *this + o; }
  Angle& operator-=(const Angle& o) { return *this = *this - o; }
  /// k * angle for an integer k.
  friend Angle operator*(std::int64_t k, const Angle& a) {
    const __int128 n = static_cast<__int128>(k % a.den_) * a.num_;
    return Angle(static_cast<std::int64_t>(n % a.den_), a.den_);
  }
  /// Half of the representative in [0,1), i.e. num/(2 den).
  Angle half() const { return Angle(num_, 2 * den_); }

  bool operator==(const Angle&) const = default;
  auto operator<=>(const Angle&) const = default;

  std::string to_string() const { return num_ == 0 ? "0" : std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  static Angle combine(const Angle& a, const Angle& b, int sign) {
    const auto g = std::gcd(a.den_, b.den_);
    const __int128 l = static_cast<__int128>(a.den_ / g) * b.den_;
    if (l > INT64_MAX) throw ResourceCap("angle denominator overflow");
    const __int128 n = static_cast<__int128>(a.num_) * (b.den_ / g) + sign * static_cast<__int128>(b.num_) * (a.den_ / g);
    const auto ll = static_cast<std::int64_t>(l);
    return Angle(static_cast<std::int64_t>(n % ll), ll);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.to_string(); }

}  // namespace twext
