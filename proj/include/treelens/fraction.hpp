#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "treelens/error.hpp"

namespace treelens {

// Exact rational over int64 storage, kept gcd-normalized with a positive
// denominator.  Comparisons cross-multiply in 128-bit integers; nothing in
// this class touches floating point except the explicit render helpers.
class Fraction {
 public:
  constexpr Fraction() = default;
  explicit constexpr Fraction(std::int64_t value) : num_(value), den_(1) {}
  Fraction(std::int64_t numerator, std::int64_t denominator);

  // Parses "num/den" (optional leading '-').  Decimal notation is rejected
  // so callers cannot silently lose exactness.
  static Fraction parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool in_unit_interval() const;  // value in [0, 1]

  Fraction pow(unsigned exponent) const;

  double to_double() const;
  std::string to_string() const;                 // "num/den"
  std::string to_decimal(int digits = 9) const;  // fixed-point, round half up

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a);

  friend bool operator==(const Fraction& a, const Fraction& b) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Fraction one_minus(const Fraction& f) { return Fraction(1) - f; }

}  // namespace treelens
