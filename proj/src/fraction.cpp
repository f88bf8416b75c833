#include "treelens/fraction.hpp"

#include <cctype>
#include <limits>

namespace treelens {
namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_int64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

void normalize(i128 num, i128 den, std::int64_t& out_num, std::int64_t& out_den) {
  if (den == 0) throw Error("fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(abs128(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits_int64(num) || !fits_int64(den)) {
    throw Error("fraction: value does not fit 64-bit storage after reduction");
  }
  out_num = static_cast<std::int64_t>(num);
  out_den = static_cast<std::int64_t>(den);
}

Fraction reduce(i128 num, i128 den) {
  std::int64_t n = 0;
  std::int64_t d = 1;
  normalize(num, den, n, d);
  return Fraction(n, d);  // already reduced; the ctor's second pass is a no-op
}

}  // namespace

Fraction::Fraction(std::int64_t numerator, std::int64_t denominator) {
  normalize(numerator, denominator, num_, den_);
}

Fraction Fraction::parse(std::string_view text) {
  if (text.find('.') != std::string_view::npos) {
    throw Error("fraction: decimal notation rejected, write an exact num/den value: '" +
                std::string(text) + "'");
  }
  auto bad = [&text]() -> Error {
    return Error("fraction: expected num/den, got '" + std::string(text) + "'");
  };
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  auto slash = rest.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 >= rest.size()) throw bad();
  std::string_view num_part = rest.substr(0, slash);
  std::string_view den_part = rest.substr(slash + 1);
  auto parse_digits = [&bad](std::string_view part) -> std::int64_t {
    if (part.empty() || part.size() > 18) throw bad();
    std::int64_t value = 0;
    for (char c : part) {
      if (c < '0' || c > '9') throw bad();
      value = value * 10 + (c - '0');
    }
    return value;
  };
  std::int64_t num = parse_digits(num_part);
  std::int64_t den = parse_digits(den_part);
  if (den == 0) throw Error("fraction: zero denominator in '" + std::string(text) + "'");
  return Fraction(negative ? -num : num, den);
}

bool Fraction::in_unit_interval() const {
  return num_ >= 0 && num_ <= den_;
}

Fraction Fraction::pow(unsigned exponent) const {
  Fraction result(1);
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

double Fraction::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Fraction::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Fraction::to_decimal(int digits) const {
  if (digits < 0 || digits > 18) throw Error("fraction: unsupported decimal precision");
  i128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  i128 magnitude = abs128(static_cast<i128>(num_)) * scale;
  // Round half up on the absolute value.
  i128 q = (2 * magnitude + den_) / (2 * static_cast<i128>(den_));
  i128 whole = q / scale;
  i128 frac = q % scale;
  std::string whole_text;
  if (whole == 0) {
    whole_text = "0";
  } else {
    while (whole > 0) {
      whole_text.insert(whole_text.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
      whole /= 10;
    }
  }
  std::string out;
  if (num_ < 0 && q != 0) out += '-';
  out += whole_text;
  if (digits > 0) {
    std::string frac_text(static_cast<std::size_t>(digits), '0');
    for (int i = digits - 1; i >= 0 && frac > 0; --i) {
      frac_text[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
      frac /= 10;
    }
    out += '.';
    out += frac_text;
  }
  return out;
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  return reduce(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.num_ == 0) throw Error("fraction: division by zero");
  return reduce(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

Fraction operator-(const Fraction& a) { return Fraction(-a.num_, a.den_); }

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace treelens
