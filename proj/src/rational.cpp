#include "remy/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace remy {

std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Rational parse_fraction(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_int(num)) throw std::invalid_argument("bad fraction: " + std::string(text));
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
  if (slash == std::string_view::npos) return Rational(n);
  const auto den = text.substr(slash + 1);
  if (!is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("bad fraction: " + std::string(text));
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(n, d);
}

Integer factorial(unsigned n) { return rising_product(1, n); }

Integer double_factorial_odd(unsigned n) {
  Integer r = 1;
  for (unsigned k = 1; k <= n; ++k) r *= 2 * k - 1;
  return r;
}

Integer rising_product(unsigned lo, unsigned hi) {
  Integer r = 1;
  if (hi < lo) return r;
  for (unsigned k = lo; k <= hi; ++k) r *= k;
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Integer pow2(unsigned k) {
  Integer r = 1;
  r <<= k;
  return r;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace remy
