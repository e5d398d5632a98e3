#include "ltlf/rational.hpp"

#include <cctype>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace ltlf {

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  if (digits.empty())
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  std::int64_t value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    if (value > (INT64_MAX - 9) / 10)
      throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return value;
}

std::int64_t pow10(int e) {
  if (e > 18)
    throw std::invalid_argument("exponent out of range");
  std::int64_t p = 1;
  while (e-- > 0)
    p *= 10;
  return p;
}

} // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash), whole);
    const auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    Rational r(num, den);
    return negative ? -r : r;
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    exponent = static_cast<int>(parse_int(exp_text, whole));
    if (exp_negative)
      exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
  const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
  Rational r = Rational(ip) + Rational(fp, pow10(static_cast<int>(frac_part.size())));
  if (exponent > 0)
    r *= pow10(exponent);
  else if (exponent < 0)
    r /= pow10(-exponent);
  return negative ? -r : r;
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal(const Rational& r, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, to_double(r));
  return buf;
}

std::int64_t floor(const Rational& r) {
  const auto n = r.numerator();
  const auto d = r.denominator(); // always positive
  auto q = n / d;
  if (n % d != 0 && n < 0)
    --q;
  return q;
}

std::int64_t lcm_of_denominators(std::int64_t acc, const Rational& r) {
  return std::lcm(acc, r.denominator());
}

} // namespace ltlf
