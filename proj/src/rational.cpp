#include "tropmed/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tropmed {

namespace {

[[noreturn]] void bad(std::string_view text, const char* why) {
  throw std::invalid_argument("invalid rational literal '" + std::string(text) +
                              "': " + why);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int digits_to_int(std::string_view digits) {
  // strip leading zeros so the string constructor cannot see an octal prefix
  size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Int(0);
  return Int(std::string(digits.substr(first)));
}

Int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad(whole, "expected an integer");
  Int value = digits_to_int(s);
  if (negative) value = -value;
  return value;
}

Int pow10(unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= 10;
  return r;
}

Rat parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    Int e = parse_integer(s.substr(epos + 1), whole);
    if (e > 100000 || e < -100000) bad(whole, "exponent out of range");
    exponent = static_cast<long>(e);
    s.remove_suffix(s.size() - epos);
  }

  std::string digits;
  long frac_digits = 0;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(s)) bad(whole, "expected digits");
    digits = std::string(s);
  } else {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(whole, "lone decimal point");
    if (!int_part.empty() && !all_digits(int_part)) bad(whole, "expected digits");
    if (!frac_part.empty() && !all_digits(frac_part)) bad(whole, "expected digits");
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  }
  if (digits.empty()) bad(whole, "no digits");

  Rat value{digits_to_int(digits)};
  long net = exponent - frac_digits;
  if (net > 0)
    value *= pow10(static_cast<unsigned>(net));
  else if (net < 0)
    value /= pow10(static_cast<unsigned>(-net));
  if (negative) value = -value;
  return value;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad(text, "empty");

  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    Int num = parse_integer(s.substr(0, slash), text);
    Int den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) bad(text, "zero denominator");
    return Rat(num, den);
  }
  if (s.find('.') != std::string_view::npos ||
      s.find_first_of("eE") != std::string_view::npos)
    return parse_decimal(s, text);
  return Rat(parse_integer(s, text));
}

std::string format_rational(const Rat& value) {
  Int num = numerator(value);
  Int den = denominator(value);
  if (den == 1) return num.str();

  // Split off the 2- and 5-parts of the denominator.
  Int rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  unsigned digits = std::max(twos, fives);
  Int scaled = num * pow10(digits) / den;
  bool negative = scaled < 0;
  std::string body = Int(abs(scaled)).str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  while (body.back() == '0') body.pop_back();
  if (body.back() == '.') body.pop_back();
  return negative ? "-" + body : body;
}

std::string format_vector(const std::vector<Rat>& values,
                          const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_rational(values[i]);
  }
  return out;
}

}  // namespace tropmed
