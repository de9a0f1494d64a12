#include "fairdiv/rational.hpp"

#include <cctype>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {
namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (const char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  return mpz_class(std::string(text), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) ||
      den.front() == '-' || den.front() == '+') {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  mpz_class d = parse_integer(den);
  if (d == 0) {
    throw ParseError("zero denominator: '" + std::string(text) + "'");
  }
  Rational r(parse_integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational reduced = value;
  reduced.canonicalize();
  return reduced.get_str(10);
}

std::string to_decimal(const Rational& value, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // Round half away from zero.
  const Rational scaled = abs(value) * scale;
  mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) /
                (scaled.get_den() * 2);
  std::string body = q.get_str(10);
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (value < 0 && q != 0) body.insert(0, "-");
  return body;
}

}  // namespace fairdiv
