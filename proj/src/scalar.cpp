#include "ams/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "ams/errors.hpp"

namespace ams {

Arith parse_arith(std::string_view name) {
  if (name == "exact" || name == "rational") return Arith::exact;
  if (name == "float" || name == "floating") return Arith::floating;
  throw ParseError("unknown arithmetic mode '" + std::string(name) + "'");
}

std::string_view arith_name(Arith mode) {
  return mode == Arith::exact ? "exact" : "float";
}

Arith default_arith() {
  const char* env = std::getenv("AMS_ARITH");
  if (env == nullptr || *env == '\0') return Arith::exact;
  return parse_arith(env);
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw InvariantViolation("zero denominator");
  return Scalar(mpq_class(num, den));
}

namespace {

// Converts a decimal literal such as "-12.5e-3" to an exact rational.
mpq_class parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long exponent = 0;
  bool seen_point = false;
  bool any_digit = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("malformed number '" + std::string(text) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') {
      throw ParseError("malformed number '" + std::string(text) + "'");
    }
    long e = 0;
    auto rest = s.substr(i + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw ParseError("malformed exponent in '" + std::string(text) + "'");
    }
    exponent += e;
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class q = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

}  // namespace

Scalar Scalar::parse(std::string_view text, Arith mode) {
  if (text.empty()) throw ParseError("empty number");
  mpq_class q;
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    try {
      mpz_class num(std::string(text.substr(0, slash)), 10);
      mpz_class den(std::string(text.substr(slash + 1)), 10);
      if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
      q = mpq_class(num, den);
      q.canonicalize();
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
  } else {
    q = parse_decimal(text);
    if (mode == Arith::floating) return Scalar(std::strtod(std::string(text).c_str(), nullptr));
  }
  Scalar s(std::move(q));
  return mode == Arith::exact ? s : s.to_mode(Arith::floating);
}

double Scalar::to_double() const {
  if (auto* d = std::get_if<double>(&value_)) return *d;
  return std::get<mpq_class>(value_).get_d();
}

Scalar Scalar::to_mode(Arith mode) const {
  if (mode == Arith::floating) return Scalar(to_double());
  if (exact()) return *this;
  // Exact image of the binary double.
  mpq_class q(std::get<double>(value_));
  return Scalar(std::move(q));
}

void Scalar::canonical() {
  if (auto* q = std::get_if<mpq_class>(&value_)) q->canonicalize();
}

bool Scalar::is_zero() const {
  if (auto* d = std::get_if<double>(&value_)) return std::fabs(*d) <= kFloatTolerance;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const { return *this == Scalar(1); }

bool Scalar::positive() const {
  if (auto* d = std::get_if<double>(&value_)) return *d > kFloatTolerance;
  return sgn(std::get<mpq_class>(value_)) > 0;
}

bool Scalar::negative() const {
  if (auto* d = std::get_if<double>(&value_)) return *d < -kFloatTolerance;
  return sgn(std::get<mpq_class>(value_)) < 0;
}

namespace {

template <class QOp, class DOp>
void combine(std::variant<mpq_class, double>& lhs,
             const std::variant<mpq_class, double>& rhs, QOp qop, DOp dop) {
  auto* lq = std::get_if<mpq_class>(&lhs);
  auto* rq = std::get_if<mpq_class>(&rhs);
  if (lq != nullptr && rq != nullptr) {
    qop(*lq, *rq);
    return;
  }
  double a = lq != nullptr ? lq->get_d() : std::get<double>(lhs);
  double b = rq != nullptr ? rq->get_d() : std::get<double>(rhs);
  lhs = dop(a, b);
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  combine(value_, o.value_, [](mpq_class& a, const mpq_class& b) { a += b; },
          [](double a, double b) { return a + b; });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  combine(value_, o.value_, [](mpq_class& a, const mpq_class& b) { a -= b; },
          [](double a, double b) { return a - b; });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  combine(value_, o.value_, [](mpq_class& a, const mpq_class& b) { a *= b; },
          [](double a, double b) { return a * b; });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.exact() && sgn(o.rational()) == 0) throw InvariantViolation("division by zero");
  combine(value_, o.value_, [](mpq_class& a, const mpq_class& b) { a /= b; },
          [](double a, double b) { return a / b; });
  return *this;
}

Scalar Scalar::operator-() const {
  if (auto* d = std::get_if<double>(&value_)) return Scalar(-*d);
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.exact() && b.exact()) return a.rational() == b.rational();
  return std::fabs(a.to_double() - b.to_double()) <= kFloatTolerance;
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.exact() && b.exact()) return a.rational() < b.rational();
  return a.to_double() < b.to_double();
}

Scalar Scalar::abs() const { return negative() ? -*this : *this; }

std::string Scalar::str() const {
  if (auto* d = std::get_if<double>(&value_)) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *d);
    return std::string(buf, ptr);
  }
  const auto& q = std::get<mpq_class>(value_);
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar sum(const Vector& v) {
  Scalar total;
  for (const auto& x : v) total += x;
  return total;
}

Vector to_mode(const Vector& v, Arith mode) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_mode(mode));
  return out;
}

bool all_exact(const Vector& v) {
  for (const auto& x : v) {
    if (!x.exact()) return false;
  }
  return true;
}

}  // namespace ams
