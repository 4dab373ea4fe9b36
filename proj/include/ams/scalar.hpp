// Probability scalars under a selectable arithmetic policy.
//
// A Scalar is either an exact rational (GMP) or an IEEE double. Exact values
// combine with anything; as soon as one operand is a double the result is a
// double. Models are converted wholesale with to_mode(), so a computation runs
// entirely in one policy apart from integer constants.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ams {

enum class Arith { exact, floating };

/// Absolute tolerance used by every probability comparison in float mode.
inline constexpr double kFloatTolerance = 1e-9;

Arith parse_arith(std::string_view name);
std::string_view arith_name(Arith mode);
/// Reads AMS_ARITH from the environment; exact when unset.
Arith default_arith();

class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int n) : value_(mpq_class(n)) {}    // NOLINT(google-explicit-constructor)
  Scalar(long n) : value_(mpq_class(n)) {}   // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q) : value_(std::move(q)) { canonical(); }
  explicit Scalar(double d) : value_(d) {}

  static Scalar ratio(long num, long den);
  /// Accepts "p/q", integers and decimal strings ("0.25", "1e-3"). Decimal
  /// strings are converted exactly; in float mode the result is rounded.
  static Scalar parse(std::string_view text, Arith mode = Arith::exact);

  bool exact() const { return std::holds_alternative<mpq_class>(value_); }
  double to_double() const;
  /// Only valid when exact().
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  Scalar to_mode(Arith mode) const;

  bool is_zero() const;
  bool is_one() const;
  /// Strictly positive beyond tolerance in float mode.
  bool positive() const;
  bool negative() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  /// Exact equality for two rationals, |a-b| <= kFloatTolerance otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

  Scalar abs() const;

  /// "num/den" (or "num" for integers) when exact, shortest round-trip
  /// decimal otherwise.
  std::string str() const;

 private:
  void canonical();

  std::variant<mpq_class, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Vector = std::vector<Scalar>;

Scalar sum(const Vector& v);
Vector to_mode(const Vector& v, Arith mode);
bool all_exact(const Vector& v);

}  // namespace ams
