#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace ricci {

/// Exact rational arithmetic for certificates. GMP-backed; beware that
/// `auto` on an mpq expression captures an expression template, so results
/// are always materialized into `Rational` explicitly.
using Rational = mpq_class;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  // Marginal and normalization tolerance for float mode.
  static constexpr double tolerance = 1e-12;
  // Residual capacities below this are treated as exhausted by the flow solver.
  static constexpr double flow_epsilon = 1e-15;
  static constexpr const char* name = "float";
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr double tolerance = 0.0;
  static constexpr const char* name = "rational";
};

template <class T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, Rational>;

inline double to_double(double x) noexcept { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

template <Scalar T>
T scalar_from(const Rational& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x.get_d();
  } else {
    return x;
  }
}

template <Scalar T>
T scalar_from_int(long value) {
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(value);
  } else {
    return Rational(value);
  }
}

/// Strictly positive, with the float-mode flow epsilon as the zero threshold.
inline bool is_positive(double x) noexcept { return x > ScalarTraits<double>::flow_epsilon; }
inline bool is_positive(const Rational& x) { return sgn(x) > 0; }

/// num/den in lowest terms. mpq's two-argument constructor skips this step,
/// and every later operation assumes canonical form.
inline Rational fraction(long num, unsigned long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "3/10", "0.3", "1e-2" or "7" into an exact rational. Decimal input
/// is read as the exact decimal fraction it denotes, not the nearest double.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);

/// Shortest round-trip decimal for doubles ("%.17g" trimmed).
std::string format_double(double x);

}  // namespace ricci
