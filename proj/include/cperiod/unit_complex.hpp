#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace cperiod {

using complex = std::complex<double>;

/// Largest admissible deviation of |c| from 1.
inline constexpr double kUnitTolerance = 1e-12;

/// Multiplier c on the unit circle, tagged with the arithmetic nature of arg(c)/π.
///
/// A rational tag (p, q) means arg(c) = πp/q with gcd(|p|, q) = 1; p = 0 is
/// only allowed with q = 1 (c = 1). An irrational tag stores φ with
/// c = exp(iπφ). Irrationality is the caller's declaration: no floating point
/// test can decide it.
class UnitComplex {
 public:
  enum class ArgKind { Rational, Irrational };

  static UnitComplex rational(std::int64_t p, std::int64_t q);
  static UnitComplex irrational(double phi);
  /// c = exp(iθ), tagged irrational with φ = θ/π.
  static UnitComplex from_angle(double theta);
  static UnitComplex one() { return rational(0, 1); }

  /// Validates an externally supplied value against its declared tag.
  /// Throws InvalidMultiplier when ||value| - 1| > kUnitTolerance or the value
  /// disagrees with the tag by more than kUnitTolerance.
  static UnitComplex checked(complex value, ArgKind kind, std::int64_t p, std::int64_t q, double phi);

  complex value() const noexcept { return value_; }
  ArgKind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == ArgKind::Rational; }
  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  /// arg(c)/π; exact p/q for rational tags.
  double phi() const noexcept { return phi_; }
  bool is_one() const noexcept { return is_rational() && p_ == 0; }

  /// c^m with the tag carried along (m may be negative).
  UnitComplex pow(std::int64_t m) const;
  UnitComplex inverse() const { return pow(-1); }

  std::string to_string() const;

 private:
  UnitComplex(complex value, ArgKind kind, std::int64_t p, std::int64_t q, double phi)
      : value_(value), kind_(kind), p_(p), q_(q), phi_(phi) {}

  complex value_;
  ArgKind kind_;
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
  double phi_ = 0.0;
};

/// Throws InvalidMultiplier unless ||z| - 1| <= kUnitTolerance.
void require_unit_modulus(complex z);

}  // namespace cperiod
