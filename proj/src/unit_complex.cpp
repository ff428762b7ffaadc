#include "cperiod/unit_complex.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cperiod/errors.hpp"

namespace cperiod {
namespace {

// exp(iπp/q) evaluated from the reduced angle so large p stay accurate.
complex rational_value(std::int64_t p, std::int64_t q) {
  return std::polar(1.0, std::numbers::pi * static_cast<double>(p) / static_cast<double>(q));
}

// Brings p into (-q, q]; arg is only defined modulo 2π.
std::int64_t normalize_numerator(std::int64_t p, std::int64_t q) {
  std::int64_t r = p % (2 * q);
  if (r <= -q) r += 2 * q;
  if (r > q) r -= 2 * q;
  return r;
}

}  // namespace

void require_unit_modulus(complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(std::abs(z) - 1.0) > kUnitTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "multiplier must satisfy |c| = 1 (got |c| = " << std::abs(z) << ")";
    throw InvalidMultiplier(os.str());
  }
}

UnitComplex UnitComplex::rational(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw InvalidMultiplier("rational multiplier needs q >= 1");
  if (p == 0 && q != 1) throw InvalidMultiplier("p = 0 is only allowed with q = 1 (c = 1)");
  if (std::gcd(p < 0 ? -p : p, q) != 1) throw InvalidMultiplier("rational multiplier needs gcd(|p|, q) = 1");
  const std::int64_t pn = normalize_numerator(p, q);
  return UnitComplex(rational_value(pn, q), ArgKind::Rational, pn, q,
                     static_cast<double>(pn) / static_cast<double>(q));
}

UnitComplex UnitComplex::irrational(double phi) {
  if (!std::isfinite(phi) || phi == 0.0) throw InvalidMultiplier("irrational multiplier needs finite nonzero phi");
  return UnitComplex(std::polar(1.0, std::numbers::pi * phi), ArgKind::Irrational, 0, 1, phi);
}

UnitComplex UnitComplex::from_angle(double theta) { return irrational(theta / std::numbers::pi); }

UnitComplex UnitComplex::checked(complex value, ArgKind kind, std::int64_t p, std::int64_t q, double phi) {
  require_unit_modulus(value);
  UnitComplex c = kind == ArgKind::Rational ? rational(p, q) : irrational(phi);
  if (std::abs(c.value() - value) > kUnitTolerance) {
    throw InvalidMultiplier("multiplier value disagrees with its declared argument");
  }
  return c;
}

UnitComplex UnitComplex::pow(std::int64_t m) const {
  if (kind_ == ArgKind::Irrational) {
    // φ·m is only needed modulo 2.
    const double phi = std::fmod(phi_ * static_cast<double>(m), 2.0);
    if (phi == 0.0) return one();
    return irrational(phi);
  }
  std::int64_t p = normalize_numerator(p_ * (m % (2 * q_)), q_);
  std::int64_t q = q_;
  if (p == 0) return one();
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  return rational(p / g, q / g);
}

std::string UnitComplex::to_string() const {
  std::ostringstream os;
  os.precision(17);
  if (is_rational()) {
    os << "exp(i*pi*" << p_ << "/" << q_ << ")";
  } else {
    os << "exp(i*pi*" << phi_ << ")";
  }
  return os.str();
}

}  // namespace cperiod
