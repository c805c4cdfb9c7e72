#pragma once

#include <cmath>
#include <stdexcept>

namespace benford {

/// A base for significand analysis. Any real b > 1 is admissible; there is
/// nothing special about integers here.
class Base {
 public:
  explicit Base(double b) : b_(b) {
    if (!std::isfinite(b) || b <= 1.0)
      throw std::domain_error("Base: b must be finite and > 1");
    ln_b_ = std::log(b);
  }

  double value() const noexcept { return b_; }
  double ln() const noexcept { return ln_b_; }

 private:
  double b_;
  double ln_b_;
};

/// Log-mantissas within this distance of an integer are snapped onto the
/// seam so that significands honor [1, b) exactly.
inline constexpr double kSeamTol = 1e-12;

/// x mod z = x - z*floor(x/z), always in [0, z).
inline double mod_z(double x, double z) {
  if (!std::isfinite(x) || !std::isfinite(z) || z <= 0.0)
    throw std::domain_error("mod_z: requires finite x and z > 0");
  double r = x - z * std::floor(x / z);
  if (r >= z) r -= z;  // rounding of x/z can land exactly on z
  if (r < 0.0) r = 0.0;
  return r;
}

/// Fractional part of log_b(x); equals log_b(significand(x, b)).
inline double log_mantissa(double x, const Base& b) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("log_mantissa: requires finite x > 0");
  double t = std::log(x) / b.ln();
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;
  if (r < kSeamTol || r > 1.0 - kSeamTol) return 0.0;
  return r;
}

/// S_b(x): the unique element of {x*b^k : k integer} lying in [1, b).
inline double significand(double x, const Base& b) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("significand: requires finite x > 0");
  double t = std::log(x) / b.ln();
  double k = std::floor(t);
  double frac = t - k;
  if (frac < kSeamTol || frac > 1.0 - kSeamTol) return 1.0;
  double s = x * std::pow(b.value(), -k);
  if (!std::isfinite(s) || s <= 0.0) s = std::exp(frac * b.ln());
  while (s < 1.0) s *= b.value();
  while (s >= b.value()) s /= b.value();
  return s;
}

/// T_a(u) = a*u mod 1 on the circle. For integer a this commutes with
/// reduction mod 1; for non-integer a it does not.
inline double scale_mod(double a, double u) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::domain_error("scale_mod: requires finite a > 0");
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("scale_mod: u must lie in [0,1)");
  return mod_z(a * u, 1.0);
}

/// Verifies S_b(x^a) == S_{b^{1/a}}(x)^a to 1e-9 relative accuracy.
inline bool power_base_identity_check(double x, const Base& b, double a) {
  if (!std::isfinite(x) || x <= 0.0 || !std::isfinite(a) || a <= 0.0)
    throw std::domain_error("power_base_identity_check: requires x > 0 and a > 0");
  double xa = std::pow(x, a);
  if (!std::isfinite(xa))
    throw std::range_error("power_base_identity_check: x^a is not representable");
  double lhs = significand(xa, b);
  double rhs = std::pow(significand(x, Base(std::pow(b.value(), 1.0 / a))), a);
  return std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(lhs), std::abs(rhs));
}

}  // namespace benford
