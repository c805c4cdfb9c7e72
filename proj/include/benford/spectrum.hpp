#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "benford/conformance.hpp"

namespace benford {

// ---------------------------------------------------------------------------
// Characteristic function of ln X, the object Whittaker's criterion
// quantifies over: b is a Benford base for X exactly when phi_{ln X}
// vanishes at every 2*pi*n/ln(b).
// ---------------------------------------------------------------------------
class LogCf {
 public:
  using CfFn = std::function<std::complex<double>(double)>;

  static LogCf empirical(std::vector<double> ln_data) {
    if (ln_data.empty()) throw std::domain_error("LogCf: empty sample");
    LogCf c;
    c.ln_data_ = std::move(ln_data);
    return c;
  }

  /// ln-samples of a positive dataset.
  static LogCf from_positive_data(std::span<const double> data) {
    std::vector<double> ln(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!(data[i] > 0.0) || !std::isfinite(data[i]))
        throw std::domain_error("LogCf: data must be positive and finite");
      ln[i] = std::log(data[i]);
    }
    return empirical(std::move(ln));
  }

  static LogCf analytic(CfFn cf) {
    if (!cf) throw std::domain_error("LogCf: null characteristic function");
    LogCf c;
    c.cf_ = std::move(cf);
    return c;
  }

  bool is_empirical() const noexcept { return !ln_data_.empty(); }
  std::size_t sample_count() const noexcept { return ln_data_.size(); }

  std::complex<double> operator()(double t) const {
    if (!is_empirical()) return cf_(t);
    std::complex<double> acc{0.0, 0.0};
    for (double lx : ln_data_) acc += std::polar(1.0, t * lx);
    return acc / static_cast<double>(ln_data_.size());
  }

  /// max_{1<=n<=n_max} |phi(n*t1)| in one pass over the sample.
  double max_abs_at_multiples(double t1, int n_max) const {
    if (!is_empirical()) {
      double r = 0.0;
      for (int n = 1; n <= n_max; ++n) r = std::max(r, std::abs(cf_(n * t1)));
      return r;
    }
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(n_max) + 1);
    for (double lx : ln_data_) {
      std::complex<double> z = std::polar(1.0, t1 * lx);
      std::complex<double> p = z;
      acc[1] += p;
      for (int n = 2; n <= n_max; ++n) {
        p *= z;
        acc[n] += p;
      }
    }
    double r = 0.0;
    const double m = static_cast<double>(ln_data_.size());
    for (int n = 1; n <= n_max; ++n) r = std::max(r, std::abs(acc[n]) / m);
    return r;
  }

  /// Noise floor for detection: 4/sqrt(m) empirically, 1e-9 analytically.
  double default_tol() const {
    if (is_empirical()) return 4.0 / std::sqrt(static_cast<double>(ln_data_.size()));
    return 1e-9;
  }

 private:
  LogCf() = default;
  std::vector<double> ln_data_;
  CfFn cf_;
};

/// Whittaker residual r(b) = max_{1<=n<=n_max} |phi_{ln X}(2*pi*n/ln b)|;
/// zero (within tolerance) iff b is a Benford base.
inline double whittaker_residual(const LogCf& cf, const Base& b, int n_max) {
  if (n_max < 1) throw std::domain_error("whittaker_residual: n_max must be >= 1");
  return cf.max_abs_at_multiples(kTwoPi / b.ln(), n_max);
}

// ---------------------------------------------------------------------------
// Scanned Benford spectrum.
// ---------------------------------------------------------------------------
struct SpectrumEstimate {
  std::vector<double> grid;       // bases scanned
  std::vector<double> residuals;  // r(b) per grid point
  std::vector<double> detected;   // refined zeros, descending
  double upper_bound = std::numeric_limits<double>::infinity();
  int n_max = 8;
  double tol = 1e-9;

  bool contains(double b, double rel_tol = 1e-6) const {
    for (double d : detected)
      if (std::abs(d - b) <= rel_tol * std::max(1.0, std::abs(b))) return true;
    return false;
  }
};

namespace detail {

/// Golden-section minimum of f on [lo, hi] to absolute x-tolerance.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol_x) {
  constexpr double inv_phi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c), fd = f(d);
  while (b - a > tol_x) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Hunts for the first r > 0 where |phi| - tol crosses zero, stepping
/// outward and resolving the crossing by bisection (plateaus, e.g. the Fejer
/// triangle) or by golden-section refinement of a bracketed local minimum
/// (transversal zeros, whose sub-tol window is far narrower than any step).
/// |phi| > tol on (0, r), so the spectrum is bounded by exp(2*pi/r).
/// Returns +inf when |phi| never reaches tol (degenerate ln X).
inline double spectrum_upper_bound(const LogCf& cf, double tol = 0.0,
                                   double t_max = 200.0, double step = 0.01) {
  if (tol <= 0.0) tol = cf.default_tol();
  auto mag = [&](double t) { return std::abs(cf(t)); };
  double t_prev = step;
  double f_prev2 = mag(step);
  if (f_prev2 <= tol) return std::exp(kTwoPi / step);
  double f_prev = f_prev2;
  double t_prev2 = t_prev;
  for (double t = 2.0 * step; t <= t_max; t += step) {
    double f = mag(t);
    if (f <= tol) {
      double lo = t - step, hi = t;
      for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mag(mid) <= tol)
          hi = mid;
        else
          lo = mid;
      }
      return std::exp(kTwoPi / (0.5 * (lo + hi)));
    }
    if (t > 2.0 * step && f_prev <= f_prev2 && f_prev <= f) {
      double t_star = detail::golden_min(mag, t_prev2, t, 1e-13 * t);
      if (mag(t_star) <= tol) return std::exp(kTwoPi / t_star);
    }
    t_prev2 = t_prev;
    f_prev2 = f_prev;
    t_prev = t;
    f_prev = f;
  }
  return std::numeric_limits<double>::infinity();
}

/// Scans r(b) over a grid uniform in ln ln b (geometric in the frequency
/// 2*pi/ln b, where the candidate zeros are evenly spread), then refines
/// each below-threshold local minimum by golden-section search and keeps
/// those whose refined residual is <= tol.
inline SpectrumEstimate scan_spectrum(const LogCf& cf, double b_lo, double b_hi,
                                      int steps, int n_max = 8, double tol = 0.0,
                                      int workers = 1) {
  if (!(b_lo > 1.0) || !(b_hi > b_lo))
    throw std::domain_error("scan_spectrum: requires 1 < b_lo < b_hi");
  if (steps < 2) throw std::domain_error("scan_spectrum: steps must be >= 2");
  if (tol <= 0.0) tol = cf.default_tol();

  SpectrumEstimate est;
  est.n_max = n_max;
  est.tol = tol;
  const double u_lo = std::log(std::log(b_lo));
  const double u_hi = std::log(std::log(b_hi));
  est.grid.resize(static_cast<std::size_t>(steps));
  est.residuals.assign(static_cast<std::size_t>(steps), 0.0);
  for (int i = 0; i < steps; ++i) {
    double u = u_lo + (u_hi - u_lo) * i / (steps - 1);
    est.grid[static_cast<std::size_t>(i)] = std::exp(std::exp(u));
  }

  auto resid_at_base = [&](double b) { return whittaker_residual(cf, Base(b), n_max); };
  auto eval_range = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      est.residuals[static_cast<std::size_t>(i)] =
          resid_at_base(est.grid[static_cast<std::size_t>(i)]);
  };
  if (workers < 2) {
    eval_range(0, steps);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(eval_range, steps * w / workers, steps * (w + 1) / workers);
    for (auto& t : pool) t.join();
  }

  // local minima (one-sided at the ends), refined in u-coordinates
  auto resid_at_u = [&](double u) { return resid_at_base(std::exp(std::exp(u))); };
  const double du = (u_hi - u_lo) / (steps - 1);
  const double refine_tol = cf.is_empirical() ? 1e-6 : 1e-10;
  for (int i = 0; i < steps; ++i) {
    double r = est.residuals[static_cast<std::size_t>(i)];
    bool left_ok = i == 0 || est.residuals[static_cast<std::size_t>(i - 1)] >= r;
    bool right_ok = i == steps - 1 || est.residuals[static_cast<std::size_t>(i + 1)] > r;
    if (!(left_ok && right_ok)) continue;
    double u_c = u_lo + du * i;
    double u_a = std::max(u_lo, u_c - du);
    double u_b = std::min(u_hi, u_c + du);
    double u_star = detail::golden_min(resid_at_u, u_a, u_b, refine_tol);
    if (resid_at_u(u_star) <= tol)
      est.detected.push_back(std::exp(std::exp(u_star)));
  }
  std::sort(est.detected.begin(), est.detected.end(), std::greater<>());
  // merge refinements that converged to the same zero
  std::vector<double> dedup;
  for (double b : est.detected)
    if (dedup.empty() || std::abs(dedup.back() - b) > 1e-7 * std::max(1.0, b))
      dedup.push_back(b);
  est.detected = std::move(dedup);
  est.upper_bound = spectrum_upper_bound(cf, tol);
  return est;
}

/// Verifies the n-th-root closure of the spectrum at a detected base:
/// r(b^{1/k}) <= tol for k = 2..k_max.
inline bool root_closure_check(const LogCf& cf, const SpectrumEstimate& est, double b,
                               int k_max) {
  if (!est.contains(b))
    throw std::domain_error("root_closure_check: base not detected in the estimate");
  for (int k = 2; k <= k_max; ++k) {
    double root = std::pow(b, 1.0 / k);
    if (root <= 1.0) return false;
    if (whittaker_residual(cf, Base(root), est.n_max) > est.tol) return false;
  }
  return true;
}

/// Product-union law B_X u B_Y subset B_{XY}: when either factor passes the
/// residual test at b, the elementwise product must as well (up to CF
/// noise). Vacuously true when neither factor is b-Benford.
inline bool union_check(std::span<const double> x_data, std::span<const double> y_data,
                        const Base& b, int n_max, double tol) {
  if (x_data.size() != y_data.size())
    throw std::domain_error("union_check: samples must have equal length");
  auto cf_x = LogCf::from_positive_data(x_data);
  auto cf_y = LogCf::from_positive_data(y_data);
  double rx = whittaker_residual(cf_x, b, n_max);
  double ry = whittaker_residual(cf_y, b, n_max);
  if (rx > tol && ry > tol) return true;
  std::vector<double> ln_prod(x_data.size());
  for (std::size_t i = 0; i < x_data.size(); ++i)
    ln_prod[i] = std::log(x_data[i]) + std::log(y_data[i]);
  double rp = whittaker_residual(LogCf::empirical(std::move(ln_prod)), b, n_max);
  return rp <= tol + cf_noise(x_data.size());
}

}  // namespace benford
