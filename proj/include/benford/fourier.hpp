#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "benford/distributions.hpp"

namespace benford {

// ---------------------------------------------------------------------------
// Fourier coefficients phi(2*pi*n) = E e^{2*pi*i*n*X} of a distribution on
// [0,1). They determine the distribution uniquely; phi(-2*pi*n) is the
// conjugate of coeffs[n], so only n >= 0 is stored.
// ---------------------------------------------------------------------------
struct FourierSpectrum {
  enum class Source { empirical, analytic };

  int n_max = 0;
  std::vector<std::complex<double>> coeffs;  // n = 0..n_max, coeffs[0] == 1
  std::optional<double> mean;                // E X; empty when unrecoverable
  Source source = Source::analytic;
  std::size_t sample_count = 0;              // m for empirical spectra

  /// Noise floor: 4/sqrt(m) for empirical spectra, 1e-9 for analytic ones.
  double default_tol() const {
    if (source == Source::empirical && sample_count > 0)
      return 4.0 / std::sqrt(static_cast<double>(sample_count));
    return 1e-9;
  }
};

/// coeffs[n] = (1/m) * sum_j exp(2*pi*i*n*x_j). The sample may be split
/// across workers; partial sums are combined in fixed chunk order, so the
/// result is deterministic per (sample, worker count), with workers == 1 the
/// reference.
inline FourierSpectrum empirical_spectrum(const UnitDistribution& u, int n_max,
                                          int workers = 1) {
  if (!u.is_empirical())
    throw std::domain_error("empirical_spectrum: requires an empirical distribution");
  if (n_max < 1) throw std::domain_error("empirical_spectrum: n_max must be >= 1");
  const auto& xs = u.samples();
  const std::size_t m = xs.size();
  if (workers < 1) workers = 1;
  if (static_cast<std::size_t>(workers) > m) workers = static_cast<int>(m);

  auto accumulate_chunk = [&](std::size_t lo, std::size_t hi,
                              std::vector<std::complex<double>>& acc) {
    for (std::size_t j = lo; j < hi; ++j) {
      double w = kTwoPi * xs[j];
      std::complex<double> z{std::cos(w), std::sin(w)};
      std::complex<double> p = z;
      acc[1] += p;
      for (int n = 2; n <= n_max; ++n) {
        p *= z;
        acc[n] += p;
      }
    }
  };

  std::vector<std::vector<std::complex<double>>> partial(
      static_cast<std::size_t>(workers),
      std::vector<std::complex<double>>(static_cast<std::size_t>(n_max) + 1));
  if (workers == 1) {
    accumulate_chunk(0, m, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      std::size_t lo = m * static_cast<std::size_t>(w) / workers;
      std::size_t hi = m * (static_cast<std::size_t>(w) + 1) / workers;
      pool.emplace_back(accumulate_chunk, lo, hi, std::ref(partial[w]));
    }
    for (auto& t : pool) t.join();
  }

  FourierSpectrum s;
  s.n_max = n_max;
  s.source = FourierSpectrum::Source::empirical;
  s.sample_count = m;
  s.mean = u.mean();
  s.coeffs.assign(static_cast<std::size_t>(n_max) + 1, {0.0, 0.0});
  s.coeffs[0] = {1.0, 0.0};
  for (int n = 1; n <= n_max; ++n) {
    std::complex<double> sum{0.0, 0.0};
    for (int w = 0; w < workers; ++w) sum += partial[w][n];
    s.coeffs[n] = sum / static_cast<double>(m);
  }
  return s;
}

/// Spectrum from a closed-form characteristic function.
inline FourierSpectrum analytic_spectrum(
    const std::function<std::complex<double>(double)>& cf, double mean, int n_max) {
  if (!cf) throw std::domain_error("analytic_spectrum: null characteristic function");
  if (n_max < 1) throw std::domain_error("analytic_spectrum: n_max must be >= 1");
  FourierSpectrum s;
  s.n_max = n_max;
  s.source = FourierSpectrum::Source::analytic;
  s.mean = mean;
  s.coeffs.assign(static_cast<std::size_t>(n_max) + 1, {0.0, 0.0});
  s.coeffs[0] = {1.0, 0.0};
  for (int n = 1; n <= n_max; ++n) {
    std::complex<double> v = cf(kTwoPi * n);
    if (std::abs(v) > 1.0 + 1e-9)
      throw std::domain_error("analytic_spectrum: |phi| exceeds 1");
    s.coeffs[n] = v;
  }
  return s;
}

/// Fourier coefficient of the CDF: F_hat(n) = (phi(-2*pi*n) - 1)/(2*pi*i*n)
/// for n != 0 and F_hat(0) = 1 - EX.
inline std::complex<double> cdf_coefficient(const FourierSpectrum& s, int n) {
  if (std::abs(n) > s.n_max)
    throw std::range_error("cdf_coefficient: |n| exceeds n_max");
  if (n == 0) {
    if (!s.mean) throw std::domain_error("cdf_coefficient: mean unavailable");
    return {1.0 - *s.mean, 0.0};
  }
  std::complex<double> phi_neg = std::conj(s.coeffs[static_cast<std::size_t>(std::abs(n))]);
  if (n < 0) phi_neg = std::conj(phi_neg);
  // phi(-2*pi*n) for the requested signed n
  return (phi_neg - std::complex<double>{1.0, 0.0}) /
         std::complex<double>{0.0, kTwoPi * n};
}

/// Jordan partial sum of the CDF series at x in (0,1); converges to the jump
/// midpoint (F(x) + F(x-))/2. Conjugate pairs are folded into real
/// cosine/sine terms, so the result is real by construction.
inline double reconstruct_cdf(const FourierSpectrum& s, double x, int terms) {
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("reconstruct_cdf: x must lie in (0,1)");
  if (terms < 1 || terms > s.n_max)
    throw std::range_error("reconstruct_cdf: terms must lie in [1, n_max]");
  if (!s.mean) throw std::domain_error("reconstruct_cdf: mean unavailable");
  double acc = 1.0 - *s.mean;
  for (int n = 1; n <= terms; ++n) {
    std::complex<double> c = cdf_coefficient(s, n);
    double ang = kTwoPi * n * x;
    // c*e^{i ang} + conj(c)*e^{-i ang} = 2*(Re c * cos - Im c * sin)
    acc += 2.0 * (c.real() * std::cos(ang) - c.imag() * std::sin(ang));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Period detection: phi(2*pi*n) = 0 off the multiples of N exactly when
// F(x + k/N) = F(x) + k/N, i.e. the distribution is an equidistributed comb.
// ---------------------------------------------------------------------------
struct PeriodResult {
  enum class Kind { uniform, periodic, aperiodic };
  Kind kind = Kind::aperiodic;
  int period = 1;  // meaningful only when kind == periodic

  bool is_uniform() const noexcept { return kind == Kind::uniform; }
  bool is_periodic() const noexcept { return kind == Kind::periodic; }
};

/// Largest N <= n_max/2 with |coeffs[n]| <= tol at every n not a multiple of
/// N. All coefficients below tol reports "uniform"; no N >= 2 qualifying
/// reports "aperiodic".
inline PeriodResult detect_period(const FourierSpectrum& s, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("detect_period: tol must be > 0");
  bool all_small = true;
  for (int n = 1; n <= s.n_max; ++n)
    if (std::abs(s.coeffs[static_cast<std::size_t>(n)]) > tol) {
      all_small = false;
      break;
    }
  if (all_small) return {PeriodResult::Kind::uniform, 1};
  for (int N = s.n_max / 2; N >= 2; --N) {
    bool ok = true;
    for (int n = 1; n <= s.n_max; ++n) {
      if (n % N == 0) continue;
      if (std::abs(s.coeffs[static_cast<std::size_t>(n)]) > tol) {
        ok = false;
        break;
      }
    }
    if (ok) return {PeriodResult::Kind::periodic, N};
  }
  return {PeriodResult::Kind::aperiodic, 1};
}

/// Coefficients of (X + Y) mod 1 for independent X, Y: the elementwise
/// product. The mean of the reduced sum is not recoverable from the inputs,
/// so it is left empty.
inline FourierSpectrum product_spectrum(const FourierSpectrum& sx,
                                        const FourierSpectrum& sy) {
  if (sx.n_max != sy.n_max)
    throw std::domain_error("product_spectrum: mismatched n_max");
  FourierSpectrum s;
  s.n_max = sx.n_max;
  s.coeffs.resize(sx.coeffs.size());
  for (std::size_t n = 0; n < sx.coeffs.size(); ++n)
    s.coeffs[n] = sx.coeffs[n] * sy.coeffs[n];
  s.coeffs[0] = {1.0, 0.0};
  s.mean = std::nullopt;
  bool emp = sx.source == FourierSpectrum::Source::empirical ||
             sy.source == FourierSpectrum::Source::empirical;
  s.source = emp ? FourierSpectrum::Source::empirical : FourierSpectrum::Source::analytic;
  if (emp) {
    std::size_t a = sx.sample_count, b = sy.sample_count;
    s.sample_count = a == 0 ? b : (b == 0 ? a : std::min(a, b));
  }
  return s;
}

/// |phi(2*pi*n)| >= 1 - tol signals support on a lattice of spacing 1/n
/// shifted by arg(phi(2*pi*n))/(2*pi).
inline bool lattice_test(const FourierSpectrum& s, int n, double tol) {
  if (n < 1 || n > s.n_max) throw std::domain_error("lattice_test: n out of range");
  return std::abs(s.coeffs[static_cast<std::size_t>(n)]) >= 1.0 - tol;
}

/// The lattice shift theta in [0,1) detected at frequency n.
inline double lattice_shift(const FourierSpectrum& s, int n) {
  if (n < 1 || n > s.n_max) throw std::domain_error("lattice_shift: n out of range");
  double th = std::arg(s.coeffs[static_cast<std::size_t>(n)]) / kTwoPi;
  return mod_z(th, 1.0);
}

}  // namespace benford
