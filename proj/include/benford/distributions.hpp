#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "benford/modmath.hpp"
#include "benford/rng.hpp"

namespace benford {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

namespace detail {

/// sin(u)/u with the removable singularity filled in.
inline double sinc(double u) {
  if (std::abs(u) < 1e-6) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

/// CF of U[c,d) at t: e^{it(c+d)/2} * sinc(t(d-c)/2).
inline std::complex<double> cf_uniform_interval(double c, double d, double t) {
  double mid = 0.5 * (c + d);
  double half = 0.5 * (d - c);
  return std::polar(sinc(t * half), t * mid);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// X = beta^{U[c,d)} -- the canonical Benford family. Its Benford spectrum is
// exactly {beta^{(d-c)/n} : n = 1, 2, ...}.
// ---------------------------------------------------------------------------
struct UniformExponentVariate {
  Base beta;
  double c;
  double d;

  UniformExponentVariate(double beta_, double c_, double d_)
      : beta(beta_), c(c_), d(d_) {
    if (!std::isfinite(c_) || !std::isfinite(d_) || !(c_ < d_))
      throw std::domain_error("UniformExponentVariate: requires c < d");
  }

  /// CF of log_beta X (which is U[c,d)).
  std::complex<double> cf_log_beta(double t) const {
    return detail::cf_uniform_interval(c, d, t);
  }

  /// CF of ln X (which is U[c ln beta, d ln beta)).
  std::complex<double> cf_ln(double t) const {
    return cf_log_beta(t * beta.ln());
  }
};

/// n independent draws of beta^{U[c,d)}; bit-reproducible for a given seed.
inline std::vector<double> sample_uniform_exponent(const UniformExponentVariate& v,
                                                   std::size_t n,
                                                   std::uint64_t seed) {
  if (n == 0) throw std::domain_error("sample_uniform_exponent: n must be >= 1");
  auto g = rng::make_engine(seed, 0);
  std::vector<double> out(n);
  for (auto& x : out)
    x = std::pow(v.beta.value(), v.c + (v.d - v.c) * rng::uniform01(g));
  return out;
}

/// First k members of the Benford spectrum beta^{(d-c)/n}, descending.
inline std::vector<double> analytic_benford_spectrum(const UniformExponentVariate& v,
                                                     int k) {
  if (k < 1) throw std::domain_error("analytic_benford_spectrum: k must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int n = 1; n <= k; ++n)
    out.push_back(std::pow(v.beta.value(), (v.d - v.c) / n));
  return out;
}

// ---------------------------------------------------------------------------
// Fejer variable: density (1 - cos(ax)) / (pi a x^2), characteristic
// function max(0, 1 - |t|/a). With a = 2*pi/ln(beta), exp(Z) is Benford for
// every base in (1, beta].
// ---------------------------------------------------------------------------
struct FejerVariate {
  double a;

  explicit FejerVariate(double a_) : a(a_) {
    if (!std::isfinite(a_) || a_ <= 0.0)
      throw std::domain_error("FejerVariate: requires a > 0");
  }

  /// The variate whose exponential is Benford on all bases in (1, beta].
  static FejerVariate for_base(double beta) {
    if (!(beta > 1.0)) throw std::domain_error("FejerVariate: requires beta > 1");
    return FejerVariate(kTwoPi / std::log(beta));
  }

  double pdf(double x) const {
    double u = a * std::abs(x);
    if (u < 1e-4) {
      // (1 - cos u)/u^2 = 1/2 - u^2/24 + u^4/720 - ...
      double u2 = u * u;
      return (a / 3.14159265358979323846) * (0.5 - u2 / 24.0 + u2 * u2 / 720.0);
    }
    return (1.0 - std::cos(u)) / (3.14159265358979323846 * a * x * x);
  }

  std::complex<double> cf(double t) const {
    return {std::max(0.0, 1.0 - std::abs(t) / a), 0.0};
  }
};

/// Inverse-CDF sampler for the Fejer density. The CDF is tabulated on a
/// symmetric sinh-warped grid of 2^16 intervals covering |x| <= X_max where
/// the tail mass 2/(pi a X_max) = 1e-6; beyond X_max the asymptotic tail
/// density 1/(pi a x^2) is inverted exactly. Table inversion uses monotone
/// linear interpolation.
class FejerSampler {
 public:
  static constexpr int kIntervals = 1 << 16;

  explicit FejerSampler(const FejerVariate& v) : a_(v.a) {
    const double pi = 3.14159265358979323846;
    x_max_ = 2e6 / (pi * a_);
    tail_ = 1.0 / (pi * a_ * x_max_);
    const double x0 = kTwoPi / a_;  // width of the central lobe
    const double s_max = std::asinh(x_max_ / x0);
    x_.resize(kIntervals + 1);
    for (int i = 0; i <= kIntervals; ++i) {
      double s = s_max * (2.0 * i / kIntervals - 1.0);
      x_[i] = x0 * std::sinh(s);
    }
    x_[kIntervals / 2] = 0.0;
    // per-interval Simpson, then normalize interior mass to 1 - 2*tail
    std::vector<double> seg(kIntervals);
    double total = 0.0;
    for (int i = 0; i < kIntervals; ++i) {
      double lo = x_[i], hi = x_[i + 1];
      double mid = 0.5 * (lo + hi);
      seg[i] = (hi - lo) / 6.0 * (v.pdf(lo) + 4.0 * v.pdf(mid) + v.pdf(hi));
      total += seg[i];
    }
    double scale = (1.0 - 2.0 * tail_) / total;
    cdf_.resize(kIntervals + 1);
    cdf_[0] = tail_;
    for (int i = 0; i < kIntervals; ++i) cdf_[i + 1] = cdf_[i] + seg[i] * scale;
    cdf_[kIntervals] = 1.0 - tail_;
  }

  double invert(double u) const {
    const double pi = 3.14159265358979323846;
    if (u < tail_)
      return -1.0 / (pi * a_ * std::max(u, 1e-300));
    if (u > 1.0 - tail_)
      return 1.0 / (pi * a_ * std::max(1.0 - u, 1e-300));
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    if (i == 0) i = 1;
    if (i > static_cast<std::size_t>(kIntervals)) i = kIntervals;
    double d = cdf_[i] - cdf_[i - 1];
    double w = d > 0.0 ? (u - cdf_[i - 1]) / d : 0.0;
    return x_[i - 1] + w * (x_[i] - x_[i - 1]);
  }

  std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
    auto g = rng::make_engine(seed, 0);
    std::vector<double> out(n);
    for (auto& x : out) x = invert(rng::uniform01(g));
    return out;
  }

 private:
  double a_;
  double x_max_;
  double tail_;
  std::vector<double> x_;
  std::vector<double> cdf_;
};

/// n independent Fejer draws; builds the CDF table locally. Reuse a
/// FejerSampler directly when drawing repeatedly for the same a.
inline std::vector<double> sample_fejer(const FejerVariate& v, std::size_t n,
                                        std::uint64_t seed) {
  if (n == 0) throw std::domain_error("sample_fejer: n must be >= 1");
  return FejerSampler(v).sample(n, seed);
}

// ---------------------------------------------------------------------------
// Lattice variate: atoms k/q in [0,1) stored as exact integer pairs. The
// rank is the least N with N*Y integer-valued a.s., i.e. the lcm of the
// reduced denominators.
// ---------------------------------------------------------------------------
struct LatticeAtom {
  std::int64_t num;
  std::int64_t den;
  double prob;
};

class LatticeVariate {
 public:
  explicit LatticeVariate(std::vector<LatticeAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::domain_error("LatticeVariate: needs at least one atom");
    double total = 0.0;
    for (auto& a : atoms_) {
      if (a.den <= 0 || a.num < 0 || a.num >= a.den)
        throw std::domain_error("LatticeVariate: atoms must be rationals in [0,1)");
      if (a.prob < 0.0) throw std::domain_error("LatticeVariate: negative probability");
      std::int64_t g = std::gcd(a.num, a.den);
      if (g > 1) { a.num /= g; a.den /= g; }
      if (a.num == 0) a.den = 1;
      total += a.prob;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::domain_error("LatticeVariate: probabilities must sum to 1");
    rank_ = 1;
    for (const auto& a : atoms_) {
      std::int64_t g = std::gcd(rank_, a.den);
      if (rank_ / g > (std::int64_t{1} << 62) / a.den)
        throw std::overflow_error("LatticeVariate: rank overflows");
      rank_ = rank_ / g * a.den;
    }
  }

  const std::vector<LatticeAtom>& atoms() const noexcept { return atoms_; }

  /// min{ n : n*Y integer a.s. } = lcm of the reduced denominators.
  std::int64_t rank() const noexcept { return rank_; }

  std::complex<double> cf(double t) const {
    std::complex<double> s{0.0, 0.0};
    for (const auto& a : atoms_)
      s += a.prob * std::polar(1.0, t * (static_cast<double>(a.num) / a.den));
    return s;
  }

  std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
    std::vector<double> cum(atoms_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      run += atoms_[i].prob;
      cum[i] = run;
    }
    cum.back() = 1.0;
    auto g = rng::make_engine(seed, 0);
    std::vector<double> out(n);
    for (auto& x : out) {
      double u = rng::uniform01(g);
      std::size_t i = static_cast<std::size_t>(
          std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
      if (i >= atoms_.size()) i = atoms_.size() - 1;
      x = static_cast<double>(atoms_[i].num) / atoms_[i].den;
    }
    return out;
  }

 private:
  std::vector<LatticeAtom> atoms_;
  std::int64_t rank_;
};

inline std::int64_t lattice_rank(const LatticeVariate& v) { return v.rank(); }

// ---------------------------------------------------------------------------
// Period-1/N comb on [0,1): density `hi` on [k/N, (k+1/2)/N) and 2-hi on the
// second half of each period. F(x) - x has period 1/N; the sup-CDF distance
// to uniform is (hi-1)/(2N).
// ---------------------------------------------------------------------------
struct CombDistribution {
  int periods;  // N
  double hi;

  CombDistribution(int n, double hi_ = 2.0) : periods(n), hi(hi_) {
    if (n < 1) throw std::domain_error("CombDistribution: N must be >= 1");
    if (!(hi_ > 1.0 && hi_ <= 2.0))
      throw std::domain_error("CombDistribution: hi must lie in (1,2]");
  }

  double lo() const noexcept { return 2.0 - hi; }

  double pdf(double x) const {
    double y = x * periods;
    y -= std::floor(y);
    return y < 0.5 ? hi : lo();
  }

  double cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double k = std::floor(x * periods);
    double y = x * periods - k;  // position within the period
    double within = y < 0.5 ? hi * y : 0.5 * hi + lo() * (y - 0.5);
    return (k + within) / periods;
  }

  /// phi(2*pi*n): zero unless N | n; at n = N*j it is (hi-lo)*i/(pi*j) for
  /// odd j and zero for even j.
  std::complex<double> cf2pin(int n) const {
    if (n == 0) return {1.0, 0.0};
    if (n % periods != 0) return {0.0, 0.0};
    int j = std::abs(n) / periods;
    if (j % 2 == 0) return {0.0, 0.0};
    double mag = (hi - lo()) / (3.14159265358979323846 * j);
    return {0.0, n > 0 ? mag : -mag};
  }

  double sup_cdf_distance() const noexcept { return (hi - 1.0) / (2.0 * periods); }

  std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
    auto g = rng::make_engine(seed, 0);
    std::vector<double> out(n);
    double ph = 0.5 * hi;
    for (auto& x : out) {
      double u = rng::uniform01(g) * periods;
      double k = std::floor(u);
      if (k >= periods) k = periods - 1;
      double v = u - k;  // uniform within the period, independent of k
      double y = v < ph ? v / hi : 0.5 + (v - ph) / lo();
      x = (k + y) / periods;
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// A distribution on [0,1): either an empirical sample (sorted) or an
// analytic model (CDF + mean + optional characteristic function).
// ---------------------------------------------------------------------------
class UnitDistribution {
 public:
  using CdfFn = std::function<double(double)>;
  using CfFn = std::function<std::complex<double>(double)>;

  static UnitDistribution empirical(std::vector<double> samples) {
    if (samples.empty())
      throw std::domain_error("UnitDistribution: empty sample");
    for (double x : samples)
      if (!(x >= 0.0 && x < 1.0))
        throw std::domain_error("UnitDistribution: samples must lie in [0,1)");
    std::sort(samples.begin(), samples.end());
    UnitDistribution u;
    u.samples_ = std::move(samples);
    u.mean_ = std::accumulate(u.samples_.begin(), u.samples_.end(), 0.0) /
              static_cast<double>(u.samples_.size());
    return u;
  }

  /// Reduces arbitrary reals mod 1 first; the empirical home of X mod 1.
  static UnitDistribution empirical_mod1(const std::vector<double>& raw) {
    std::vector<double> r(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) r[i] = mod_z(raw[i], 1.0);
    return empirical(std::move(r));
  }

  static UnitDistribution analytic(CdfFn cdf, double mean, CfFn cf = {}) {
    if (!cdf) throw std::domain_error("UnitDistribution: analytic kind needs a CDF");
    // light sanity screen: nondecreasing on a coarse grid, F(1-) == 1
    double prev = -1e-12;
    for (int i = 0; i <= 16; ++i) {
      double v = cdf(i / 16.0 * (1.0 - 1e-12));
      if (v < prev - 1e-9)
        throw std::domain_error("UnitDistribution: CDF is not nondecreasing");
      prev = v;
    }
    if (std::abs(cdf(1.0 - 1e-12) - 1.0) > 1e-6)
      throw std::domain_error("UnitDistribution: CDF(1-) must equal 1");
    UnitDistribution u;
    u.cdf_ = std::move(cdf);
    u.cf_ = std::move(cf);
    u.mean_ = mean;
    return u;
  }

  bool is_empirical() const noexcept { return !samples_.empty(); }
  std::size_t size() const noexcept { return samples_.size(); }

  const std::vector<double>& samples() const {
    if (!is_empirical())
      throw std::domain_error("UnitDistribution: not an empirical distribution");
    return samples_;
  }

  double mean() const noexcept { return mean_; }

  double cdf(double t) const {
    if (is_empirical()) {
      auto it = std::upper_bound(samples_.begin(), samples_.end(), t);
      return static_cast<double>(it - samples_.begin()) /
             static_cast<double>(samples_.size());
    }
    return cdf_(t);
  }

  bool has_cf() const noexcept { return static_cast<bool>(cf_); }

  std::complex<double> cf(double t) const {
    if (!cf_) throw std::domain_error("UnitDistribution: no characteristic function");
    return cf_(t);
  }

 private:
  UnitDistribution() = default;

  std::vector<double> samples_;
  CdfFn cdf_;
  CfFn cf_;
  double mean_ = 0.0;
};

}  // namespace benford
