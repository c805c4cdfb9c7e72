#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "benford/conformance.hpp"
#include "benford/distributions.hpp"
#include "benford/fourier.hpp"
#include "benford/modmath.hpp"
#include "benford/rng.hpp"

namespace benford {

// ---------------------------------------------------------------------------
// Seeded Monte Carlo experiments, one per theorem. All thresholds come from
// the declared noise model (KS 99% quantile, CF 4/sqrt(m)); reruns with the
// same seed reproduce every statistic bit-exactly.
// ---------------------------------------------------------------------------
struct ExperimentResult {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::map<std::string, double> statistics;
  double threshold = 0.0;
  bool passed = false;
  std::string note;
};

namespace detail {

/// Hard floor below which an experiment is statistically meaningless; the
/// per-experiment recommended m is only advisory (runs attach a note).
inline void require_usable_m(const char* name, std::size_t m) {
  if (m < 1000)
    throw std::domain_error(std::string(name) + ": m must be >= 1000");
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline double ks_unit(std::vector<double> v) {
  return ks_to_uniform_sorted(sorted(std::move(v)));
}

/// |(1/m) sum exp(i t x_j)|
inline double abs_empirical_cf(const std::vector<double>& xs, double t) {
  std::complex<double> acc{0.0, 0.0};
  for (double x : xs) acc += std::polar(1.0, t * x);
  return std::abs(acc) / static_cast<double>(xs.size());
}

}  // namespace detail

/// Multiplication by an independent positive variable preserves the Benford
/// property: Y*X stays base-10 Benford for lognormal, uniform and lattice Y.
inline ExperimentResult exp_scale_invariance(std::uint64_t seed, std::size_t m = 1000000) {
  detail::require_usable_m("exp_scale_invariance", m);
  ExperimentResult res{"exp_scale_invariance", seed, m, {}, ks_noise(m) + 0.002, false, ""};
  Base ten(10.0);

  auto gx = rng::make_engine(seed, 0);
  std::vector<double> x(m);
  for (auto& v : x) v = std::pow(10.0, rng::uniform01(gx));

  auto ks_with_multiplier = [&](std::uint64_t stream, auto&& draw) {
    auto g = rng::make_engine(seed, stream);
    std::vector<double> prod(m);
    for (std::size_t i = 0; i < m; ++i) prod[i] = x[i] * draw(g);
    return ks_to_benford(prod, ten);
  };

  LatticeVariate lat({{0, 1, 1.0 / 3}, {1, 3, 1.0 / 3}, {2, 3, 1.0 / 3}});
  const auto& atoms = lat.atoms();

  res.statistics["ks_lognormal"] =
      ks_with_multiplier(1, [](rng::Engine& g) { return std::exp(rng::normal01(g)); });
  res.statistics["ks_uniform"] =
      ks_with_multiplier(2, [](rng::Engine& g) { return 0.5 + 6.5 * rng::uniform01(g); });
  res.statistics["ks_lattice"] = ks_with_multiplier(3, [&](rng::Engine& g) {
    double u = rng::uniform01(g);
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u * 3.0), 2);
    return std::pow(10.0, static_cast<double>(atoms[i].num) / atoms[i].den);
  });

  res.passed = res.statistics["ks_lognormal"] <= res.threshold &&
               res.statistics["ks_uniform"] <= res.threshold &&
               res.statistics["ks_lattice"] <= res.threshold;
  return res;
}

/// Converse scale-invariance: for non-Benford X the law of S(YX) separates
/// from S(X) (the hypothesis of the converse fails), while for Benford X the
/// two agree. Includes the rational-shift control on a periodic X.
inline ExperimentResult exp_converse_scale(std::uint64_t seed, std::size_t m = 1000000) {
  detail::require_usable_m("exp_converse_scale", m);
  ExperimentResult res{"exp_converse_scale", seed, m, {}, 0.0, false, ""};
  const double log10e = 1.0 / std::log(10.0);

  // X = 10^{U[0,0.5)}: mantissa law is NOT uniform
  auto g0 = rng::make_engine(seed, 0);
  std::vector<double> lm_bad(m);
  for (auto& v : lm_bad) v = 0.5 * rng::uniform01(g0);
  auto g1 = rng::make_engine(seed, 1);
  auto g2 = rng::make_engine(seed, 2);
  std::vector<double> lm_bad_mult(m);
  for (auto& v : lm_bad_mult)
    v = mod_z(0.5 * rng::uniform01(g1) + rng::normal01(g2) * log10e, 1.0);
  double ks_neg = ks_two_sample_sorted(detail::sorted(lm_bad), detail::sorted(lm_bad_mult));

  // X Benford: multiplication is invisible
  auto g3 = rng::make_engine(seed, 3);
  std::vector<double> lm_good(m);
  for (auto& v : lm_good) v = rng::uniform01(g3);
  auto g4 = rng::make_engine(seed, 4);
  auto g5 = rng::make_engine(seed, 5);
  std::vector<double> lm_good_mult(m);
  for (auto& v : lm_good_mult)
    v = mod_z(rng::uniform01(g4) + rng::normal01(g5) * log10e, 1.0);
  double ks_pos = ks_two_sample_sorted(detail::sorted(lm_good), detail::sorted(lm_good_mult));

  // periodic X, point-mass Y at an irrational log shift: still separates
  CombDistribution comb(2);
  auto c1 = comb.sample(m, rng::child_seed(seed, 6));
  auto c2 = comb.sample(m, rng::child_seed(seed, 7));
  const double shift = std::log10(2.0);
  for (auto& v : c2) v = mod_z(v + shift, 1.0);
  double ks_shift = ks_two_sample_sorted(detail::sorted(std::move(c1)),
                                         detail::sorted(std::move(c2)));

  res.statistics["ks_nonbenford"] = ks_neg;
  res.statistics["ks_benford"] = ks_pos;
  res.statistics["ks_comb_shift"] = ks_shift;
  res.threshold = ks_two_sample_noise(m, m) + 0.002;
  res.passed = ks_neg >= 0.05 && ks_pos <= res.threshold && ks_shift >= 0.05;
  return res;
}

/// Rank bound: a period-1/N comb is invariant under addition of a rank-N
/// lattice variable, its sup-CDF deviation obeys the 1/N bound (the exact
/// value is 1/(2N)), and the comb period is recovered from the spectrum.
inline ExperimentResult exp_rank_bound(std::uint64_t seed, std::size_t m, int N) {
  if (!(N == 2 || N == 3 || N == 4 || N == 8))
    throw std::domain_error("exp_rank_bound: N must be one of {2,3,4,8}");
  detail::require_usable_m("exp_rank_bound", m);
  ExperimentResult res{"exp_rank_bound", seed, m, {}, 0.0, false, ""};

  CombDistribution comb(N);
  auto x1 = comb.sample(m, rng::child_seed(seed, 0));
  auto x2 = comb.sample(m, rng::child_seed(seed, 1));
  auto gy = rng::make_engine(seed, 2);
  std::vector<double> shifted(m);
  for (std::size_t i = 0; i < m; ++i) {
    int k = std::min<int>(static_cast<int>(rng::uniform01(gy) * N), N - 1);
    shifted[i] = mod_z(x2[i] + static_cast<double>(k) / N, 1.0);
  }

  double ks2 = ks_two_sample_sorted(detail::sorted(x1), detail::sorted(std::move(shifted)));
  auto unit = UnitDistribution::empirical(std::move(x1));
  auto rb = rank_bound_check(unit, N);
  auto spec = empirical_spectrum(unit, 64);
  auto period = detect_period(spec, spec.default_tol());

  res.statistics["ks_two_sample"] = ks2;
  res.statistics["observed_sup"] = rb.observed_sup;
  res.statistics["bound"] = rb.bound;
  res.statistics["detected_period"] = period.is_periodic() ? period.period : 0;
  res.threshold = ks_two_sample_noise(m, m) + 0.002;
  res.passed = ks2 <= res.threshold && rb.satisfied &&
               std::abs(rb.observed_sup - comb.sup_cdf_distance()) <= 0.01 &&
               period.is_periodic() && period.period == N;
  return res;
}

/// Simultaneous rank bounds: the uniform law satisfies every 1/N bound at
/// once (the squeeze to zero), while the period-1/4 comb passes at N = 4 and
/// sits exactly on the boundary at N = 8 (sup = 1/8).
inline ExperimentResult exp_infinite_rational(std::uint64_t seed, std::size_t m = 100000,
                                              std::vector<int> n_list = {2, 4, 8, 16, 32}) {
  detail::require_usable_m("exp_infinite_rational", m);
  if (n_list.empty()) throw std::domain_error("exp_infinite_rational: empty N list");
  ExperimentResult res{"exp_infinite_rational", seed, m, {}, ks_noise(m) + 0.002, false, ""};

  auto g = rng::make_engine(seed, 0);
  std::vector<double> u(m);
  for (auto& v : u) v = rng::uniform01(g);
  auto uniform = UnitDistribution::empirical(std::move(u));
  bool all_ok = true;
  for (int N : n_list) {
    auto rb = rank_bound_check(uniform, N);
    res.statistics["uniform_sup_N" + std::to_string(N)] = rb.observed_sup;
    all_ok = all_ok && rb.satisfied;
  }

  CombDistribution comb(4);
  auto comb_unit = UnitDistribution::empirical(comb.sample(m, rng::child_seed(seed, 1)));
  auto rb4 = rank_bound_check(comb_unit, 4);
  auto rb8 = rank_bound_check(comb_unit, 8);
  res.statistics["comb4_sup"] = rb4.observed_sup;
  double gap8 = rb8.observed_sup - rb8.bound;
  res.statistics["comb4_boundary_gap_N8"] = gap8;
  if (std::abs(gap8) <= ks_noise(m))
    res.note = "comb period 1/4 at N=8 sits on the 1/N boundary (sup == 1/8)";

  res.passed = all_ok && rb4.satisfied && std::abs(gap8) <= res.threshold;
  return res;
}

/// aX mod 1 converges to uniform as a grows: KS to uniform is nonincreasing
/// beyond noise and ends at the noise floor, and |phi(2*pi*a)| tracks the
/// normal CF envelope exp(-sigma^2 (2*pi*a)^2 / 2).
inline ExperimentResult exp_convergence_a(std::uint64_t seed, std::size_t m = 1000000,
                                          std::vector<double> a_list = {1, 2, 4, 8}) {
  detail::require_usable_m("exp_convergence_a", m);
  if (a_list.size() < 2) throw std::domain_error("exp_convergence_a: need >= 2 scales");
  ExperimentResult res{"exp_convergence_a", seed, m, {}, ks_noise(m) + 0.002, false, ""};
  const double sigma = 0.1;

  auto g = rng::make_engine(seed, 0);
  std::vector<double> x(m);
  for (auto& v : x) v = sigma * rng::normal01(g);

  bool monotone = true;
  double prev_ks = 2.0;
  double final_ks = 1.0;
  for (double a : a_list) {
    std::vector<double> reduced(m);
    for (std::size_t i = 0; i < m; ++i) reduced[i] = mod_z(a * x[i], 1.0);
    double ks = detail::ks_unit(std::move(reduced));
    res.statistics["ks_a" + std::to_string(static_cast<int>(a))] = ks;
    if (ks > prev_ks + ks_noise(m)) monotone = false;
    prev_ks = ks;
    final_ks = ks;
  }

  bool cf_ok = true;
  for (double a : {1.0, 2.0, 4.0}) {
    double emp = detail::abs_empirical_cf(x, kTwoPi * a);
    double expect = std::exp(-0.5 * sigma * sigma * kTwoPi * a * kTwoPi * a);
    res.statistics["cf_a" + std::to_string(static_cast<int>(a))] = emp;
    if (std::abs(emp - expect) > cf_noise(m)) cf_ok = false;
  }

  res.passed = monotone && final_ks <= res.threshold && cf_ok;
  return res;
}

/// Powers drive any density to Benford: ks(X^a) is nonincreasing in a beyond
/// noise for lognormal X, and for X already Benford the integer powers are
/// exactly Benford. Powers are taken in the log domain, so no overflow.
inline ExperimentResult exp_power_convergence(std::uint64_t seed, std::size_t m = 1000000,
                                              std::vector<double> a_list = {1, 2, 4, 8},
                                              double base = 10.0) {
  detail::require_usable_m("exp_power_convergence", m);
  ExperimentResult res{"exp_power_convergence", seed, m, {}, ks_noise(m) + 0.002, false, ""};
  const double lb = std::log(base);

  auto g = rng::make_engine(seed, 0);
  std::vector<double> logb_x(m);
  for (auto& v : logb_x) v = rng::normal01(g) / lb;  // log_b of lognormal(0,1)

  bool monotone = true;
  double prev_ks = 2.0, final_ks = 1.0;
  for (double a : a_list) {
    std::vector<double> lm(m);
    for (std::size_t i = 0; i < m; ++i) lm[i] = mod_z(a * logb_x[i], 1.0);
    double ks = detail::ks_unit(std::move(lm));
    res.statistics["ks_a" + std::to_string(static_cast<int>(a))] = ks;
    if (ks > prev_ks + ks_noise(m)) monotone = false;
    prev_ks = ks;
    final_ks = ks;
  }

  // integer case on an exactly-Benford fixture
  auto g2 = rng::make_engine(seed, 1);
  std::vector<double> u(m);
  for (auto& v : u) v = rng::uniform01(g2);
  bool integer_ok = true;
  for (int n : {2, 3}) {
    std::vector<double> lm(m);
    for (std::size_t i = 0; i < m; ++i) lm[i] = mod_z(n * u[i], 1.0);
    double ks = detail::ks_unit(std::move(lm));
    res.statistics["ks_benford_pow" + std::to_string(n)] = ks;
    if (ks > res.threshold) integer_ok = false;
  }

  res.passed = monotone && final_ks <= res.threshold && integer_ok;
  return res;
}

/// Base-invariance: the Fejer witness has identical significand law for both
/// bases and is Benford for both; the negative control 10^{U[0,1)} has
/// visibly different mantissa laws at bases 8 and 10.
inline ExperimentResult exp_two_base(std::uint64_t seed, std::size_t m = 1000000,
                                     double b = 5.0, double beta = 10.0) {
  if (!(1.0 < b && b < beta)) throw std::domain_error("exp_two_base: requires 1 < b < beta");
  detail::require_usable_m("exp_two_base", m);
  ExperimentResult res{"exp_two_base", seed, m, {}, 0.0, false, ""};

  FejerSampler sampler(FejerVariate::for_base(beta));
  auto z1 = sampler.sample(m, rng::child_seed(seed, 0));
  auto z2 = sampler.sample(m, rng::child_seed(seed, 1));
  std::vector<double> lm_b(m), lm_beta(m);
  for (std::size_t i = 0; i < m; ++i) {
    lm_b[i] = mod_z(z1[i] / std::log(b), 1.0);
    lm_beta[i] = mod_z(z2[i] / std::log(beta), 1.0);
  }
  double ks_b = detail::ks_unit(lm_b);
  double ks_beta = detail::ks_unit(lm_beta);
  double ks_agree = ks_two_sample_sorted(detail::sorted(std::move(lm_b)),
                                         detail::sorted(std::move(lm_beta)));

  // negative control: same variable, incompatible bases
  auto gu = rng::make_engine(seed, 2);
  auto gv = rng::make_engine(seed, 3);
  const double c = std::log(10.0) / std::log(8.0);
  std::vector<double> lm10(m), lm8(m);
  for (std::size_t i = 0; i < m; ++i) {
    lm10[i] = rng::uniform01(gu);
    lm8[i] = mod_z(c * rng::uniform01(gv), 1.0);
  }
  double ks_neg = ks_two_sample_sorted(detail::sorted(std::move(lm10)),
                                       detail::sorted(std::move(lm8)));

  res.statistics["ks_base_b"] = ks_b;
  res.statistics["ks_base_beta"] = ks_beta;
  res.statistics["ks_agreement"] = ks_agree;
  res.statistics["ks_negative_8_10"] = ks_neg;
  res.threshold = ks_two_sample_noise(m, m) + 0.002;
  double one_sample = ks_noise(m) + 0.002;
  res.passed = ks_b <= one_sample && ks_beta <= one_sample &&
               ks_agree <= res.threshold && ks_neg >= 0.05;
  return res;
}

/// Integer scalings preserve the uniform law on the circle; non-integer ones
/// do not (T_2.5 of uniform has exact KS distance 0.1) and destroy comb
/// periods that integer scalings merely coarsen.
inline ExperimentResult exp_lebinv_integer(std::uint64_t seed, std::size_t m = 1000000,
                                           int n = 3) {
  if (n < 1) throw std::domain_error("exp_lebinv_integer: n must be >= 1");
  detail::require_usable_m("exp_lebinv_integer", m);
  ExperimentResult res{"exp_lebinv_integer", seed, m, {}, ks_noise(m) + 0.002, false, ""};

  auto g = rng::make_engine(seed, 0);
  std::vector<double> u(m);
  for (auto& v : u) v = rng::uniform01(g);

  std::vector<double> scaled(m);
  for (std::size_t i = 0; i < m; ++i) scaled[i] = scale_mod(static_cast<double>(n), u[i]);
  double ks_int = detail::ks_unit(std::move(scaled));

  const double a = n + 0.5;
  std::vector<double> scaled_frac(m);
  for (std::size_t i = 0; i < m; ++i) scaled_frac[i] = scale_mod(a, u[i]);
  double ks_frac = detail::ks_unit(std::move(scaled_frac));
  // closed form from the T_a preimage measure: sup = (a-floor(a))(floor(a)+1-a)/a
  double fl = std::floor(a);
  double expect_frac = (a - fl) * (fl + 1.0 - a) / a;

  // comb period 1/4: T_2 coarsens it to period 1/2, T_2.5 leaves no period
  CombDistribution comb(4);
  auto xc = comb.sample(m, rng::child_seed(seed, 1));
  std::vector<double> t2(m), t25(m);
  for (std::size_t i = 0; i < m; ++i) {
    t2[i] = scale_mod(2.0, xc[i]);
    t25[i] = scale_mod(2.5, xc[i]);
  }
  auto spec2 = empirical_spectrum(UnitDistribution::empirical(std::move(t2)), 16);
  auto spec25 = empirical_spectrum(UnitDistribution::empirical(std::move(t25)), 16);
  auto p2 = detect_period(spec2, spec2.default_tol());
  auto p25 = detect_period(spec25, spec25.default_tol());

  res.statistics["ks_integer"] = ks_int;
  res.statistics["ks_noninteger"] = ks_frac;
  res.statistics["ks_noninteger_expected"] = expect_frac;
  res.statistics["comb_period_T2"] = p2.is_periodic() ? p2.period : 0;
  res.statistics["comb_period_T2_5"] = p25.is_periodic() ? p25.period : 0;
  res.passed = ks_int <= res.threshold &&
               std::abs(ks_frac - expect_frac) <= res.threshold &&
               p2.is_periodic() && p2.period == 2 && !p25.is_periodic() &&
               !p25.is_uniform();
  return res;
}

// ---------------------------------------------------------------------------
// Suite driver.
// ---------------------------------------------------------------------------
inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "exp_scale_invariance", "exp_converse_scale",    "exp_rank_bound",
      "exp_infinite_rational", "exp_convergence_a",    "exp_power_convergence",
      "exp_two_base",          "exp_lebinv_integer"};
  return names;
}

/// Runs one named experiment (or all of them) with its default parameters;
/// m == 0 keeps each experiment's recommended sample count.
inline std::vector<ExperimentResult> run_suite(const std::string& suite,
                                               std::uint64_t seed, std::size_t m = 0) {
  auto run_one = [&](const std::string& name) -> ExperimentResult {
    ExperimentResult r;
    if (name == "exp_scale_invariance")
      r = exp_scale_invariance(seed, m ? m : 1000000);
    else if (name == "exp_converse_scale")
      r = exp_converse_scale(seed, m ? m : 1000000);
    else if (name == "exp_rank_bound")
      r = exp_rank_bound(seed, m ? m : 100000, 4);
    else if (name == "exp_infinite_rational")
      r = exp_infinite_rational(seed, m ? m : 100000);
    else if (name == "exp_convergence_a")
      r = exp_convergence_a(seed, m ? m : 1000000);
    else if (name == "exp_power_convergence")
      r = exp_power_convergence(seed, m ? m : 1000000);
    else if (name == "exp_two_base")
      r = exp_two_base(seed, m ? m : 1000000);
    else if (name == "exp_lebinv_integer")
      r = exp_lebinv_integer(seed, m ? m : 1000000);
    else
      throw std::invalid_argument("unknown experiment: " + name);
    if (m != 0 && m < 100000 && r.note.empty())
      r.note = "m is below the recommended sample count; statistics are noise-limited";
    return r;
  };

  std::vector<ExperimentResult> out;
  if (suite == "all") {
    for (const auto& name : experiment_names()) out.push_back(run_one(name));
  } else {
    out.push_back(run_one(suite));
  }
  return out;
}

}  // namespace benford
