#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "benford/conformance.hpp"
#include "benford/distributions.hpp"

using namespace benford;

namespace {

// brute-force oracle for the rank: least n <= 1e6 with n * atom integral
std::int64_t rank_by_scan(const std::vector<LatticeAtom>& atoms) {
  for (std::int64_t n = 1; n <= 1000000; ++n) {
    bool ok = true;
    for (const auto& a : atoms)
      if ((n * a.num) % a.den != 0) {
        ok = false;
        break;
      }
    if (ok) return n;
  }
  return -1;
}

double abs_cf(const std::vector<double>& xs, double t) {
  std::complex<double> acc{0.0, 0.0};
  for (double x : xs) acc += std::polar(1.0, t * x);
  return std::abs(acc) / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("uniform-exponent sampler is deterministic per seed") {
  UniformExponentVariate v(10.0, 0.0, 1.0);
  auto a = sample_uniform_exponent(v, 1000, 42);
  auto b = sample_uniform_exponent(v, 1000, 42);
  auto c = sample_uniform_exponent(v, 1000, 43);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("uniform-exponent range and first-digit frequency") {
  auto vals = sample_uniform_exponent(UniformExponentVariate(10.0, 2.0, 3.0), 10000, 7);
  for (double x : vals) {
    REQUIRE(x >= 100.0);
    REQUIRE(x < 1000.0);
  }

  auto benford_vals = sample_uniform_exponent(UniformExponentVariate(10.0, 0.0, 1.0),
                                              200000, 99);
  std::size_t ones = 0;
  Base ten(10.0);
  for (double x : benford_vals)
    if (static_cast<int>(significand(x, ten)) == 1) ++ones;
  double freq = static_cast<double>(ones) / static_cast<double>(benford_vals.size());
  CHECK(freq == Catch::Approx(std::log10(2.0)).margin(0.005));
}

TEST_CASE("uniform-exponent mean of log2 over [0,2)") {
  auto vals = sample_uniform_exponent(UniformExponentVariate(2.0, 0.0, 2.0), 1000000, 3);
  double mean = 0.0;
  for (double x : vals) mean += std::log2(x);
  mean /= static_cast<double>(vals.size());
  CHECK(mean == Catch::Approx(1.0).margin(0.002));
}

TEST_CASE("log-mantissa uniformity at integer exponent width (DKW check)") {
  const std::size_t m = 100000;
  const double dkw = 3.0 * std::sqrt(std::log(2.0 / 0.001) / (2.0 * m));
  struct Fixture { double beta, c, d; };
  for (auto [beta, c, d] : {Fixture{10, 0, 1}, Fixture{2, 0, 2}, Fixture{5, 1, 3}}) {
    auto vals = sample_uniform_exponent(UniformExponentVariate(beta, c, d), m, 17);
    CHECK(ks_to_benford(vals, Base(beta)) <= dkw);
  }
}

TEST_CASE("analytic benford spectrum of the uexp family") {
  auto s1 = analytic_benford_spectrum(UniformExponentVariate(10, 0, 1), 3);
  REQUIRE(s1.size() == 3);
  CHECK(s1[0] == Catch::Approx(10.0).epsilon(1e-14));
  CHECK(s1[1] == Catch::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(s1[2] == Catch::Approx(std::cbrt(10.0)).epsilon(1e-14));
  auto s2 = analytic_benford_spectrum(UniformExponentVariate(10, 0, 2), 2);
  CHECK(s2[0] == Catch::Approx(100.0).epsilon(1e-14));
  CHECK(s2[1] == Catch::Approx(10.0).epsilon(1e-14));
  auto s3 = analytic_benford_spectrum(UniformExponentVariate(2, 1, 2), 1);
  CHECK(s3[0] == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("fejer sampler matches its triangular characteristic function") {
  FejerVariate v = FejerVariate::for_base(10.0);
  const std::size_t m = 1000000;
  auto z = sample_fejer(v, m, 2024);
  const double tol = cf_noise(m);
  for (int k = 1; k <= 20; ++k) {
    double t = 0.1 * k * v.a;
    double expected = std::max(0.0, 1.0 - std::abs(t) / v.a);
    CHECK(abs_cf(z, t) == Catch::Approx(expected).margin(tol));
  }
  CHECK(abs_cf(z, v.a) <= 0.01);
  CHECK(abs_cf(z, 0.5 * v.a) == Catch::Approx(0.5).margin(0.02));

  // symmetric density: the median sits at 0
  std::nth_element(z.begin(), z.begin() + z.size() / 2, z.end());
  CHECK(std::abs(z[z.size() / 2]) <= 0.01);
}

TEST_CASE("fejer sampler is deterministic and rejects n == 0") {
  FejerVariate v(2.0);
  auto a = sample_fejer(v, 500, 5);
  auto b = sample_fejer(v, 500, 5);
  CHECK(a == b);
  CHECK_THROWS_AS(sample_fejer(v, 0, 5), std::domain_error);
  CHECK_THROWS_AS(FejerVariate(-1.0), std::domain_error);
}

TEST_CASE("lattice rank equals the lcm of reduced denominators") {
  LatticeVariate v1({{0, 1, 0.25}, {1, 3, 0.5}, {2, 3, 0.25}});
  CHECK(v1.rank() == 3);
  CHECK(rank_by_scan(v1.atoms()) == 3);

  LatticeVariate v2({{1, 2, 0.5}, {1, 3, 0.5}});
  CHECK(v2.rank() == 6);
  CHECK(rank_by_scan(v2.atoms()) == 6);

  // 3/12 reduces to 1/4; lcm(4, 8) = 8
  LatticeVariate v3({{3, 12, 0.5}, {5, 8, 0.5}});
  CHECK(v3.rank() == 8);
  CHECK(rank_by_scan(v3.atoms()) == 8);
  CHECK(lattice_rank(v3) == 8);
}

TEST_CASE("lattice construction validates atoms") {
  CHECK_THROWS_AS(LatticeVariate({}), std::domain_error);
  CHECK_THROWS_AS(LatticeVariate({{1, 2, 0.5}, {1, 3, 0.6}}), std::domain_error);
  CHECK_THROWS_AS(LatticeVariate({{3, 2, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(LatticeVariate({{-1, 2, 1.0}}), std::domain_error);
}

TEST_CASE("lattice characteristic function") {
  LatticeVariate point({{0, 1, 1.0}});
  for (double t : {0.0, 1.0, 5.5, -20.0})
    CHECK(std::abs(point.cf(t) - std::complex<double>{1.0, 0.0}) <= 1e-15);

  LatticeVariate v({{1, 2, 0.5}, {1, 3, 0.5}});
  CHECK(std::abs(v.cf(kTwoPi * v.rank())) == Catch::Approx(1.0).margin(1e-12));
  for (int n = 1; n < v.rank(); ++n)
    CHECK(std::abs(v.cf(kTwoPi * n)) < 1.0 - 1e-9);

  LatticeVariate thirds({{0, 1, 1.0 / 3}, {1, 3, 1.0 / 3}, {2, 3, 1.0 / 3}});
  CHECK(std::abs(thirds.cf(kTwoPi * 3)) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(std::arg(thirds.cf(kTwoPi * 3))) <= 1e-9);
}

TEST_CASE("lattice sampling hits atoms with the right frequencies") {
  LatticeVariate v({{1, 2, 0.25}, {1, 3, 0.75}});
  auto s = v.sample(100000, 8);
  auto s2 = v.sample(100000, 8);
  CHECK(s == s2);
  double half = 0.0;
  for (double x : s) {
    bool is_half = std::abs(x - 0.5) < 1e-12;
    bool is_third = std::abs(x - 1.0 / 3) < 1e-12;
    REQUIRE((is_half || is_third));
    if (is_half) half += 1.0;
  }
  CHECK(half / static_cast<double>(s.size()) == Catch::Approx(0.25).margin(0.01));
}

TEST_CASE("analytic characteristic functions") {
  FejerVariate f(3.0);
  CHECK(std::abs(f.cf(6.0)) == 0.0);
  CHECK(std::abs(f.cf(2.0 * f.a)) == 0.0);
  CHECK(f.cf(1.5).real() == Catch::Approx(0.5).epsilon(1e-14));

  UniformExponentVariate u(10.0, 0.0, 1.0);
  CHECK(std::abs(u.cf_log_beta(3.14159265358979323846)) ==
        Catch::Approx(2.0 / 3.14159265358979323846).epsilon(1e-10));
  // cf_ln is cf_log_beta stretched by ln(beta)
  CHECK(std::abs(u.cf_ln(1.7 / u.beta.ln()) - u.cf_log_beta(1.7)) <= 1e-14);
}

TEST_CASE("comb distribution closed forms") {
  CombDistribution comb(4);
  CHECK(comb.pdf(0.05) == 2.0);
  CHECK(comb.pdf(0.20) == 0.0);
  CHECK(comb.cdf(0.125) == Catch::Approx(0.25).epsilon(1e-12));
  CHECK(comb.cdf(0.25) == Catch::Approx(0.25).epsilon(1e-12));
  CHECK(comb.sup_cdf_distance() == Catch::Approx(0.125).epsilon(1e-14));
  CHECK(std::abs(comb.cf2pin(4)) == Catch::Approx(2.0 / 3.14159265358979323846).epsilon(1e-12));
  CHECK(std::abs(comb.cf2pin(8)) == 0.0);
  CHECK(std::abs(comb.cf2pin(3)) == 0.0);

  auto s = comb.sample(50000, 77);
  for (double x : s) {
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(comb.pdf(x) > 0.0);
  }
}

TEST_CASE("unit distribution construction and queries") {
  auto emp = UnitDistribution::empirical({0.5, 0.1, 0.9});
  CHECK(emp.is_empirical());
  CHECK(emp.samples() == std::vector<double>{0.1, 0.5, 0.9});
  CHECK(emp.mean() == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(emp.cdf(0.5) == Catch::Approx(2.0 / 3).epsilon(1e-14));
  CHECK_THROWS_AS(UnitDistribution::empirical({1.0}), std::domain_error);
  CHECK_THROWS_AS(UnitDistribution::empirical({}), std::domain_error);

  auto wrapped = UnitDistribution::empirical_mod1({1.25, -0.25, 3.5});
  CHECK(wrapped.samples() == std::vector<double>{0.25, 0.5, 0.75});

  auto ana = UnitDistribution::analytic([](double t) { return t; }, 0.5,
                                        [](double t) {
                                          return detail::cf_uniform_interval(0.0, 1.0, t);
                                        });
  CHECK_FALSE(ana.is_empirical());
  CHECK(ana.cdf(0.25) == 0.25);
  CHECK(ana.has_cf());
  CHECK_THROWS_AS(ana.samples(), std::domain_error);
  CHECK_THROWS_AS(
      UnitDistribution::analytic([](double t) { return 1.0 - t; }, 0.5),
      std::domain_error);
}
