#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "xidiv/errors.hpp"
#include "xidiv/mixture.hpp"
#include "xidiv/numerics.hpp"

using namespace xidiv;

TEST_CASE("triangle weight") {
  CHECK(triangle_weight(1, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(triangle_weight(2, 0.20) == 0.0);
  CHECK(triangle_weight(2, 0.81) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(triangle_weight(3, 1.5) == 0.0);
  const TriangleWeight w = TriangleWeight::for_index(3);
  CHECK(w.support_lo == doctest::Approx(4.0 / 9.0));
  CHECK(w.support_hi == 1.0);
  CHECK(w(0.5) == triangle_weight(3, 0.5));
  CHECK_THROWS_AS(triangle_weight(0, 0.5), ArgumentError);
  CHECK_THROWS_AS(triangle_weight(1, -0.5), ArgumentError);
}

TEST_CASE("alternating moments") {
  CHECK(std::abs(alternating_moment(1, 0) - oracle::kA10) < 1e-15);
  CHECK(std::abs(alternating_moment(2, 0) - oracle::kA20) < 1e-15);
  CHECK(std::abs(alternating_moment(1, 1) - oracle::kA11) < 1e-15);
  CHECK(std::abs(alternating_moment(5, 3) - oracle::kA53) < 1e-15);
  for (int n = 1; n <= 20; ++n) {
    for (int k = 0; k < 30; ++k) {
      CHECK(alternating_moment(n, k + 1) >= 0.0);
      CHECK(alternating_moment(n, k + 1) < alternating_moment(n, k));
    }
  }
  CHECK_THROWS_AS(alternating_moment(1, -1), ArgumentError);
}

TEST_CASE("J_n integrates to a_{n,0}") {
  for (int n = 1; n <= 20; ++n) {
    const TriangleWeight w = TriangleWeight::for_index(n);
    // lambda = mu^2 removes the square-root endpoint behaviour at n = 1
    const double q = integrate_real_interval([&w](double mu) { return 2.0 * mu * w(mu * mu); },
                                             std::sqrt(w.support_lo), std::sqrt(w.support_hi), 8);
    CHECK(std::abs(q - alternating_moment(n, 0)) < 1e-10);
  }
}

TEST_CASE("g_n density") {
  CHECK(g_density(1, 0.5) == 0.0);
  CHECK(std::abs(g_density(1, 1.5) - oracle::kG1_15) < 1e-15);
  CHECK(std::abs(g_density(1, 2.5) - oracle::kG1_25) < 1e-15);
  CHECK(std::abs(g_density(3, 3.7) - oracle::kG3_37) < 1e-15);
  // right-continuous at the integers: x = 2 already includes k = 1
  CHECK(g_density(1, 2.0) == doctest::Approx((2.0 / 3.0 - 0.4) / 4.0));
  CHECK_THROWS_AS(g_density(1, 0.0), ArgumentError);
}

TEST_CASE("g_n is nonnegative and x^2 g_n is piecewise constant") {
  for (int n = 1; n <= 20; ++n) {
    const PiecewiseDensity g(n);
    for (int i = 1; i <= 5000; ++i) {
      const double x = 0.01 * i;
      CHECK(g(x) >= -1e-15);
    }
    for (long m = 1; m < 50; ++m) {
      const double c = g.piece_constant(m);
      for (double f : {0.0, 0.25, 0.5, 0.99}) {
        const double x = static_cast<double>(m) + f;
        CHECK(std::abs(x * x * g(x) - c) <= 4e-16 * std::abs(c) + 1e-300);
      }
    }
    CHECK(g.limit_constant() > 0.0);
    CHECK(g.piece_constant(0) == 0.0);
  }
}

TEST_CASE("signed measure sign census") {
  const SignedMixtureMeasure m = build_signed_measure(16);
  REQUIRE(m.per_n.size() == 16);
  for (const ChannelMass& c : m.per_n) {
    CHECK(c.exponential_mass < 0.0);
    CHECK(c.gamma2_mass > 0.0);
  }
  for (const MixtureAtom& a : m.atoms) {
    if (a.channel == 2) CHECK(a.weight >= 0.0);
    if (a.channel == 1) CHECK(a.weight <= 0.0);
  }
  CHECK(m.total_mass(1) < 0.0);
  CHECK(m.discretization_error >= 0.0);
  CHECK(m.min_rate() > 0.0);
  CHECK_THROWS_AS(build_signed_measure(4, 0.0, 60.0), ArgumentError);
}

TEST_CASE("signed measure is deterministic") {
  const SignedMixtureMeasure a = build_signed_measure(6);
  const SignedMixtureMeasure b = build_signed_measure(6);
  REQUIRE(a.atoms.size() == b.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) CHECK(a.atoms[i].weight == b.atoms[i].weight);
}

TEST_CASE("half-line transform lhs") {
  const NumericConfig cfg;
  CHECK(std::abs(lhs_half_transform(0.0, 0.0, cfg).real() - oracle::kIntPsiKernel / 2.0) < 1e-7);
  CHECK(std::abs(lhs_half_transform(0.1, 0.0, cfg).real() - oracle::kLhsHalf_s01) < 1e-10);
  CHECK(std::abs(lhs_half_transform(0.0, 0.4, cfg).real() - oracle::kLhsHalf_sig04) < 1e-10);
  CHECK_THROWS_AS(lhs_half_transform(0.2, 0.2, cfg), DomainError);
}

TEST_CASE("rhs as written") {
  const NumericConfig cfg;
  const WrittenSeries one = rhs_as_written(0.0, 0.0, 1, cfg);
  CHECK(std::abs(one.value.real() - oracle::kRhsWritten00n1) < 1e-10);
  REQUIRE(one.terms.size() == 1);

  const WrittenSeries w8 = rhs_as_written(0.0, 0.0, 8, cfg);
  const WrittenSeries w16 = rhs_as_written(0.0, 0.0, 16, cfg);
  CHECK(std::abs(w16.value - w8.value) < w8.truncation_estimate);

  const WrittenSeries zero = rhs_as_written(0.0, 0.0, 4, cfg, LowerLimit::zero);
  CHECK(std::isfinite(zero.value.real()));

  // a = s + sigma/2 - 1/4 real and inside the integration range
  CHECK_THROWS_AS(rhs_as_written(Complex{2.0, 0.0}, 0.0, 1, cfg), SingularityError);
}

TEST_CASE("rhs mixture form channel split") {
  const NumericConfig cfg;
  const SignedMixtureMeasure m = build_signed_measure(4);
  const Complex total = rhs_mixture_form(0.0, 0.0, m);
  CompensatedSum<Complex> by_channel;
  for (int r : {2, 1}) {
    for (const MixtureAtom& a : m.atoms) {
      if (a.channel != r) continue;
      const double q = a.rate / (a.rate + 0.25);
      by_channel += a.weight * (r == 2 ? q * q : q);
    }
  }
  CHECK(std::abs(total - by_channel.value()) < 1e-10 * std::max(1.0, std::abs(total)));
  CHECK(std::abs(rhs_mixture_form(0.0, 0.0, 4, cfg) - total) < 1e-9 * std::abs(total));
}

TEST_CASE("half identity reports") {
  const NumericConfig cfg;
  const HalfIdentityReport r = half_identity_report(0.0, 0.0, 8, cfg, true);
  CHECK(std::isfinite(r.lhs.real()));
  CHECK(std::isfinite(r.rhs_as_written.real()));
  CHECK(std::isfinite(r.rhs_mixture_form.real()));
  CHECK(std::isfinite(r.residual_written));
  CHECK(std::isfinite(r.residual_mixture));
  CHECK(r.rhs_written_zero_limit.has_value());
  CHECK_FALSE(r.negative_half);

  const HalfIdentityReport neg = negative_half_transform(0.0, 0.0, 8, cfg);
  CHECK(neg.negative_half);
  CHECK(std::abs(neg.lhs - lhs_half_transform(0.0, 0.0, cfg)) < 1e-10);

  const HalfIdentityReport n2 = negative_half_transform(0.05, 0.2, 8, cfg);
  CHECK(std::isfinite(n2.lhs.real()));
  CHECK(n2.s == Complex{0.05, 0.0});
  CHECK(n2.sigma == 0.2);

  CHECK_THROWS_AS(half_identity_report(0.0, 0.5, 8, cfg), DomainError);
  CHECK_THROWS_AS(half_identity_report(0.0, -0.5, 8, cfg), DomainError);
}

TEST_CASE("lambda-integral swap") {
  for (int n = 1; n <= 5; ++n) {
    for (double u = 0.5; u <= 5.0; u += 0.5) {
      CHECK(std::abs(lambda_series_form(n, u, 40) - v_integral_form(n, u)) < 1e-8);
    }
  }
}
