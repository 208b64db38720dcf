#include <doctest.h>

#include <cmath>
#include <numbers>

#include "parasharp/errors.hpp"
#include "parasharp/specfun.hpp"

using namespace parasharp;

namespace {
const double kSqrtPi = std::sqrt(std::numbers::pi);

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("gamma at half-integers and integers") {
  CHECK(rel(gamma_fn(0.5), kSqrtPi) < 1e-11);
  CHECK(rel(gamma_fn(1.0), 1.0) < 1e-11);
  CHECK(rel(gamma_fn(2.5), 1.3293403881791370) < 1e-11);
  CHECK(rel(gamma_fn(5.0), 24.0) < 1e-12);
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("erfc values") {
  CHECK(erfc_fn(0.0) == doctest::Approx(1.0));
  CHECK(rel(erfc_fn(3.0), 2.209049699858544e-05) < 1e-12);
  CHECK(erfc_fn(-1.0) == doctest::Approx(2.0 - erfc_fn(1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(erfc_fn(std::nan("")), DomainError);
}

TEST_CASE("Gauss-Hermite rule moments") {
  for (int order : {2, 5, 16, 64, 128}) {
    CAPTURE(order);
    const QuadratureRule& r = gauss_hermite(order);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(order));
    double m0 = 0.0, m2 = 0.0, m4 = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const double x = r.nodes[i], w = r.weights[i];
      m0 += w;
      m1 += w * x;
      m2 += w * x * x;
      m4 += w * x * x * x * x;
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK(rel(m0, kSqrtPi) < 1e-13);
    CHECK(std::fabs(m1) < 1e-13);
    CHECK(rel(m2, kSqrtPi / 2.0) < 1e-13);
    if (order >= 3) CHECK(rel(m4, 3.0 * kSqrtPi / 4.0) < 1e-13);
  }
  CHECK_THROWS_AS(gauss_hermite(1), ConfigError);
}

TEST_CASE("Gauss-Hermite order-2 rule in closed form") {
  const QuadratureRule& r = gauss_hermite(2);
  CHECK(r.nodes[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(kSqrtPi / 2.0).epsilon(1e-15));
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  for (int order : {1, 3, 6, 20}) {
    CAPTURE(order);
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      const double exact = 1.0 / (deg + 1.0);
      const double got =
          gauss_legendre_fixed([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0, order);
      CHECK(std::fabs(got - exact) < 1e-14);
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
}

TEST_CASE("adaptive Gauss-Legendre on a peaked integrand") {
  auto f = [](double x) { return 1.0 / (1e-4 + x * x); };
  const double exact = 2.0 * std::atan(1.0 / 1e-2) / 1e-2;
  CHECK(rel(adaptive_gauss_legendre(f, -1.0, 1.0, 8, 1e-9), exact) < 1e-10);
  auto g = [](double x) { return std::sqrt(x); };
  CHECK(std::fabs(adaptive_gauss_legendre(g, 0.0, 1.0, 8, 1e-10) - 2.0 / 3.0) < 1e-10);
}

TEST_CASE("abel integral of tau^a matches Beta closed forms") {
  const QuadratureConfig cfg;
  for (int a = 0; a <= 3; ++a) {
    for (double t : {0.3, 1.0, 2.5}) {
      CAPTURE(a);
      CAPTURE(t);
      const double beta = std::tgamma(a + 1.0) * std::tgamma(0.5) / std::tgamma(a + 1.5);
      const double exact = std::pow(t, a + 0.5) * beta;
      const double got = abel_integral([a](double tau) { return std::pow(tau, a); }, t, cfg);
      CHECK(rel(got, exact) < 1e-8);
    }
  }
}

TEST_CASE("abel integral of a constant is 2 sqrt(t)") {
  const QuadratureConfig cfg;
  const double got = abel_integral([](double) { return 1.0; }, 1.0, cfg);
  CHECK(std::fabs(got - 2.0) < 1e-12);
  CHECK_THROWS_AS(abel_integral([](double) { return 1.0; }, 0.0, cfg), DomainError);
}

TEST_CASE("abel integral with a kink at a breakpoint") {
  const QuadratureConfig cfg;
  auto g = [](double tau) { return std::fabs(tau - 0.4); };
  const double kinks[] = {0.4};
  // int_0^1 |tau - 0.4| (1 - tau)^(-1/2) dtau in closed form.
  auto prim = [](double tau) {
    const double s = std::sqrt(1.0 - tau);
    return -2.0 * 0.6 * s + 2.0 / 3.0 * s * s * s;
  };
  const double right = prim(1.0) - prim(0.4);
  const double left = -(prim(0.4) - prim(0.0));
  CHECK(std::fabs(abel_integral(g, 1.0, cfg, kinks) - (left + right)) < 1e-9);
}

TEST_CASE("tail integral I") {
  const QuadratureConfig cfg;
  CHECK(std::fabs(tail_integral_I(0.0, cfg) - kSqrtPi / 8.0) < 1e-10);
  CHECK(rel(tail_integral_I(1.0, cfg), 0.041336414504040985536) < 1e-9);
  CHECK(rel(tail_integral_I(4.0, cfg), 0.000018848178765517848527) < 1e-8);
  CHECK_THROWS_AS(tail_integral_I(-0.1, cfg), DomainError);
}

TEST_CASE("quadrature config validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.gauss_hermite_order = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.abs_tol = 0.0;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.tail_cutoff = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
