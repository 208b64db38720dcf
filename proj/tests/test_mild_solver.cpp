#include <doctest.h>

#include <cmath>

#include "parasharp/closed_forms.hpp"
#include "parasharp/errors.hpp"
#include "parasharp/kernels.hpp"
#include "parasharp/mild_solver.hpp"

using namespace parasharp;

namespace {

GridSpec small_grid() {
  GridSpec g;
  g.X = 8.0;
  g.dx = 0.1;
  g.nt = 16;
  return g;
}

}  // namespace

TEST_CASE("heat convolution examples") {
  const QuadratureConfig q;
  CHECK(heat_convolve([](double) { return 4.0; }, 0.3, 1.0, q) == doctest::Approx(4.0));
  for (double t : {0.1, 1.0, 2.0}) {
    for (double x : {-1.0, 0.3, 2.0}) {
      const double v = heat_convolve([](double y) { return std::sin(y); }, t, x, q);
      CHECK(std::fabs(v - std::exp(-t) * std::sin(x)) < 1e-8);
    }
  }
  CHECK(std::fabs(heat_convolve([](double y) { return std::tanh(y); }, 0.7, 0.0, q)) < 1e-15);
  CHECK_THROWS_AS(heat_convolve([](double) { return 1.0; }, 0.0, 0.0, q), DomainError);
  CHECK_THROWS_AS(heat_convolve([](double) { return NAN; }, 1.0, 0.0, q), EvaluationError);
}

TEST_CASE("heat convolution does not increase the sup norm") {
  const QuadratureConfig q;
  const InitialDataSpec w(ScaledW0Data{2.0});
  const TabulatedData step{{-0.1, 0.1}, {-1.0, 1.0}, {0.0, 0.0}};
  const InitialDataSpec s(step);
  for (double t : {0.01, 0.5, 3.0}) {
    for (double x = -5.0; x <= 5.0; x += 0.25) {
      CHECK(std::fabs(heat_convolve([&](double y) { return w.value(y); }, t, x, q)) <=
            2.0 + 1e-12);
      CHECK(std::fabs(heat_convolve([&](double y) { return s.value(y); }, t, x, q)) <=
            1.0 + 1e-12);
    }
  }
}

TEST_CASE("trivial triple gives the zero field") {
  const PicardResult r = picard_solve(NonlinearitySpec(), InitialDataSpec(), 1.0, small_grid(), {});
  CHECK(r.converged);
  for (double v : r.field.values()) CHECK(v == 0.0);
  const auto ux = derivative_field(NonlinearitySpec(), InitialDataSpec(), r.field, 1.0, {});
  for (double v : ux) CHECK(v == 0.0);
  CHECK(duhamel_residual(NonlinearitySpec(), InitialDataSpec(), r.field, {}) < 1e-12);
}

TEST_CASE("constant source gives c t") {
  const NonlinearitySpec f(ConstantSource{2.0});
  const PicardResult r = picard_solve(f, InitialDataSpec(), 1.0, small_grid(), {});
  CHECK(r.converged);
  double err = 0.0;
  for (std::size_t k = 0; k < r.field.nt(); ++k) {
    for (std::size_t j = 0; j < r.field.nx(); ++j) {
      err = std::max(err, std::fabs(r.field.at(k, j) - 2.0 * r.field.t()[k]));
    }
  }
  CHECK(err < 1e-8);
  CHECK(duhamel_residual(f, InitialDataSpec(), r.field, {}) < 1e-8);
}

TEST_CASE("heat flow of a sinusoid and its derivative") {
  const InitialDataSpec u0(SinusoidData{1.0, 1.0});
  const PicardResult r = picard_solve(NonlinearitySpec(), u0, 1.0, small_grid(), {});
  CHECK(r.converged);
  double err = 0.0;
  for (std::size_t k = 0; k < r.field.nt(); ++k) {
    for (std::size_t j = 0; j < r.field.nx(); ++j) {
      const double x = r.field.x()[j], t = r.field.t()[k];
      err = std::max(err, std::fabs(r.field.at(k, j) - std::exp(-t) * std::sin(x)));
    }
  }
  CHECK(err < 1e-6);
  const auto ux = derivative_field(NonlinearitySpec(), u0, r.field, 0.6, {});
  for (std::size_t j = 0; j < ux.size(); ++j) {
    CHECK(std::fabs(ux[j] - std::exp(-0.6) * std::cos(r.field.x()[j])) < 1e-6);
  }
}

TEST_CASE("linear gain balances diffusion of a sinusoid") {
  const NonlinearitySpec f(LinearSource{1.0});
  const InitialDataSpec u0(SinusoidData{1.0, 1.0});
  const double T = 0.5;
  const PicardResult r = picard_solve(f, u0, T, small_grid(), {});
  CHECK(r.converged);
  double err = 0.0;
  for (std::size_t k = 0; k < r.field.nt(); ++k) {
    for (std::size_t j = 0; j < r.field.nx(); ++j) {
      const double x = r.field.x()[j];
      if (std::fabs(x) <= 8.0 - 8.0 * std::sqrt(T)) {
        err = std::max(err, std::fabs(r.field.at(k, j) - std::sin(x)));
      }
    }
  }
  CHECK(err < 1e-6);
  // The converged iterate is a fixed point up to the iteration tolerance.
  CHECK(duhamel_residual(f, u0, r.field, {}) < 10.0 * MildConfig{}.tolerance);
}

TEST_CASE("self-similar field layout") {
  const ProfileSolution prof = solve_profile(0.5);
  const SpaceTimeField u = selfsim_field(prof, 1.0, 1.0, GridSpec{});
  for (std::size_t j = 0; j < u.nx(); ++j) CHECK(u.at(0, j) == 0.0);
  for (std::size_t k = 0; k < u.nt(); k += 8) {
    for (std::size_t j = 0; j < u.nx(); ++j) {
      CHECK(u.at(k, j) == -u.at(k, u.nx() - 1 - j));
    }
  }
  CHECK(std::fabs(u.at(u.nt() - 1, u.nx() - 1) - 0.25) < 1e-12);
  CHECK_THROWS_AS(selfsim_field(prof, 0.0, 1.0, GridSpec{}), DomainError);
}

TEST_CASE("derivative of the self-similar field follows the closed-form power law") {
  for (double p : {0.5, 0.25}) {
    const ProfileSolution prof = solve_profile(p);
    const SpaceTimeField u = selfsim_field(prof, 1.0, 1.0, GridSpec{});
    const NonlinearitySpec f(PowerLawSource{p});
    for (double t : {0.25, 0.5, 1.0}) {
      CAPTURE(p);
      CAPTURE(t);
      const double lhs = kernels::max_abs(derivative_field(f, InitialDataSpec(), u, t, {}));
      const double exact = selfsim_derivative_sup(p, prof.slope0, t);
      CHECK(std::fabs(lhs / exact - 1.0) < 1e-3);
    }
  }
}

TEST_CASE("self-similar field is a fixed point up to discretization") {
  const ProfileSolution prof = solve_profile(0.25);
  const NonlinearitySpec f(PowerLawSource{0.25});
  const GridSpec g;
  const double r1 = duhamel_residual(f, InitialDataSpec(), selfsim_field(prof, 1.0, 1.0, g), {});
  const double r2 = duhamel_residual(f, InitialDataSpec(),
                                     selfsim_field(prof, 1.0, 1.0, g.refined()), {}, {8, 8});
  CHECK(r1 < 1e-3);
  CHECK(r2 < r1 / 2.0);
}

TEST_CASE("scaled self-similar field solves the scaled source") {
  const ProfileSolution prof = solve_profile(0.5);
  const double c = 1.7;
  const SpaceTimeField u = selfsim_field(prof, c, 1.0, GridSpec{});
  CHECK(duhamel_residual(NonlinearitySpec(ScaledPowerLawSource{c, 0.5}), InitialDataSpec(), u,
                         {}) < 1e-4);
  CHECK(duhamel_residual(NonlinearitySpec(PowerLawSource{0.5}), InitialDataSpec(), u, {}) > 1e-2);
}

TEST_CASE("power-law Picard iteration starts from the self-similar field") {
  MildConfig cfg;
  cfg.max_iterations = 1;
  const PicardResult r =
      picard_solve(NonlinearitySpec(PowerLawSource{0.5}), InitialDataSpec(), 1.0, GridSpec{}, cfg);
  CHECK(r.seeded_selfsim);
  CHECK(r.iterations == 1);
  CHECK(r.last_change < 1e-4);
}

TEST_CASE("mild solver validation") {
  MildConfig cfg;
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  const PicardResult r = picard_solve(NonlinearitySpec(), InitialDataSpec(), 1.0, small_grid(), {});
  CHECK_THROWS_AS(derivative_field(NonlinearitySpec(), InitialDataSpec(), r.field, 0.0, {}),
                  DomainError);
  CHECK_THROWS_AS(duhamel_residual(NonlinearitySpec(), InitialDataSpec(), r.field, {}, {0, 1}),
                  ConfigError);
}
