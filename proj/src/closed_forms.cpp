#include "parasharp/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "parasharp/errors.hpp"

namespace parasharp {

namespace {

constexpr double kFourOverSqrtPi = 2.0 * kTwoOverSqrtPi;

void check_p(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(who) + ": p must lie in (0, 1)");
  }
}

void check_eta(double eta, const char* who) {
  if (!std::isfinite(eta) || eta < 0.0) {
    throw DomainError(std::string(who) + ": eta must be finite and >= 0");
  }
}

// exp(-eta^2/4) / (2 + eta^2)
double gauss_over_q(double eta) {
  return std::exp(-0.25 * eta * eta) / (2.0 + eta * eta);
}

}  // namespace

SharpnessConstants sharpness_constants(double p) {
  check_p(p, "sharpness_constants");
  SharpnessConstants c;
  c.p = p;
  c.phi_p = phi(p);
  c.plateau = plateau(p);
  c.slope_lower = slope_lower(p);
  return c;
}

double phi(double p) {
  check_p(p, "phi");
  const double q = 1.0 - p;
  const double log_phi = p / q * std::log(q) + std::lgamma(1.0 / q) -
                         std::lgamma((3.0 - p) / (2.0 * q));
  return std::exp(log_phi);
}

double plateau(double p) {
  check_p(p, "plateau");
  return std::pow(1.0 - p, 1.0 / (1.0 - p));
}

double slope_lower(double p) { return plateau(p) / std::sqrt(1.0 + p); }

double slope_lower_strong(double p) { return plateau(p) / std::sqrt(1.0 - p); }

double selfsim_exponent(double p) {
  check_p(p, "selfsim_exponent");
  return (1.0 + p) / (2.0 * (1.0 - p));
}

double s0_decaying(double eta, const QuadratureConfig& cfg) {
  check_eta(eta, "s0_decaying");
  return (2.0 + eta * eta) * tail_integral_I(eta, cfg);
}

double s0_decaying_deriv(double eta, const QuadratureConfig& cfg) {
  check_eta(eta, "s0_decaying_deriv");
  return 2.0 * eta * tail_integral_I(eta, cfg) - gauss_over_q(eta);
}

double w0_eval(double eta, const QuadratureConfig& cfg) {
  check_eta(eta, "w0_eval");
  return std::max(0.0, 1.0 - kFourOverSqrtPi * s0_decaying(eta, cfg));
}

double w0_deriv(double eta, const QuadratureConfig& cfg) {
  check_eta(eta, "w0_deriv");
  return -kFourOverSqrtPi * s0_decaying_deriv(eta, cfg);
}

double w0_second_deriv(double eta, const QuadratureConfig& cfg) {
  check_eta(eta, "w0_second_deriv");
  const double q = 2.0 + eta * eta;
  const double e = std::exp(-0.25 * eta * eta);
  const double d_gauss_over_q = -0.5 * eta * e / q - 2.0 * eta * e / (q * q);
  const double second = 2.0 * tail_integral_I(eta, cfg) -
                        2.0 * eta * e / (q * q) - d_gauss_over_q;
  return -kFourOverSqrtPi * second;
}

double s0_residual_closed(double eta, const QuadratureConfig& cfg) {
  return w0_second_deriv(eta, cfg) + 0.5 * eta * w0_deriv(eta, cfg) -
         w0_eval(eta, cfg) + 1.0;
}

double s0_residual(double eta, const QuadratureConfig& cfg) {
  if (!std::isfinite(eta) || eta <= 0.0) {
    throw DomainError("s0_residual: eta must be positive and finite");
  }
  return s0_residual_closed(eta, cfg);
}

double selfsim_functional_closed(double p, double t) {
  check_p(p, "selfsim_functional_closed");
  if (!std::isfinite(t) || t <= 0.0) {
    throw DomainError("selfsim_functional_closed: t must be positive");
  }
  return phi(p) * std::pow(t, selfsim_exponent(p));
}

double selfsim_derivative_sup(double p, double slope0, double t) {
  check_p(p, "selfsim_derivative_sup");
  if (!(slope0 > 0.0) || !std::isfinite(slope0)) {
    throw DomainError("selfsim_derivative_sup: slope0 must be positive");
  }
  if (!std::isfinite(t) || t <= 0.0) {
    throw DomainError("selfsim_derivative_sup: t must be positive");
  }
  return slope0 * std::pow(t, selfsim_exponent(p));
}

double eta_prime() {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  return sqrt_pi *
         (std::sqrt(1.0 + 1.0 / (4.0 * std::sqrt(2.0 * std::numbers::pi))) - 1.0);
}

double profile_lower_bound(double eta) {
  return std::min(std::fabs(eta), eta_prime()) / (8.0 * std::numbers::sqrt2);
}

}  // namespace parasharp
