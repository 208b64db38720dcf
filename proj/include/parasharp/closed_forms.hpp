#pragma once

// Closed-form quantities of the power-law self-similar family
//   u(x, t) = w_p(x / sqrt(t)) t^(1/(1-p)),   f_p(u) = u |u|^(p-1),
// and of its p -> 0 limit profile
//   w0(eta) = 1 - (4/sqrt(pi)) (2 + eta^2) I(eta),
// which solves w'' + eta w'/2 - w = -1 with w(0) = 0, w(inf) = 1.

#include "parasharp/specfun.hpp"

namespace parasharp {

inline constexpr double kTwoOverSqrtPi = 1.1283791670955126;

struct SharpnessConstants {
  double p = 0.0;
  double phi_p = 0.0;        // functional value per unit t-power
  double plateau = 0.0;      // (1-p)^(1/(1-p)), far-field limit of w_p
  double slope_lower = 0.0;  // plateau / sqrt(1+p), lower bound on w_p'(0)
  double slope_upper = kTwoOverSqrtPi;
};

SharpnessConstants sharpness_constants(double p);

/// phi(p) = (1-p)^(p/(1-p)) Gamma(1/(1-p)) / Gamma((3-p)/(2(1-p))).
double phi(double p);

double plateau(double p);

/// plateau / sqrt(1+p).
double slope_lower(double p);

/// plateau / sqrt(1-p). Stronger variant of the slope lower bound; it is
/// violated by the computed profiles for moderate p and is only reported.
double slope_lower_strong(double p);

/// Time exponent (1+p) / (2(1-p)) of the derivative sup-norm and of F_t on
/// the self-similar family.
double selfsim_exponent(double p);

/// (2 + eta^2) I(eta): the decaying solution of the homogeneous linear
/// equation w'' + eta w'/2 - w = 0, and its derivative.
double s0_decaying(double eta, const QuadratureConfig& cfg);
double s0_decaying_deriv(double eta, const QuadratureConfig& cfg);

double w0_eval(double eta, const QuadratureConfig& cfg);
double w0_deriv(double eta, const QuadratureConfig& cfg);
/// Analytic second derivative, eta >= 0.
double w0_second_deriv(double eta, const QuadratureConfig& cfg);

/// w0'' + eta w0'/2 - w0 + 1 from the closed forms, eta > 0.
double s0_residual(double eta, const QuadratureConfig& cfg);
/// Same expression, also defined at eta = 0.
double s0_residual_closed(double eta, const QuadratureConfig& cfg);

/// phi(p) t^((1+p)/(2(1-p))).
double selfsim_functional_closed(double p, double t);

/// slope0 t^((1+p)/(2(1-p))).
double selfsim_derivative_sup(double p, double slope0, double t);

/// Breakpoint sqrt(pi) (sqrt(1 + 1/(4 sqrt(2 pi))) - 1) of the piecewise
/// linear lower bound on the profiles.
double eta_prime();

/// min(eta, eta') / (8 sqrt(2)).
double profile_lower_bound(double eta);

}  // namespace parasharp
