#pragma once

// The power-law family p_n = 1/(2n): the gap w_p'(0) - phi(p) as p -> 0,
// convergence of the profiles to w0, and the scaled construction whose
// derivative norm at T tends to alpha + 1.

#include <optional>
#include <string>
#include <vector>

#include "parasharp/estimate_engine.hpp"
#include "parasharp/profile_solver.hpp"
#include "parasharp/specfun.hpp"

namespace parasharp {

struct SharpnessConfig {
  double profile_tol = 1e-10;
  double eta_max = 12.0;
  ShootConfig shoot;
  QuadratureConfig quad;

  void validate() const;
};

struct ConvergenceReport {
  double p = 0.0;
  double X = 0.0;
  double w0_dist = 0.0;        // sup over [0, X] of |w_p - w0|
  double w0_deriv_dist = 0.0;  // sup over [0, X] of |w_p' - w0'|
};

/// Distances between a solved profile and w0 on the profile grid within [0, X].
ConvergenceReport convergence_report(const ProfileSolution& profile, double X,
                                     const QuadratureConfig& cfg = {});
ConvergenceReport convergence_report(double p, double X = 6.0, const SharpnessConfig& cfg = {});

struct GapRow {
  int n = 0;
  double p = 0.0;
  double slope0 = 0.0;
  double phi_p = 0.0;
  double gap = 0.0;         // slope0 - phi_p
  double scaled_inf = 0.0;  // gap T^((1+p)/(2(1-p)))
  double w0_dist = 0.0;
  double w0_deriv_dist = 0.0;
  bool ok = false;  // solver converged and slope_lower < slope0 < phi_p < 2/sqrt(pi)
  std::string message;
};

/// n = 1, 2, 4, ... <= n_max. Rows where the solver fails are flagged and the
/// sweep continues.
std::vector<GapRow> gap_sweep(int n_max, double T, double X, const SharpnessConfig& cfg = {});

/// sqrt(pi) (alpha + 1) / (2 sqrt(T)).
double construction_scale(double alpha, double T);

struct FieldCheck {
  double lhs = 0.0;  // ||u_x(., T)|| from the Duhamel derivative of the field
  double rhs = 0.0;  // F_T on the field
  double residual = 0.0;
};

struct ConstructionRecord {
  double alpha = 0.0;
  double T = 0.0;
  int n = 0;
  double p = 0.0;
  double c = 0.0;
  double slope0 = 0.0;
  double phi_p = 0.0;
  double final_norm = 0.0;  // slope0 c^(1/(1-p)) T^((1+p)/(2(1-p)))
  bool alpha_flag = false;  // final_norm >= alpha
  double inf_gap = 0.0;     // c^(1/(1-p)) T^((1+p)/(2(1-p))) (slope0 - phi_p)
  std::optional<FieldCheck> field;
};

/// Closed-form record for p = 1/(2n) and c = construction_scale(alpha, T).
/// With `grid`, also tabulates the field and evaluates lhs, F_T and the
/// Duhamel residual on it.
ConstructionRecord theorem_construction(double alpha, double T, int n,
                                        const SharpnessConfig& cfg = {},
                                        const std::optional<GridSpec>& grid = std::nullopt,
                                        const MildConfig& mild = {});

}  // namespace parasharp
