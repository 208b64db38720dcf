#pragma once

// The functional
//   F_t(f, u0, u) = ||u0'|| + (1/sqrt(pi)) int_0^t ||f(u(., tau))|| (t - tau)^(-1/2) dtau
// and the comparison ||u_x(., t)|| <= F_t on a computed solution. All norms
// are sup norms over x.

#include <string>
#include <vector>

#include "parasharp/initial_data.hpp"
#include "parasharp/mild_solver.hpp"
#include "parasharp/nonlinearity.hpp"
#include "parasharp/space_time_field.hpp"

namespace parasharp {

struct EstimateConfig {
  MildConfig mild;
  ResidualOptions residual;
  double trust_residual = 1e-2;  // residuals above this mark the report untrusted

  void validate() const;
};

/// Sup of |u0'| over the field's x-grid.
double data_slope_norm(const InitialDataSpec& u0, const SpaceTimeField& u);

/// Sup over x of |f(u(x, tau))| on the time-interpolated row.
double source_norm_at(const NonlinearitySpec& f, const SpaceTimeField& u, double tau);

/// Sup of |f(u)| over all rows with t_k <= t and the interpolated row at t.
double source_norm_upto(const NonlinearitySpec& f, const SpaceTimeField& u, double t);

double functional_F(const NonlinearitySpec& f, const InitialDataSpec& u0,
                    const SpaceTimeField& u, double t, const QuadratureConfig& cfg);

/// ||u0'|| + (2 sqrt(t) / sqrt(pi)) sup |f(u)| over times up to t.
double functional_upper_bound(const NonlinearitySpec& f, const InitialDataSpec& u0,
                              const SpaceTimeField& u, double t);

/// n geometrically spaced times from T/16 to T.
std::vector<double> default_times(double T, int n = 16);

struct EstimateReport {
  std::vector<double> times;
  std::vector<double> lhs;     // ||u_x(., t)||
  std::vector<double> rhs;     // F_t
  std::vector<double> gap;     // lhs - rhs
  std::vector<double> ebound;  // functional_upper_bound
  double inf_gap = 0.0;
  double final_lhs = 0.0;  // ||u_x(., T)||
  double alpha = 0.0;
  bool alpha_flag = false;  // final_lhs >= alpha
  double residual = 0.0;    // duhamel_residual of the input field
  double eps_quad = 0.0;    // 10 (abs_tol + residual)
  bool trusted = false;
  std::vector<std::string> violations;
};

/// Builds the report and checks gap <= eps, rhs <= ebound + eps and the lower
/// bound on inf_gap. Violations are listed, not thrown.
EstimateReport verify_estimate(const NonlinearitySpec& f, const InitialDataSpec& u0,
                               const SpaceTimeField& u, const std::vector<double>& times,
                               double alpha, const EstimateConfig& cfg = {});

}  // namespace parasharp
