#pragma once

// Bounded mild solutions of u_t - u_xx = f(u), u(., 0) = u0, as fixed points
// of the Duhamel representation
//   u(x, t) = (1/sqrt(pi)) int u0(x + 2 sqrt(t) w) exp(-w^2) dw
//           + int_0^t int K(x - y, t - tau) f(u(y, tau)) dy dtau.

#include <functional>
#include <vector>

#include "parasharp/duhamel_quadrature.hpp"
#include "parasharp/initial_data.hpp"
#include "parasharp/nonlinearity.hpp"
#include "parasharp/profile_solver.hpp"
#include "parasharp/space_time_field.hpp"
#include "parasharp/specfun.hpp"

namespace parasharp {

struct MildConfig {
  QuadratureConfig quad;
  DuhamelConfig duhamel;
  int max_iterations = 40;
  double tolerance = 1e-8;  // sup-norm change between Picard iterates

  void validate() const;
};

/// Gauss-Hermite value of (1/sqrt(pi)) int v(x + 2 sqrt(t) w) exp(-w^2) dw.
double heat_convolve(const std::function<double(double)>& v, double t, double x,
                     const QuadratureConfig& cfg);

struct PicardResult {
  SpaceTimeField field;
  int iterations = 0;
  double last_change = 0.0;
  bool converged = false;
  /// Iteration started from the self-similar solution instead of the heat
  /// flow of u0 (power-law sources with zero data, where u = 0 is also a
  /// fixed point).
  bool seeded_selfsim = false;
};

PicardResult picard_solve(const NonlinearitySpec& f, const InitialDataSpec& u0,
                          double T, const GridSpec& grid, const MildConfig& cfg);

/// u_x(., t) on the field's x-grid: heat flow of u0' plus the Duhamel
/// derivative term.
std::vector<double> derivative_field(const NonlinearitySpec& f, const InitialDataSpec& u0,
                                     const SpaceTimeField& u, double t,
                                     const MildConfig& cfg);

/// u(x, t) = w(x / sqrt(t)) (c t)^(1/(1-p)), zero at t = 0. Solves the
/// equation with source c f_p.
SpaceTimeField selfsim_field(const ProfileSolution& profile, double c, double T,
                             const GridSpec& grid);

struct ResidualOptions {
  std::size_t x_stride = 4;
  std::size_t t_stride = 4;
};

/// Sup over a strided subset of the grid of |right-hand side - u|, including
/// the t = 0 row against u0.
double duhamel_residual(const NonlinearitySpec& f, const InitialDataSpec& u0,
                        const SpaceTimeField& u, const MildConfig& cfg,
                        const ResidualOptions& opts = {});

}  // namespace parasharp
