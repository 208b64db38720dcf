#pragma once

// Special functions and the quadrature rules shared by every other module.

#include <functional>
#include <span>
#include <vector>

namespace parasharp {

struct QuadratureConfig {
  int gauss_hermite_order = 64;  // nodes for integrals against exp(-w^2)
  int abel_nodes = 64;           // Gauss-Legendre order after desingularizing
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double tail_cutoff = 14.0;  // truncation length for infinite integrals

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Gamma function for x > 0.
double gamma_fn(double x);

/// Complementary error function.
double erfc_fn(double x);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight exp(-w^2) on the real line. Nodes are
/// ascending. Tables are computed once per order and shared.
const QuadratureRule& gauss_hermite(int order);

/// Gauss-Legendre rule on [-1, 1], ascending nodes.
const QuadratureRule& gauss_legendre(int order);

/// Fixed-order Gauss-Legendre sum of `f` over [a, b].
double gauss_legendre_fixed(const std::function<double(double)>& f, double a,
                            double b, int order);

/// Adaptive Gauss-Legendre: compares the rule on an interval against the sum
/// over its two halves and bisects until the difference is below `tol`
/// (absolute, distributed over subintervals in proportion to their length).
/// Throws SolverError when `max_depth` is reached without meeting `tol`.
double adaptive_gauss_legendre(const std::function<double(double)>& f,
                               double a, double b, int order, double tol,
                               int max_depth = 40);

/// Integral of g(tau) (t - tau)^(-1/2) over [0, t]. Substitutes
/// tau = t - sigma^2 and integrates 2 g(t - sigma^2) over [0, sqrt(t)].
/// `breakpoints` are tau locations where g may have kinks or jumps; the
/// sigma range is split there.
double abel_integral(const std::function<double(double)>& g, double t,
                     const QuadratureConfig& cfg,
                     std::span<const double> breakpoints = {});

/// I(eta) = integral over [eta, inf) of exp(-s^2/4) / (2 + s^2)^2 ds.
double tail_integral_I(double eta, const QuadratureConfig& cfg);

}  // namespace parasharp
