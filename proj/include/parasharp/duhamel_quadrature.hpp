#pragma once

// Space-time quadrature of the Duhamel source term
//   D(x, t) = int_0^t int K(x - y, t - tau) f(u(y, tau)) dy dtau,
//   K(z, s) = exp(-z^2 / 4s) / sqrt(4 pi s),
// and of its x-derivative, for a gridded u.
//
// The time integral is taken in sigma = sqrt(t - tau), which turns the
// (t - tau)^(-1/2) singularity of the derivative kernel into a bounded
// integrand. Sigma pieces are graded geometrically toward sigma = 0, and the
// early half of the time range toward tau = 0.
//
// For each sigma node the space integral is Gauss-Legendre on sub-cells of
// the x-grid applied to the cubic interpolant of f(u). The interpolation is
// folded into the kernel, so the space integral at every node is one dot
// product with a translation-invariant nodal kernel. Cells next to a sign
// change of u, and a band of cells around it, are re-integrated with f applied pointwise and quadrature
// graded toward the root, which keeps the |u|^p cusp of power-law sources
// from degrading the result.

#include <cstddef>
#include <span>
#include <vector>

#include "parasharp/nonlinearity.hpp"
#include "parasharp/space_time_field.hpp"

namespace parasharp {

struct DuhamelConfig {
  int cell_nodes = 4;         // Gauss-Legendre nodes per spatial sub-cell
  int sigma_nodes = 6;        // Gauss-Legendre nodes per sigma piece
  double sigma_ratio = 0.5;   // ratio of consecutive sigma piece ends
  double sigma_floor = 1e-7;  // innermost sigma, relative to sqrt(t)
  double tau_ratio = 0.25;    // same, for the early half graded toward tau = 0
  double tau_floor = 1e-4;    // innermost early piece, relative to t / 2
  double narrow = 0.5;        // max sub-cell width, in units of 2 sigma
  int cusp_levels = 14;       // geometric levels toward a root of u
  int cusp_cells = 8;         // cells re-integrated on each side of a root
  double cusp_ratio = 0.25;
  double window = 14.0;       // kernel truncated at |z| <= window * sigma

  void validate() const;
};

enum class KernelKind { Value, Derivative };

/// D (or D_x) at the x-grid nodes listed in `targets` and time t in (0, T].
std::vector<double> duhamel_term(const NonlinearitySpec& f, const SpaceTimeField& u,
                                 double t, std::span<const std::size_t> targets,
                                 KernelKind kind, const DuhamelConfig& cfg);

/// All node indices of the field's x-grid.
std::vector<std::size_t> all_nodes(const SpaceTimeField& u);

}  // namespace parasharp
