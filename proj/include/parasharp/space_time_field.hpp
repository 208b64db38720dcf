#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace parasharp {

/// Discretization of [-X, X] x [0, T].
struct GridSpec {
  double X = 0.0;      // half-width; 0 selects 8 sqrt(T) + 4
  double dx = 0.05;    // target spacing; rounded so that x = 0 is a node
  int nt = 64;         // number of time steps
  double grading = 2.0;  // t_k = T (k / nt)^grading

  /// Doubles the spatial and temporal density.
  GridSpec refined() const;
};

/// Samples u(x_j, t_k) on a uniform symmetric x-grid (x = 0 is a node) and
/// an ascending t-grid starting at 0. Outside [-X, X] the field is continued
/// by its edge values.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  /// Zero field. Throws DomainError on malformed grids.
  SpaceTimeField(std::vector<double> x_grid, std::vector<double> t_grid);
  static SpaceTimeField on_grid(const GridSpec& spec, double T);

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& t() const { return t_; }
  std::size_t nx() const { return x_.size(); }
  std::size_t nt() const { return t_.size(); }
  double dx() const { return dx_; }
  double half_width() const { return x_.back(); }
  double final_time() const { return t_.back(); }

  std::span<const double> row(std::size_t k) const;
  std::span<double> row(std::size_t k);
  double at(std::size_t k, std::size_t j) const { return values_[k * nx() + j]; }
  double& at(std::size_t k, std::size_t j) { return values_[k * nx() + j]; }
  const std::vector<double>& values() const { return values_; }

  /// u(., tau) on the x-grid by 4-point Lagrange interpolation between rows.
  void row_at(double tau, std::span<double> out) const;

  /// Value at an arbitrary x from a row sampled on this x-grid: 4-point
  /// Lagrange interpolation, constant continuation beyond the edges.
  double interpolate_x(std::span<const double> row, double x) const;

  /// Index of the node nearest to x = 0.
  std::size_t centre() const { return (nx() - 1) / 2; }

 private:
  std::vector<double> x_;
  std::vector<double> t_;
  std::vector<double> values_;
  double dx_ = 0.0;
};

/// Lagrange weights at position `xi` (in cell units, node 1 at 0, node 2 at
/// 1) for the four equally spaced nodes -1, 0, 1, 2.
void cubic_weights(double xi, double w[4]);

}  // namespace parasharp
