#include "parasharp/space_time_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "parasharp/errors.hpp"
#include "parasharp/kernels.hpp"

namespace parasharp {

GridSpec GridSpec::refined() const {
  GridSpec r = *this;
  r.dx = dx / 2.0;
  r.nt = nt * 2;
  return r;
}

SpaceTimeField::SpaceTimeField(std::vector<double> x_grid, std::vector<double> t_grid)
    : x_(std::move(x_grid)), t_(std::move(t_grid)) {
  const std::size_t n = x_.size();
  if (n < 5 || n % 2 == 0) {
    throw DomainError("field: x-grid needs an odd number (>= 5) of nodes");
  }
  dx_ = (x_.back() - x_.front()) / static_cast<double>(n - 1);
  if (!(dx_ > 0.0)) throw DomainError("field: x-grid must be ascending");
  for (std::size_t j = 0; j < n; ++j) {
    const double expect = x_.front() + dx_ * static_cast<double>(j);
    if (std::fabs(x_[j] - expect) > 1e-9 * dx_) {
      throw DomainError("field: x-grid must be uniform");
    }
  }
  if (std::fabs(x_.front() + x_.back()) > 1e-9 * dx_) {
    throw DomainError("field: x-grid must be symmetric about 0");
  }
  if (t_.size() < 4) throw DomainError("field: t-grid needs at least 4 levels");
  if (t_.front() != 0.0) throw DomainError("field: t-grid must start at 0");
  for (std::size_t k = 1; k < t_.size(); ++k) {
    if (!(t_[k] > t_[k - 1])) throw DomainError("field: t-grid must be ascending");
  }
  values_.assign(n * t_.size(), 0.0);
}

SpaceTimeField SpaceTimeField::on_grid(const GridSpec& spec, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("field: T must be positive");
  if (!(spec.dx > 0.0)) throw DomainError("field: dx must be positive");
  if (spec.nt < 3) throw DomainError("field: nt must be >= 3");
  if (!(spec.grading >= 1.0)) throw DomainError("field: grading must be >= 1");
  const double X = spec.X > 0.0 ? spec.X : 8.0 * std::sqrt(T) + 4.0;
  const auto m = static_cast<std::size_t>(std::ceil(X / spec.dx - 1e-9));
  const double h = X / static_cast<double>(m);
  std::vector<double> x(2 * m + 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = (static_cast<double>(j) - static_cast<double>(m)) * h;
  }
  x.front() = -X;
  x.back() = X;
  std::vector<double> t(static_cast<std::size_t>(spec.nt) + 1);
  for (int k = 0; k <= spec.nt; ++k) {
    t[k] = T * std::pow(static_cast<double>(k) / spec.nt, spec.grading);
  }
  t.back() = T;
  return SpaceTimeField(std::move(x), std::move(t));
}

std::span<const double> SpaceTimeField::row(std::size_t k) const {
  return {values_.data() + k * nx(), nx()};
}

std::span<double> SpaceTimeField::row(std::size_t k) {
  return {values_.data() + k * nx(), nx()};
}

void SpaceTimeField::row_at(double tau, std::span<double> out) const {
  const std::size_t last = t_.size() - 1;
  tau = std::clamp(tau, 0.0, t_.back());
  auto it = std::upper_bound(t_.begin(), t_.end(), tau);
  std::size_t m = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  if (m < last && t_[m] == tau) {
    std::copy_n(row(m).begin(), nx(), out.begin());
    return;
  }
  if (m >= last) {
    std::copy_n(row(last).begin(), nx(), out.begin());
    return;
  }
  const std::size_t s = std::min(m == 0 ? 0 : m - 1, last - 3);
  std::array<double, 4> c{};
  for (int a = 0; a < 4; ++a) {
    double l = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      l *= (tau - t_[s + b]) / (t_[s + a] - t_[s + b]);
    }
    c[a] = l;
  }
  kernels::lincomb4(c, {row(s), row(s + 1), row(s + 2), row(s + 3)}, out);
}

void cubic_weights(double xi, double w[4]) {
  const double a = xi + 1.0, b = xi, c = xi - 1.0, d = xi - 2.0;
  w[0] = -b * c * d / 6.0;
  w[1] = a * c * d / 2.0;
  w[2] = -a * b * d / 2.0;
  w[3] = a * b * c / 6.0;
}

double SpaceTimeField::interpolate_x(std::span<const double> r, double x) const {
  const std::size_t n = nx();
  if (x <= x_.front()) return r[0];
  if (x >= x_.back()) return r[n - 1];
  const double pos = (x - x_.front()) / dx_;
  auto c = static_cast<std::size_t>(pos);
  if (c > n - 2) c = n - 2;
  const double xi = pos - static_cast<double>(c);
  double w[4];
  cubic_weights(xi, w);
  auto node = [&](long i) {
    return r[static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(n) - 1))];
  };
  const long ci = static_cast<long>(c);
  return ((w[0] * node(ci - 1) + w[1] * node(ci)) + w[2] * node(ci + 1)) + w[3] * node(ci + 2);
}

}  // namespace parasharp
