#include "parasharp/mild_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parasharp/errors.hpp"
#include "parasharp/kernels.hpp"
#include "parasharp/parallel.hpp"

namespace parasharp {

void MildConfig::validate() const {
  quad.validate();
  duhamel.validate();
  if (max_iterations < 1) throw ConfigError("picard: max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw ConfigError("picard: tolerance must be positive");
}

double heat_convolve(const std::function<double(double)>& v, double t, double x,
                     const QuadratureConfig& cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat_convolve: t must be positive");
  const QuadratureRule& gh = gauss_hermite(cfg.gauss_hermite_order);
  const double scale = 2.0 * std::sqrt(t);
  double sum = 0.0;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    const double val = v(x + scale * gh.nodes[i]);
    if (!std::isfinite(val)) throw EvaluationError("heat_convolve: non-finite sample");
    sum += gh.weights[i] * val;
  }
  return sum / std::sqrt(std::numbers::pi);
}

namespace {

// Heat flow of u0 (or of u0') on every node of rows 1..n of the field.
std::vector<double> heat_rows(const InitialDataSpec& u0, const SpaceTimeField& u,
                              bool derivative, const QuadratureConfig& cfg) {
  const std::size_t nx = u.nx(), nt = u.nt();
  std::vector<double> out(nx * nt, 0.0);
  if (u0.is_zero()) return out;
  auto v = [&](double y) { return derivative ? u0.derivative(y) : u0.value(y); };
  parallel_for(nt - 1, [&](std::size_t q) {
    const std::size_t k = q + 1;
    for (std::size_t j = 0; j < nx; ++j) {
      out[k * nx + j] = heat_convolve(v, u.t()[k], u.x()[j], cfg);
    }
  });
  return out;
}

}  // namespace

SpaceTimeField selfsim_field(const ProfileSolution& profile, double c, double T,
                             const GridSpec& grid) {
  if (!profile.converged) throw DomainError("selfsim_field: profile did not converge");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("selfsim_field: c must be positive");
  SpaceTimeField u = SpaceTimeField::on_grid(grid, T);
  const double expo = 1.0 / (1.0 - profile.p);
  for (std::size_t k = 1; k < u.nt(); ++k) {
    const double t = u.t()[k];
    const double amp = std::pow(c * t, expo);
    const double root = std::sqrt(t);
    auto r = u.row(k);
    for (std::size_t j = 0; j < u.nx(); ++j) {
      r[j] = odd_extend(profile, u.x()[j] / root) * amp;
    }
  }
  return u;
}

PicardResult picard_solve(const NonlinearitySpec& f, const InitialDataSpec& u0,
                          double T, const GridSpec& grid, const MildConfig& cfg) {
  cfg.validate();
  PicardResult res;
  SpaceTimeField u = SpaceTimeField::on_grid(grid, T);
  const std::size_t nx = u.nx(), nt = u.nt();
  for (std::size_t j = 0; j < nx; ++j) u.at(0, j) = u0.value(u.x()[j]);
  const std::vector<double> heat = heat_rows(u0, u, false, cfg.quad);

  if (f.has_cusp_at_zero() && u0.is_zero()) {
    const ProfileSolution profile = solve_profile(f.power());
    u = selfsim_field(profile, f.scale(), T, grid);
    res.seeded_selfsim = true;
  } else {
    for (std::size_t k = 1; k < nt; ++k) {
      for (std::size_t j = 0; j < nx; ++j) u.at(k, j) = heat[k * nx + j];
    }
  }

  const std::vector<std::size_t> targets = all_nodes(u);
  SpaceTimeField next = u;
  std::vector<double> diff(nx);
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    double change = 0.0;
    for (std::size_t k = 1; k < nt; ++k) {
      const std::vector<double> d =
          duhamel_term(f, u, u.t()[k], targets, KernelKind::Value, cfg.duhamel);
      auto row = next.row(k);
      for (std::size_t j = 0; j < nx; ++j) {
        row[j] = heat[k * nx + j] + d[j];
        diff[j] = row[j] - u.at(k, j);
      }
      change = std::max(change, kernels::max_abs(diff));
    }
    std::swap(u, next);
    res.iterations = it;
    res.last_change = change;
    if (change < cfg.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.field = std::move(u);
  return res;
}

std::vector<double> derivative_field(const NonlinearitySpec& f, const InitialDataSpec& u0,
                                     const SpaceTimeField& u, double t,
                                     const MildConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0) || t > u.final_time() * (1.0 + 1e-12)) {
    throw DomainError("derivative_field: t must lie in (0, T]");
  }
  const std::size_t nx = u.nx();
  std::vector<double> out(nx, 0.0);
  if (!u0.is_zero()) {
    auto v = [&](double y) { return u0.derivative(y); };
    for (std::size_t j = 0; j < nx; ++j) out[j] = heat_convolve(v, t, u.x()[j], cfg.quad);
  }
  const std::vector<std::size_t> targets = all_nodes(u);
  const std::vector<double> d =
      duhamel_term(f, u, t, targets, KernelKind::Derivative, cfg.duhamel);
  for (std::size_t j = 0; j < nx; ++j) out[j] += d[j];
  return out;
}

double duhamel_residual(const NonlinearitySpec& f, const InitialDataSpec& u0,
                        const SpaceTimeField& u, const MildConfig& cfg,
                        const ResidualOptions& opts) {
  cfg.validate();
  if (opts.x_stride == 0 || opts.t_stride == 0) {
    throw ConfigError("duhamel_residual: strides must be positive");
  }
  const std::size_t nx = u.nx(), nt = u.nt();
  std::vector<std::size_t> targets;
  for (std::size_t j = u.centre() % opts.x_stride; j < nx; j += opts.x_stride) {
    targets.push_back(j);
  }
  double worst = 0.0;
  for (std::size_t j : targets) {
    worst = std::max(worst, std::fabs(u.at(0, j) - u0.value(u.x()[j])));
  }
  std::vector<std::size_t> rows;
  for (std::size_t k = opts.t_stride; k < nt; k += opts.t_stride) rows.push_back(k);
  if (rows.empty() || rows.back() != nt - 1) rows.push_back(nt - 1);
  auto v = [&](double y) { return u0.value(y); };
  for (std::size_t k : rows) {
    const double t = u.t()[k];
    const std::vector<double> d = duhamel_term(f, u, t, targets, KernelKind::Value, cfg.duhamel);
    for (std::size_t q = 0; q < targets.size(); ++q) {
      const std::size_t j = targets[q];
      const double heat = u0.is_zero() ? 0.0 : heat_convolve(v, t, u.x()[j], cfg.quad);
      worst = std::max(worst, std::fabs(heat + d[q] - u.at(k, j)));
    }
  }
  return worst;
}

}  // namespace parasharp
