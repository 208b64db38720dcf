#include "parasharp/estimate_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parasharp/errors.hpp"
#include "parasharp/kernels.hpp"

namespace parasharp {

void EstimateConfig::validate() const {
  mild.validate();
  if (residual.x_stride == 0 || residual.t_stride == 0) {
    throw ConfigError("estimate: residual strides must be positive");
  }
  if (!(trust_residual > 0.0)) throw ConfigError("estimate: trust_residual must be positive");
}

namespace {

void check_time(const SpaceTimeField& u, double t, const char* who) {
  if (!(t > 0.0) || t > u.final_time() * (1.0 + 1e-12)) {
    throw DomainError(std::string(who) + ": t must lie in (0, T]");
  }
}

}  // namespace

double data_slope_norm(const InitialDataSpec& u0, const SpaceTimeField& u) {
  if (u0.is_zero()) return 0.0;
  double m = 0.0;
  for (double x : u.x()) m = std::max(m, std::fabs(u0.derivative(x)));
  return m;
}

// Every supported source is monotone in |u|, so the sup of |f(u)| is taken
// at the sup of |u|.
double source_norm_at(const NonlinearitySpec& f, const SpaceTimeField& u, double tau) {
  if (f.is_zero()) return 0.0;
  std::vector<double> row(u.nx());
  u.row_at(tau, row);
  return f.sup_abs(kernels::max_abs(row));
}

double source_norm_upto(const NonlinearitySpec& f, const SpaceTimeField& u, double t) {
  if (f.is_zero()) return 0.0;
  double m = 0.0;
  for (std::size_t k = 0; k < u.nt() && u.t()[k] <= t; ++k) {
    m = std::max(m, kernels::max_abs(u.row(k)));
  }
  std::vector<double> row(u.nx());
  u.row_at(t, row);
  m = std::max(m, kernels::max_abs(row));
  return f.sup_abs(m);
}

double functional_F(const NonlinearitySpec& f, const InitialDataSpec& u0,
                    const SpaceTimeField& u, double t, const QuadratureConfig& cfg) {
  cfg.validate();
  check_time(u, t, "functional_F");
  double value = data_slope_norm(u0, u);
  if (f.is_zero()) return value;
  std::vector<double> breaks;
  for (double tk : u.t()) {
    if (tk > 0.0 && tk < t) breaks.push_back(tk);
  }
  auto g = [&](double tau) { return source_norm_at(f, u, tau); };
  value += abel_integral(g, t, cfg, breaks) / std::sqrt(std::numbers::pi);
  return value;
}

double functional_upper_bound(const NonlinearitySpec& f, const InitialDataSpec& u0,
                              const SpaceTimeField& u, double t) {
  check_time(u, t, "functional_upper_bound");
  return data_slope_norm(u0, u) +
         2.0 * std::sqrt(t / std::numbers::pi) * source_norm_upto(f, u, t);
}

std::vector<double> default_times(double T, int n) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("default_times: T must be positive");
  if (n < 1) throw DomainError("default_times: n must be >= 1");
  std::vector<double> times(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double frac = n == 1 ? 1.0 : static_cast<double>(k) / (n - 1);
    times[static_cast<std::size_t>(k)] = T * std::pow(16.0, frac - 1.0);
  }
  times.back() = T;
  return times;
}

EstimateReport verify_estimate(const NonlinearitySpec& f, const InitialDataSpec& u0,
                               const SpaceTimeField& u, const std::vector<double>& times,
                               double alpha, const EstimateConfig& cfg) {
  cfg.validate();
  if (times.empty()) throw DomainError("verify_estimate: times must not be empty");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("verify_estimate: alpha must be positive");
  }
  for (double t : times) check_time(u, t, "verify_estimate");

  EstimateReport rep;
  rep.times = times;
  rep.alpha = alpha;
  rep.residual = duhamel_residual(f, u0, u, cfg.mild, cfg.residual);
  rep.eps_quad = 10.0 * (cfg.mild.quad.abs_tol + rep.residual);
  rep.trusted = rep.residual <= cfg.trust_residual;

  for (double t : times) {
    const std::vector<double> ux = derivative_field(f, u0, u, t, cfg.mild);
    const double lhs = kernels::max_abs(ux);
    const double rhs = functional_F(f, u0, u, t, cfg.mild.quad);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.gap.push_back(lhs - rhs);
    rep.ebound.push_back(functional_upper_bound(f, u0, u, t));
  }
  rep.inf_gap = *std::min_element(rep.gap.begin(), rep.gap.end());
  rep.final_lhs = kernels::max_abs(derivative_field(f, u0, u, u.final_time(), cfg.mild));
  rep.alpha_flag = rep.final_lhs >= alpha;

  auto note = [&](const std::string& what, double t, double v) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at t=" << t << ": " << v;
    rep.violations.push_back(os.str());
  };
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (rep.gap[k] > rep.eps_quad) note("gap above eps_quad", times[k], rep.gap[k]);
    if (rep.rhs[k] > rep.ebound[k] + rep.eps_quad) {
      note("functional above its upper bound", times[k], rep.rhs[k] - rep.ebound[k]);
    }
  }
  const double T = u.final_time();
  const double floor = -(data_slope_norm(u0, u) +
                         2.0 * std::sqrt(T / std::numbers::pi) * source_norm_upto(f, u, T)) -
                       rep.eps_quad;
  if (rep.inf_gap < floor) note("inf_gap below its lower bound", T, rep.inf_gap - floor);
  return rep;
}

}  // namespace parasharp
