#include "parasharp/sharpness_suite.hpp"

#include <cmath>
#include <numbers>

#include "parasharp/closed_forms.hpp"
#include "parasharp/errors.hpp"
#include "parasharp/kernels.hpp"
#include "parasharp/mild_solver.hpp"
#include "parasharp/nonlinearity.hpp"
#include "parasharp/parallel.hpp"

namespace parasharp {

void SharpnessConfig::validate() const {
  if (!(profile_tol > 0.0)) throw ConfigError("sharpness: profile_tol must be positive");
  if (!(eta_max > 0.0)) throw ConfigError("sharpness: eta_max must be positive");
  shoot.validate();
  quad.validate();
}

ConvergenceReport convergence_report(const ProfileSolution& profile, double X,
                                     const QuadratureConfig& cfg) {
  if (!(X > 0.0) || !std::isfinite(X)) throw DomainError("convergence_report: X must be positive");
  if (X > profile.eta_max) throw DomainError("convergence_report: X exceeds the profile range");
  ConvergenceReport rep;
  rep.p = profile.p;
  rep.X = X;
  for (std::size_t i = 0; i < profile.grid.size() && profile.grid[i] <= X + 1e-12; ++i) {
    const double eta = profile.grid[i];
    rep.w0_dist = std::max(rep.w0_dist, std::fabs(profile.w[i] - w0_eval(eta, cfg)));
    rep.w0_deriv_dist =
        std::max(rep.w0_deriv_dist, std::fabs(profile.w_prime[i] - w0_deriv(eta, cfg)));
  }
  return rep;
}

ConvergenceReport convergence_report(double p, double X, const SharpnessConfig& cfg) {
  cfg.validate();
  if (!(p > 0.0 && p <= 0.5)) throw DomainError("convergence_report: p must lie in (0, 1/2]");
  const ProfileSolution prof = solve_profile(p, cfg.profile_tol, cfg.eta_max, cfg.shoot);
  return convergence_report(prof, X, cfg.quad);
}

std::vector<GapRow> gap_sweep(int n_max, double T, double X, const SharpnessConfig& cfg) {
  cfg.validate();
  if (n_max < 1) throw DomainError("gap_sweep: n_max must be >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("gap_sweep: T must be positive");
  if (!(X > 0.0) || X > cfg.eta_max) throw DomainError("gap_sweep: X must lie in (0, eta_max]");
  std::vector<GapRow> rows;
  for (long n = 1; n <= n_max; n *= 2) {
    GapRow r;
    r.n = static_cast<int>(n);
    r.p = 1.0 / (2.0 * static_cast<double>(n));
    r.phi_p = phi(r.p);
    rows.push_back(r);
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    GapRow& r = rows[i];
    try {
      const ProfileSolution prof = solve_profile(r.p, cfg.profile_tol, cfg.eta_max, cfg.shoot);
      r.slope0 = prof.slope0;
      r.gap = r.slope0 - r.phi_p;
      r.scaled_inf = r.gap * std::pow(T, selfsim_exponent(r.p));
      const ConvergenceReport conv = convergence_report(prof, X, cfg.quad);
      r.w0_dist = conv.w0_dist;
      r.w0_deriv_dist = conv.w0_deriv_dist;
      r.ok = prof.converged && slope_lower(r.p) < r.slope0 && r.slope0 < r.phi_p &&
             r.phi_p < kTwoOverSqrtPi;
      if (!r.ok) r.message = "slope chain violated";
    } catch (const Error& e) {
      r.ok = false;
      r.message = e.what();
    }
  });
  return rows;
}

double construction_scale(double alpha, double T) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("construction_scale: alpha must be positive");
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("construction_scale: T must be positive");
  return std::sqrt(std::numbers::pi) * (alpha + 1.0) / (2.0 * std::sqrt(T));
}

ConstructionRecord theorem_construction(double alpha, double T, int n,
                                        const SharpnessConfig& cfg,
                                        const std::optional<GridSpec>& grid,
                                        const MildConfig& mild) {
  cfg.validate();
  if (n < 1) throw DomainError("theorem_construction: n must be >= 1");
  ConstructionRecord rec;
  rec.alpha = alpha;
  rec.T = T;
  rec.n = n;
  rec.p = 1.0 / (2.0 * n);
  rec.c = construction_scale(alpha, T);
  const ProfileSolution prof = solve_profile(rec.p, cfg.profile_tol, cfg.eta_max, cfg.shoot);
  rec.slope0 = prof.slope0;
  rec.phi_p = phi(rec.p);
  const double scale = std::pow(rec.c, 1.0 / (1.0 - rec.p)) * std::pow(T, selfsim_exponent(rec.p));
  rec.final_norm = rec.slope0 * scale;
  rec.alpha_flag = rec.final_norm >= alpha;
  rec.inf_gap = (rec.slope0 - rec.phi_p) * scale;

  if (grid) {
    const SpaceTimeField u = selfsim_field(prof, rec.c, T, *grid);
    const NonlinearitySpec f(ScaledPowerLawSource{rec.c, rec.p});
    const InitialDataSpec u0;
    FieldCheck chk;
    chk.lhs = kernels::max_abs(derivative_field(f, u0, u, T, mild));
    chk.rhs = functional_F(f, u0, u, T, mild.quad);
    chk.residual = duhamel_residual(f, u0, u, mild);
    rec.field = chk;
  }
  return rec;
}

}  // namespace parasharp
