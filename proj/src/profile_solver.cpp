#include "parasharp/profile_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "parasharp/closed_forms.hpp"
#include "parasharp/errors.hpp"
#include "parasharp/specfun.hpp"

namespace parasharp {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

// Splice into the linearized tail once the plateau deficit drops below this
// fraction of the plateau.
constexpr double kSpliceDeficit = 1e-5;
constexpr long kMaxSteps = 2'000'000;
// The source term is not smooth at w = 0, so integration starts from the
// local series at this eta instead of at the origin.
constexpr double kSeriesStart = 1e-4;

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("profile: p must lie in (0, 1)");
}

std::size_t grid_intervals(double eta_max, double step) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(eta_max / step - 1e-9)));
}

}  // namespace

void ShootConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw ConfigError("shooting: integrator tolerances must be positive");
  }
  if (!(first_step > 0.0)) throw ConfigError("shooting: first_step must be positive");
  if (!(eps_class > 0.0) || !(eps_plateau > 0.0)) {
    throw ConfigError("shooting: classification margins must be positive");
  }
  if (!(grid_step > 0.0)) throw ConfigError("shooting: grid_step must be positive");
}

const char* shot_tag_name(ShotTag tag) {
  switch (tag) {
    case ShotTag::Overshoot: return "overshoot";
    case ShotTag::Undershoot: return "undershoot";
    case ShotTag::Converged: return "converged";
  }
  return "?";
}

double ode_rhs(double p, double eta, double w, double wp) {
  double power = 0.0;
  if (w > 0.0) {
    power = std::pow(w, p);
  } else if (w < 0.0) {
    power = -std::pow(-w, p);
  }
  return -0.5 * eta * wp - power + w / (1.0 - p);
}

Shot integrate_shot(double p, double slope, double eta_max,
                    const ShootConfig& cfg, bool record) {
  check_p(p);
  cfg.validate();
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    throw DomainError("integrate_shot: slope must be positive");
  }
  if (!(eta_max > 0.0) || !std::isfinite(eta_max)) {
    throw DomainError("integrate_shot: eta_max must be positive");
  }
  const double P = plateau(p);
  const double over = P * (1.0 + cfg.eps_class);
  const double under = P * (1.0 - cfg.eps_plateau);
  const std::size_t intervals = grid_intervals(eta_max, cfg.grid_step);
  const double h = eta_max / static_cast<double>(intervals);

  auto sys = [p](const State& x, State& dx, double eta) {
    dx[0] = x[1];
    dx[1] = ode_rhs(p, eta, x[0], x[1]);
  };

  Shot shot;
  auto& tr = shot.trajectory;
  auto keep = [&](double eta, const State& x) {
    if (!record) return;
    tr.eta.push_back(eta);
    tr.w.push_back(x[0]);
    tr.wp.push_back(x[1]);
  };
  // Returns true when the state settles the classification.
  auto classify = [&](double eta, const State& x) {
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
      throw IntegrationError("integrate_shot: non-finite state at eta = " +
                             std::to_string(eta));
    }
    if (x[0] > over) {
      shot.outcome = {ShotTag::Overshoot, eta, true};
      return true;
    }
    if (x[1] <= 0.0 && x[0] < under) {
      shot.outcome = {ShotTag::Undershoot, eta, false};
      return true;
    }
    return false;
  };

  keep(0.0, State{0.0, slope});
  // w = s eta - s^p eta^(2+p) / ((1+p)(2+p)) + s (1/(1-p) - 1/2) eta^3 / 6 + ...
  const double e0 = std::min(kSeriesStart, h / 2.0);
  const double a = std::pow(slope, p) / ((1.0 + p) * (2.0 + p));
  const double b = slope * (1.0 / (1.0 - p) - 0.5) / 6.0;
  const State x0{slope * e0 - a * std::pow(e0, 2.0 + p) + b * e0 * e0 * e0,
                 slope - a * (2.0 + p) * std::pow(e0, 1.0 + p) + 3.0 * b * e0 * e0};
  try {
    auto stepper = odeint::make_dense_output(
        cfg.abs_tol, cfg.rel_tol, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(x0, e0, std::min(cfg.first_step, e0));
    std::size_t next = 1;
    long steps = 0;
    State x{};
    while (true) {
      const auto span = stepper.do_step(sys);
      if (++steps > kMaxSteps) {
        throw IntegrationError("integrate_shot: step budget exhausted");
      }
      const double t1 = span.second;
      while (next <= intervals) {
        const double eta = next == intervals ? eta_max : static_cast<double>(next) * h;
        if (eta > t1) break;
        stepper.calc_state(eta, x);
        keep(eta, x);
        if (classify(eta, x)) return shot;
        ++next;
      }
      if (t1 >= eta_max) break;
      if (classify(t1, stepper.current_state())) return shot;
      if (!(stepper.current_time_step() > 1e-14)) {
        throw IntegrationError("integrate_shot: step size underflow at eta = " +
                               std::to_string(t1));
      }
    }
    stepper.calc_state(eta_max, x);
    const bool converged_band = std::fabs(x[0] - P) < cfg.eps_plateau &&
                                std::fabs(x[1]) < cfg.eps_plateau;
    shot.outcome = {ShotTag::Converged, eta_max, x[0] >= P};
    if (!converged_band) {
      // Still drifting at eta_max; order it by its position relative to the
      // plateau so bisection can proceed.
      shot.outcome.tag = x[0] >= P ? ShotTag::Overshoot : ShotTag::Undershoot;
    }
  } catch (const IntegrationError&) {
    throw;
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("integrate_shot: ") + e.what());
  }
  return shot;
}

ProfileSolution solve_profile(double p, double tol, double eta_max,
                              const ShootConfig& cfg) {
  check_p(p);
  cfg.validate();
  if (!(tol > 0.0)) throw DomainError("solve_profile: tol must be positive");
  if (!(eta_max > 0.0) || !std::isfinite(eta_max)) {
    throw DomainError("solve_profile: eta_max must be positive");
  }
  const double P = plateau(p);
  auto above = [&](double s) {
    return integrate_shot(p, s, eta_max, cfg, false).outcome.above_plateau;
  };
  double lo = 0.9 * slope_lower(p);
  double hi = 1.05 * kTwoOverSqrtPi;
  const bool lo_up = above(lo);
  const bool hi_up = above(hi);
  if (lo_up || !hi_up) {
    std::ostringstream msg;
    msg << "solve_profile: bracket [" << lo << ", " << hi
        << "] does not straddle the connecting orbit (lower shot "
        << (lo_up ? "overshoots" : "undershoots") << ", upper shot "
        << (hi_up ? "overshoots" : "undershoots") << ") at p = " << p;
    throw SolverError(msg.str());
  }
  ProfileSolution sol;
  sol.p = p;
  sol.eta_max = eta_max;
  sol.plateau = P;
  while (hi - lo >= tol && sol.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (above(mid) ? hi : lo) = mid;
    ++sol.iterations;
  }
  sol.bracket = {lo, hi};
  sol.slope0 = 0.5 * (lo + hi);

  Shot shot = integrate_shot(p, sol.slope0, eta_max, cfg, true);
  const auto& tr = shot.trajectory;

  // Last usable sample: stop before the trajectory turns back or crosses
  // the plateau, which only happens through bisection round-off far out.
  std::size_t good = 0;
  while (good + 1 < tr.eta.size() && tr.wp[good + 1] > 0.0 && tr.w[good + 1] < P) {
    ++good;
  }
  std::size_t splice = good;
  for (std::size_t i = 1; i <= good; ++i) {
    if (P - tr.w[i] <= kSpliceDeficit * P) {
      splice = i;
      break;
    }
  }
  if (splice == 0 || P - tr.w[splice] > 1e-2 * P) {
    std::ostringstream msg;
    msg << "solve_profile: trajectory for slope " << sol.slope0
        << " never settles near the plateau (last usable eta = "
        << tr.eta[good] << ")";
    throw SolverError(msg.str());
  }

  const std::size_t intervals = grid_intervals(eta_max, cfg.grid_step);
  const double h = eta_max / static_cast<double>(intervals);
  sol.grid.resize(intervals + 1);
  sol.w.resize(intervals + 1);
  sol.w_prime.resize(intervals + 1);
  sol.plateau_gap.resize(intervals + 1);
  for (std::size_t i = 0; i <= splice; ++i) {
    sol.grid[i] = tr.eta[i];
    sol.w[i] = tr.w[i];
    sol.w_prime[i] = tr.wp[i];
    sol.plateau_gap[i] = P - tr.w[i];
  }
  const QuadratureConfig qcfg;
  const double eta_s = tr.eta[splice];
  const double deficit_s = P - tr.w[splice];
  const double base = s0_decaying(eta_s, qcfg);
  for (std::size_t i = splice + 1; i <= intervals; ++i) {
    const double eta = i == intervals ? eta_max : static_cast<double>(i) * h;
    const double gap = deficit_s * s0_decaying(eta, qcfg) / base;
    sol.grid[i] = eta;
    sol.plateau_gap[i] = gap;
    sol.w[i] = P - gap;
    sol.w_prime[i] = -deficit_s * s0_decaying_deriv(eta, qcfg) / base;
  }
  sol.splice_eta = eta_s;
  sol.converged = true;
  return sol;
}

namespace {

// Cubic Hermite on the uniform profile grid, 0 <= eta <= eta_max.
std::pair<double, double> hermite(const ProfileSolution& pr, double eta) {
  const std::size_t n = pr.grid.size();
  const double h = pr.grid[1] - pr.grid[0];
  std::size_t i = static_cast<std::size_t>(eta / h);
  if (i >= n - 1) i = n - 2;
  const double a = pr.grid[i];
  const double dx = pr.grid[i + 1] - a;
  const double s = (eta - a) / dx;
  const double y0 = pr.w[i], y1 = pr.w[i + 1];
  const double d0 = pr.w_prime[i] * dx, d1 = pr.w_prime[i + 1] * dx;
  const double s2 = s * s, s3 = s2 * s;
  const double value = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
                       (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
  const double slope = ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * d0 +
                        (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * d1) / dx;
  return {value, slope};
}

}  // namespace

double odd_extend(const ProfileSolution& profile, double eta) {
  if (profile.grid.size() < 2) throw DomainError("odd_extend: empty profile");
  if (eta < 0.0) return -odd_extend(profile, -eta);
  if (eta > profile.eta_max) return profile.plateau;
  return hermite(profile, eta).first;
}

double odd_extend_deriv(const ProfileSolution& profile, double eta) {
  if (profile.grid.size() < 2) throw DomainError("odd_extend_deriv: empty profile");
  const double a = std::fabs(eta);
  if (a > profile.eta_max) return 0.0;
  return hermite(profile, a).second;
}

std::vector<std::string> check_profile_invariants(const ProfileSolution& pr) {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& what, std::size_t i) {
    std::ostringstream m;
    m.precision(17);
    m << what;
    if (i < pr.grid.size()) m << " at eta = " << pr.grid[i];
    bad.push_back(m.str());
  };
  const std::size_t n = pr.grid.size();
  if (n < 2 || pr.w.size() != n || pr.w_prime.size() != n || pr.plateau_gap.size() != n) {
    bad.push_back("profile arrays are empty or inconsistent");
    return bad;
  }
  if (pr.w[0] != 0.0) fail("w(0) != 0", 0);
  if (!(pr.slope0 > slope_lower(pr.p))) fail("slope0 <= slope_lower", n);
  if (!(pr.slope0 < phi(pr.p))) fail("slope0 >= phi(p)", n);
  if (!(phi(pr.p) < kTwoOverSqrtPi)) fail("phi(p) >= 2/sqrt(pi)", n);
  for (std::size_t i = 0; i < n; ++i) {
    if (pr.w[i] < 0.0) { fail("w < 0", i); break; }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(pr.plateau_gap[i] > 0.0)) { fail("w >= plateau", i); break; }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(pr.w_prime[i] > 0.0)) { fail("w' <= 0", i); break; }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (pr.w_prime[i] >= pr.w_prime[0]) { fail("max of w' not at eta = 0", i); break; }
  }
  if (pr.p <= 0.5) {
    const double ep = eta_prime();
    for (std::size_t i = 0; i < n; ++i) {
      if (pr.w[i] < profile_lower_bound(pr.grid[i])) {
        fail(pr.grid[i] <= ep ? "w < eta/(8 sqrt 2)" : "w < eta'/(8 sqrt 2)", i);
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double eta = pr.grid[i];
      if (!(pr.w_prime[i] < kTwoOverSqrtPi * std::exp(-0.25 * eta * eta))) {
        fail("w' >= (2/sqrt pi) exp(-eta^2/4)", i);
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (pr.plateau_gap[i] > 2.0 * std::erfc(0.5 * pr.grid[i])) {
        fail("plateau - w > 2 erfc(eta/2)", i);
        break;
      }
    }
  }
  const double lip_w = kTwoOverSqrtPi;
  const double lip_wp = pr.eta_max / std::sqrt(std::numbers::pi) + 2.0;
  for (std::size_t stride : {std::size_t{1}, std::size_t{7}, std::size_t{50}}) {
    for (std::size_t i = 0; i + stride < n; ++i) {
      const double d = pr.grid[i + stride] - pr.grid[i];
      if (std::fabs(pr.w[i + stride] - pr.w[i]) > lip_w * d * (1 + 1e-12)) {
        fail("Lipschitz bound on w violated", i);
        return bad;
      }
      if (std::fabs(pr.w_prime[i + stride] - pr.w_prime[i]) > lip_wp * d * (1 + 1e-12)) {
        fail("Lipschitz bound on w' violated", i);
        return bad;
      }
    }
  }
  return bad;
}

}  // namespace parasharp
