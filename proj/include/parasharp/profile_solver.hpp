#pragma once

// Shooting solver for the odd self-similar profile
//   w'' + eta w'/2 + f_p(w) - w/(1-p) = 0,  w(0) = 0,  w(inf) = (1-p)^(1/(1-p)).

#include <string>
#include <utility>
#include <vector>

namespace parasharp {

struct ShootConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double first_step = 1e-6;
  double eps_class = 1e-9;    // overshoot margin above the plateau
  double eps_plateau = 1e-6;  // fold-back margin below the plateau
  double grid_step = 0.01;    // spacing of the returned samples

  void validate() const;
};

enum class ShotTag { Overshoot, Undershoot, Converged };

struct ShotOutcome {
  ShotTag tag = ShotTag::Converged;
  double eta = 0.0;  // where the classification triggered
  // Sign of w - plateau when the trajectory reached eta_max. Bisection uses
  // it to order converged shots.
  bool above_plateau = false;
};

const char* shot_tag_name(ShotTag tag);

struct Trajectory {
  std::vector<double> eta;
  std::vector<double> w;
  std::vector<double> wp;
};

struct Shot {
  Trajectory trajectory;
  ShotOutcome outcome;
};

/// w'' = -eta wp / 2 - sign(w)|w|^p + w / (1-p).
double ode_rhs(double p, double eta, double w, double wp);

/// Integrates from w(0) = 0, w'(0) = slope until classification or eta_max.
/// The trajectory is sampled every cfg.grid_step up to the stopping point.
/// Throws IntegrationError when step-size control breaks down.
Shot integrate_shot(double p, double slope, double eta_max,
                    const ShootConfig& cfg, bool record = true);

struct ProfileSolution {
  double p = 0.0;
  double slope0 = 0.0;
  double eta_max = 0.0;
  std::vector<double> grid;
  std::vector<double> w;
  std::vector<double> w_prime;
  // plateau - w, kept separately so it stays resolved where w rounds to the
  // plateau.
  std::vector<double> plateau_gap;
  bool converged = false;
  std::pair<double, double> bracket{0.0, 0.0};
  int iterations = 0;
  // Beyond this point the profile follows the decaying solution of the
  // equation linearized about the plateau.
  double splice_eta = 0.0;
  double plateau = 0.0;
};

/// Bisection on the initial slope within
/// [0.9 * slope_lower(p), 1.05 * 2/sqrt(pi)] until the bracket is narrower
/// than `tol`. Throws SolverError when the endpoints do not straddle.
ProfileSolution solve_profile(double p, double tol = 1e-10,
                              double eta_max = 12.0,
                              const ShootConfig& cfg = {});

/// Profile value at any eta, odd in eta; plateau * sign(eta) beyond eta_max.
double odd_extend(const ProfileSolution& profile, double eta);

/// Derivative of odd_extend (even in eta; 0 beyond eta_max).
double odd_extend_deriv(const ProfileSolution& profile, double eta);

/// Structural checks on a computed profile. Returns one message per failed
/// property; empty when everything holds. Decay and lower-bound checks apply
/// for p <= 1/2 only.
std::vector<std::string> check_profile_invariants(const ProfileSolution& profile);

}  // namespace parasharp
