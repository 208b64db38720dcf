#include "parasharp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "parasharp/errors.hpp"

namespace parasharp {

void QuadratureConfig::validate() const {
  if (gauss_hermite_order < 2) {
    throw ConfigError("gauss_hermite_order must be >= 2, got " +
                      std::to_string(gauss_hermite_order));
  }
  if (abel_nodes < 4) {
    throw ConfigError("abel_nodes must be >= 4, got " +
                      std::to_string(abel_nodes));
  }
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
    throw ConfigError("tolerances must be non-negative");
  }
  if (abs_tol == 0.0 && rel_tol == 0.0) {
    throw ConfigError("abs_tol and rel_tol cannot both be zero");
  }
  if (!(tail_cutoff > 0.0) || !std::isfinite(tail_cutoff)) {
    throw ConfigError("tail_cutoff must be positive and finite");
  }
}

double gamma_fn(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma_fn: argument must be positive and finite");
  }
  return std::tgamma(x);
}

double erfc_fn(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("erfc_fn: argument must be finite");
  }
  return std::erfc(x);
}

namespace {

QuadratureRule build_hermite(int n) {
  // Newton iteration on the orthonormal Hermite recurrence, starting from
  // asymptotic guesses for the largest roots and extrapolating inward.
  const double pim4 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-15 * std::max(1.0, std::fabs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  QuadratureRule r;
  r.nodes.assign(x.rbegin(), x.rend());
  r.weights.assign(w.rbegin(), w.rend());
  return r;
}

QuadratureRule build_legendre(int n) {
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return QuadratureRule{x, w};
}

struct RuleCache {
  std::mutex mu;
  std::map<int, std::unique_ptr<const QuadratureRule>> hermite;
  std::map<int, std::unique_ptr<const QuadratureRule>> legendre;
};

RuleCache& cache() {
  static RuleCache c;
  return c;
}

double refine(const std::function<double(double)>& f, double a, double b,
              double whole, int order, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre_fixed(f, a, mid, order);
  const double right = gauss_legendre_fixed(f, mid, b, order);
  const double fine = left + right;
  const double diff = std::fabs(fine - whole);
  const double noise =
      64.0 * std::numeric_limits<double>::epsilon() * (std::fabs(left) + std::fabs(right));
  if (diff <= tol || diff <= noise || depth <= 0) return fine;
  return refine(f, a, mid, left, order, 0.5 * tol, depth - 1) +
         refine(f, mid, b, right, order, 0.5 * tol, depth - 1);
}

}  // namespace

const QuadratureRule& gauss_hermite(int order) {
  if (order < 2) {
    throw ConfigError("gauss_hermite: order must be >= 2, got " +
                      std::to_string(order));
  }
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto& slot = c.hermite[order];
  if (!slot) slot = std::make_unique<const QuadratureRule>(build_hermite(order));
  return *slot;
}

const QuadratureRule& gauss_legendre(int order) {
  if (order < 1) {
    throw ConfigError("gauss_legendre: order must be >= 1, got " +
                      std::to_string(order));
  }
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto& slot = c.legendre[order];
  if (!slot) slot = std::make_unique<const QuadratureRule>(build_legendre(order));
  return *slot;
}

double gauss_legendre_fixed(const std::function<double(double)>& f, double a,
                            double b, int order) {
  const QuadratureRule& r = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double centre = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double v = f(centre + half * r.nodes[i]);
    if (!std::isfinite(v)) {
      throw EvaluationError("quadrature: integrand is not finite");
    }
    s += r.weights[i] * v;
  }
  return half * s;
}

double adaptive_gauss_legendre(const std::function<double(double)>& f,
                               double a, double b, int order, double tol,
                               int max_depth) {
  if (a == b) return 0.0;
  const double whole = gauss_legendre_fixed(f, a, b, order);
  return refine(f, a, b, whole, order, tol, max_depth);
}

double abel_integral(const std::function<double(double)>& g, double t,
                     const QuadratureConfig& cfg,
                     std::span<const double> breakpoints) {
  cfg.validate();
  if (!std::isfinite(t) || t <= 0.0) {
    throw DomainError("abel_integral: t must be positive and finite");
  }
  const double top = std::sqrt(t);
  std::vector<double> cuts{0.0, top};
  for (double tb : breakpoints) {
    if (tb > 0.0 && tb < t) cuts.push_back(std::sqrt(t - tb));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto h = [&](double s) { return 2.0 * g(t - s * s); };
  std::vector<double> coarse(cuts.size() - 1);
  double estimate = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    coarse[k] = gauss_legendre_fixed(h, cuts[k], cuts[k + 1], cfg.abel_nodes);
    estimate += coarse[k];
  }
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(estimate));
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double share = tol * (cuts[k + 1] - cuts[k]) / top;
    total += refine(h, cuts[k], cuts[k + 1], coarse[k], cfg.abel_nodes, share, 40);
  }
  return total;
}

double tail_integral_I(double eta, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(eta) || eta < 0.0) {
    throw DomainError("tail_integral_I: eta must be finite and >= 0");
  }
  auto f = [](double s) {
    const double q = 2.0 + s * s;
    return std::exp(-0.25 * s * s) / (q * q);
  };
  const double b = eta + cfg.tail_cutoff;
  const double whole = gauss_legendre_fixed(f, eta, b, cfg.abel_nodes);
  // Callers multiply I by (2 + eta^2), so ask for relative accuracy as well.
  const double tol = std::min(cfg.abs_tol, 1e-14 * whole);
  return refine(f, eta, b, whole, cfg.abel_nodes, tol, 40);
}

}  // namespace parasharp
