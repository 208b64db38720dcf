#include "parasharp/duhamel_quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "parasharp/errors.hpp"
#include "parasharp/kernels.hpp"
#include "parasharp/parallel.hpp"
#include "parasharp/specfun.hpp"

namespace parasharp {

void DuhamelConfig::validate() const {
  if (cell_nodes < 1 || sigma_nodes < 1) {
    throw ConfigError("duhamel: node counts must be positive");
  }
  if (!(sigma_ratio > 0.0 && sigma_ratio < 1.0) || !(cusp_ratio > 0.0 && cusp_ratio < 1.0)) {
    throw ConfigError("duhamel: grading ratios must lie in (0, 1)");
  }
  if (!(sigma_floor > 0.0 && sigma_floor < 1.0) || !(tau_floor > 0.0 && tau_floor < 1.0)) {
    throw ConfigError("duhamel: sigma_floor and tau_floor must lie in (0, 1)");
  }
  if (!(tau_ratio > 0.0 && tau_ratio < 1.0)) {
    throw ConfigError("duhamel: tau_ratio must lie in (0, 1)");
  }
  if (!(narrow > 0.0) || !(window > 0.0) || cusp_levels < 0 || cusp_cells < 2) {
    throw ConfigError("duhamel: narrow and window must be positive, cusp_cells >= 2");
  }
}

std::vector<std::size_t> all_nodes(const SpaceTimeField& u) {
  std::vector<std::size_t> idx(u.nx());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

namespace {

constexpr double kInvSqrt4Pi = 0.28209479177387814;
constexpr int kMoments = 10;
constexpr double kExpandSigma = 2.0;  // expand when sigma >= this many cells

struct Point {
  double at;
  double weight;
};

double kernel(KernelKind kind, double z, double s) {
  const double g = std::exp(-z * z / (4.0 * s)) * kInvSqrt4Pi / std::sqrt(s);
  return kind == KernelKind::Value ? g : -z / (2.0 * s) * g;
}

// Gauss-Legendre points on [a, b], split into equal pieces of width <= wmax.
void uniform_points(double a, double b, double wmax, const QuadratureRule& gl,
                    std::vector<Point>& out) {
  const double len = b - a;
  if (!(len > 0.0)) return;
  const auto pieces = static_cast<long>(std::max(1.0, std::ceil(len / wmax - 1e-12)));
  const double width = len / static_cast<double>(pieces);
  const double half = 0.5 * width;
  for (long k = 0; k < pieces; ++k) {
    const double centre = a + (static_cast<double>(k) + 0.5) * width;
    for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
      out.push_back({centre + half * gl.nodes[g], half * gl.weights[g]});
    }
  }
}

// Like uniform_points, with geometric refinement toward the flagged ends.
void graded_points(double a, double b, bool toward_a, bool toward_b, double wmax,
                   const DuhamelConfig& cfg, const QuadratureRule& gl,
                   std::vector<Point>& out) {
  if (!(b > a)) return;
  if (toward_a && toward_b) {
    const double mid = 0.5 * (a + b);
    graded_points(a, mid, true, false, wmax, cfg, gl, out);
    graded_points(mid, b, false, true, wmax, cfg, gl, out);
    return;
  }
  if (!toward_a && !toward_b) {
    uniform_points(a, b, wmax, gl, out);
    return;
  }
  const double len = b - a;
  double outer = len;
  for (int l = 0; l < cfg.cusp_levels; ++l) {
    const double inner = outer * cfg.cusp_ratio;
    if (toward_a) {
      uniform_points(a + inner, a + outer, wmax, gl, out);
    } else {
      uniform_points(b - outer, b - inner, wmax, gl, out);
    }
    outer = inner;
  }
  if (toward_a) {
    uniform_points(a, a + outer, wmax, gl, out);
  } else {
    uniform_points(b - outer, b, wmax, gl, out);
  }
}

struct SigmaNode {
  double sigma;
  double weight;  // includes the Jacobian 2 sigma
};

// Nodes for int_0^t g(tau) dtau. The half tau in [t/2, t] is taken in
// sigma = sqrt(t - tau), graded toward sigma = 0 where the kernel
// concentrates; the half tau in [0, t/2] is graded toward tau = 0, where
// power-law solutions started from zero data are not smooth in time. Weights
// include the Jacobian, so the node list integrates g(t - sigma^2) dtau.
std::vector<SigmaNode> sigma_nodes(double t, const DuhamelConfig& cfg, double* floor_sigma) {
  const QuadratureRule& gl = gauss_legendre(cfg.sigma_nodes);
  const int levels = static_cast<int>(
      std::ceil(std::log(cfg.sigma_floor) / std::log(cfg.sigma_ratio) - 1e-12));
  std::vector<SigmaNode> nodes;
  double b = std::sqrt(0.5 * t);
  for (int l = 0; l < levels; ++l) {
    const double a = b * cfg.sigma_ratio;
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);
    for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
      const double s = centre + half * gl.nodes[g];
      nodes.push_back({s, 2.0 * s * half * gl.weights[g]});
    }
    b = a;
  }
  *floor_sigma = b;
  const int tau_levels = static_cast<int>(
      std::ceil(std::log(cfg.tau_floor) / std::log(cfg.tau_ratio) - 1e-12));
  double hi = 0.5 * t;
  for (int l = 0; l <= tau_levels; ++l) {
    const double lo = l == tau_levels ? 0.0 : hi * cfg.tau_ratio;
    const double half = 0.5 * (hi - lo);
    const double centre = 0.5 * (lo + hi);
    for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
      const double tau = centre + half * gl.nodes[g];
      nodes.push_back({std::sqrt(t - tau), half * gl.weights[g]});
    }
    hi = lo;
  }
  return nodes;
}

// Everything one sigma node needs to evaluate the space integral.
struct SliceQuadrature {
  const SpaceTimeField& u;
  const NonlinearitySpec& f;
  const DuhamelConfig& cfg;
  const QuadratureRule& gl;
  KernelKind kind;
  double sigma;
  double s;       // sigma^2
  double reach;   // window * sigma
  double wmax;    // widest sub-cell
  long R = 0;     // nodal kernel half-width
  std::vector<double> U, F, Fext, kernel_rev;

  SliceQuadrature(const SpaceTimeField& field, const NonlinearitySpec& src,
                  const DuhamelConfig& c, const QuadratureRule& rule, KernelKind k,
                  double t, double sig)
      : u(field), f(src), cfg(c), gl(rule), kind(k), sigma(sig), s(sig * sig),
        reach(c.window * sig),
        wmax(std::min(field.dx(), c.narrow * 2.0 * sig)) {
    const std::size_t n = u.nx();
    U.resize(n);
    F.resize(n);
    u.row_at(t - s, U);
    f.apply(U, F);
  }

  // Points (in z = x_j - y) of the cell at offset d = j - c, clipped to the
  // kernel window.
  void cell_points(long d, std::vector<Point>& out) const {
    const double h = u.dx();
    const double a = std::max((static_cast<double>(d) - 1.0) * h, -reach);
    const double b = std::min(static_cast<double>(d) * h, reach);
    uniform_points(a, b, wmax, gl, out);
  }

  void build_kernel() {
    const double h = u.dx();
    const long D = static_cast<long>(std::ceil(reach / h));
    R = D + 1;
    std::vector<double> kt(static_cast<std::size_t>(2 * R + 1), 0.0);
    std::vector<Point> pts;
    double L[4];
    for (long d = -D + 1; d <= D; ++d) {
      pts.clear();
      cell_points(d, pts);
      for (const Point& p : pts) {
        const double kv = p.weight * kernel(kind, p.at, s);
        cubic_weights(static_cast<double>(d) - p.at / h, L);
        for (long m = 0; m < 4; ++m) {
          kt[static_cast<std::size_t>(d + 1 - m + R)] += kv * L[m];
        }
      }
    }
    kernel_rev.assign(kt.rbegin(), kt.rend());
    const long n = static_cast<long>(u.nx());
    Fext.resize(static_cast<std::size_t>(n + 2 * R));
    for (long k = 0; k < n + 2 * R; ++k) {
      Fext[static_cast<std::size_t>(k)] = F[static_cast<std::size_t>(std::clamp(k - R, 0L, n - 1))];
    }
  }

  double folded(std::size_t j) const {
    return kernels::dot(kernel_rev,
                        std::span<const double>(Fext).subspan(j, static_cast<std::size_t>(2 * R + 1)));
  }

  // Roots of the interpolated row where f has a cusp, and the cells whose
  // interpolation stencil reaches them.
  void find_roots(std::vector<double>& roots, std::set<long>& cells) const {
    const long n = static_cast<long>(u.nx());
    const long band = cfg.cusp_cells;
    const auto& x = u.x();
    for (long i = 1; i + 1 < n; ++i) {
      if (U[i] == 0.0 && U[i - 1] * U[i + 1] < 0.0) {
        roots.push_back(x[i]);
        for (long c = i - band; c < i + band; ++c) {
          if (c >= 0 && c <= n - 2) cells.insert(c);
        }
      }
    }
    for (long c = 0; c + 1 < n; ++c) {
      if (U[c] * U[c + 1] < 0.0) {
        double a = x[c], b = x[c + 1];
        const double sa = U[c];
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (a + b);
          const double v = u.interpolate_x(U, mid);
          if ((v < 0.0) == (sa < 0.0) && v != 0.0) {
            a = mid;
          } else {
            b = mid;
          }
        }
        roots.push_back(0.5 * (a + b));
        for (long k = c - band; k <= c + band; ++k) {
          if (k >= 0 && k <= n - 2) cells.insert(k);
        }
      }
    }
    std::sort(roots.begin(), roots.end());
  }

  // Exact-minus-folded contribution of cell c at node j, with points clipped
  // to the kernel window.
  double cusp_direct(std::size_t j, long c, const std::vector<double>& roots) const {
    const double h = u.dx();
    const auto& x = u.x();
    const double xj = x[j];
    const double lo = xj - reach, hi = xj + reach;
    const double ya = x[static_cast<std::size_t>(c)], yb = x[static_cast<std::size_t>(c) + 1];
    if (yb <= lo || ya >= hi) return 0.0;

    std::vector<Point> pts;
    const long d = static_cast<long>(j) - c;
    cell_points(d, pts);
    double L[4];
    double approx = 0.0;
    for (const Point& p : pts) {
      cubic_weights(static_cast<double>(d) - p.at / h, L);
      double fv = 0.0;
      for (long m = 0; m < 4; ++m) {
        fv += L[m] * Fext[static_cast<std::size_t>(c - 1 + m + R)];
      }
      approx += p.weight * kernel(kind, p.at, s) * fv;
    }

    std::vector<double> cuts{ya};
    for (double r : roots) {
      if (r > ya && r < yb) cuts.push_back(r);
    }
    cuts.push_back(yb);
    auto is_root = [&](double y) {
      return std::binary_search(roots.begin(), roots.end(), y);
    };
    pts.clear();
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = std::max(cuts[k], lo);
      const double b = std::min(cuts[k + 1], hi);
      if (!(b > a)) continue;
      graded_points(a, b, a == cuts[k] && is_root(a), b == cuts[k + 1] && is_root(b),
                    wmax, cfg, gl, pts);
    }
    double exact = 0.0;
    for (const Point& p : pts) {
      const double fv = f(u.interpolate_x(U, p.at));
      exact += p.weight * kernel(kind, xj - p.at, s) * fv;
    }
    return exact - approx;
  }

  // Exact-minus-folded integrand of one cell as weighted source points:
  // graded points carry +f(u), the folded sub-cell points carry minus the
  // interpolated f(u). Moments about the cell centre serve wide kernels.
  struct CuspCell {
    double centre = 0.0;
    std::vector<Point> pts;  // at = y, weight = quadrature weight * value
    std::array<double, kMoments> moment{};
  };

  CuspCell cusp_cell(long c, const std::vector<double>& roots) const {
    const double h = u.dx();
    const auto& x = u.x();
    const double ya = x[static_cast<std::size_t>(c)], yb = x[static_cast<std::size_t>(c) + 1];
    CuspCell cell;
    cell.centre = 0.5 * (ya + yb);

    std::vector<Point> pts;
    uniform_points(ya, yb, wmax, gl, pts);
    double L[4];
    for (const Point& p : pts) {
      cubic_weights((p.at - ya) / h, L);
      double fv = 0.0;
      for (long m = 0; m < 4; ++m) {
        fv += L[m] * Fext[static_cast<std::size_t>(c - 1 + m + R)];
      }
      cell.pts.push_back({p.at, -p.weight * fv});
    }

    std::vector<double> cuts{ya};
    for (double r : roots) {
      if (r > ya && r < yb) cuts.push_back(r);
    }
    cuts.push_back(yb);
    auto is_root = [&](double y) {
      return std::binary_search(roots.begin(), roots.end(), y);
    };
    pts.clear();
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      graded_points(cuts[k], cuts[k + 1], is_root(cuts[k]), is_root(cuts[k + 1]), wmax, cfg,
                    gl, pts);
    }
    for (const Point& p : pts) {
      cell.pts.push_back({p.at, p.weight * f(u.interpolate_x(U, p.at))});
    }

    const double scale = 1.0 / (2.0 * sigma);
    for (const Point& p : cell.pts) {
      const double d = (p.at - cell.centre) * scale;
      double term = p.weight;
      for (int k = 0; k < kMoments; ++k) {
        cell.moment[static_cast<std::size_t>(k)] += term;
        term *= d / static_cast<double>(k + 1);
      }
    }
    return cell;
  }

  bool expand() const { return sigma >= kExpandSigma * u.dx(); }

  // Correction of one cell at node j from the Hermite expansion of the
  // Gaussian about the cell centre. Only for kernels much wider than a cell.
  double cusp_expanded(std::size_t j, const CuspCell& cell) const {
    const double z0 = u.x()[j] - cell.centre;
    if (std::fabs(z0) > reach + u.dx()) return 0.0;
    const double zeta = z0 / (2.0 * sigma);
    const double g = kernel(KernelKind::Value, z0, s);
    // H_k(zeta) by recurrence; the value kernel pairs moment k with H_k, the
    // derivative kernel with -H_(k+1) / (2 sigma).
    double hm = 1.0, hk = 2.0 * zeta;
    double sum = 0.0;
    if (kind == KernelKind::Value) {
      sum = cell.moment[0] * hm;
      for (int k = 1; k < kMoments; ++k) {
        sum += cell.moment[static_cast<std::size_t>(k)] * hk;
        const double next = 2.0 * zeta * hk - 2.0 * k * hm;
        hm = hk;
        hk = next;
      }
      return sum * g;
    }
    for (int k = 0; k < kMoments; ++k) {
      sum += cell.moment[static_cast<std::size_t>(k)] * hk;
      const double next = 2.0 * zeta * hk - 2.0 * (k + 1) * hm;
      hm = hk;
      hk = next;
    }
    return -sum * g / (2.0 * sigma);
  }
};

}  // namespace

std::vector<double> duhamel_term(const NonlinearitySpec& f, const SpaceTimeField& u,
                                 double t, std::span<const std::size_t> targets,
                                 KernelKind kind, const DuhamelConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0) || t > u.final_time() * (1.0 + 1e-12)) {
    throw DomainError("duhamel_term: t must lie in (0, T]");
  }
  for (std::size_t j : targets) {
    if (j >= u.nx()) throw DomainError("duhamel_term: target index out of range");
  }
  std::vector<double> total(targets.size(), 0.0);
  if (f.is_zero()) return total;

  double floor_sigma = 0.0;
  const std::vector<SigmaNode> nodes = sigma_nodes(t, cfg, &floor_sigma);
  const QuadratureRule& gl = gauss_legendre(cfg.cell_nodes);

  std::vector<std::vector<double>> partial(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t q) {
    SliceQuadrature slice(u, f, cfg, gl, kind, t, nodes[q].sigma);
    slice.build_kernel();
    std::vector<double> out(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) out[k] = slice.folded(targets[k]);
    if (f.has_cusp_at_zero()) {
      std::vector<double> roots;
      std::set<long> cells;
      slice.find_roots(roots, cells);
      for (long c : cells) {
        if (slice.expand()) {
          const auto cell = slice.cusp_cell(c, roots);
          for (std::size_t k = 0; k < targets.size(); ++k) {
            out[k] += slice.cusp_expanded(targets[k], cell);
          }
        } else {
          for (std::size_t k = 0; k < targets.size(); ++k) {
            out[k] += slice.cusp_direct(targets[k], c, roots);
          }
        }
      }
    }
    for (double& v : out) v *= nodes[q].weight;
    partial[q] = std::move(out);
  });
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += part[k];
  }

  if (kind == KernelKind::Value) {
    // Below the innermost sigma the kernel is a point mass: the slab
    // contributes floor_sigma^2 f(u(x, t)).
    std::vector<double> U(u.nx()), F(u.nx());
    u.row_at(t, U);
    f.apply(U, F);
    const double area = floor_sigma * floor_sigma;
    for (std::size_t k = 0; k < targets.size(); ++k) total[k] += area * F[targets[k]];
  }
  for (double v : total) {
    if (!std::isfinite(v)) throw EvaluationError("duhamel_term: non-finite result");
  }
  return total;
}

}  // namespace parasharp
