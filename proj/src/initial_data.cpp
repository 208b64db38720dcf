#include "parasharp/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "parasharp/closed_forms.hpp"
#include "parasharp/errors.hpp"

namespace parasharp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Hermite {
  double value;
  double slope;
};

// Cubic Hermite through (x[i], y[i], d[i]); x ascending, a within [x0, xn].
Hermite hermite_eval(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& d, double a) {
  auto it = std::upper_bound(x.begin(), x.end(), a);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  if (i >= x.size() - 1) i = x.size() - 2;
  const double h = x[i + 1] - x[i];
  const double s = (a - x[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double d0 = d[i] * h, d1 = d[i + 1] * h;
  return {(2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * d0 +
              (-2 * s3 + 3 * s2) * y[i + 1] + (s3 - s2) * d1,
          ((6 * s2 - 6 * s) * y[i] + (3 * s2 - 4 * s + 1) * d0 +
           (-6 * s2 + 6 * s) * y[i + 1] + (3 * s2 - 2 * s) * d1) / h};
}

}  // namespace

// w0 and w0' sampled on [0, 30]; beyond that w0 = 1 to double precision.
struct InitialDataSpec::W0Table {
  std::vector<double> eta, w, wp;
};

namespace {

std::shared_ptr<const InitialDataSpec::W0Table> shared_w0_table();

}  // namespace

InitialDataSpec::InitialDataSpec() : kind_(ZeroData{}) {}

InitialDataSpec::InitialDataSpec(DataKind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const ZeroData&) {},
                 [](const SinusoidData& s) {
                   if (!std::isfinite(s.amplitude) || !std::isfinite(s.wavenumber)) {
                     throw DomainError("initial data: sinusoid parameters must be finite");
                   }
                 },
                 [this](const ScaledW0Data& s) {
                   if (!(s.lambda > 0.0) || !std::isfinite(s.lambda)) {
                     throw DomainError("initial data: lambda must be positive");
                   }
                   w0_ = shared_w0_table();
                 },
                 [](const TabulatedData& s) {
                   const std::size_t n = s.grid.size();
                   if (n < 2 || s.values.size() != n || s.derivatives.size() != n) {
                     throw DomainError(
                         "initial data: table needs >= 2 rows of grid, value, derivative");
                   }
                   for (std::size_t i = 0; i < n; ++i) {
                     if (!std::isfinite(s.grid[i]) || !std::isfinite(s.values[i]) ||
                         !std::isfinite(s.derivatives[i])) {
                       throw DomainError("initial data: table entries must be finite");
                     }
                     if (i > 0 && !(s.grid[i] > s.grid[i - 1])) {
                       throw DomainError("initial data: table grid must be strictly ascending");
                     }
                   }
                 },
             },
             kind_);
}

namespace {

std::shared_ptr<const InitialDataSpec::W0Table> shared_w0_table() {
  static std::once_flag once;
  static std::shared_ptr<const InitialDataSpec::W0Table> table;
  std::call_once(once, [] {
    auto t = std::make_shared<InitialDataSpec::W0Table>();
    const QuadratureConfig cfg;
    const int n = 6000;
    for (int i = 0; i <= n; ++i) {
      const double eta = 30.0 * i / n;
      t->eta.push_back(eta);
      t->w.push_back(w0_eval(eta, cfg));
      t->wp.push_back(w0_deriv(eta, cfg));
    }
    table = t;
  });
  return table;
}

}  // namespace

double InitialDataSpec::value(double x) const {
  return std::visit(
      overloaded{
          [](const ZeroData&) { return 0.0; },
          [x](const SinusoidData& s) { return s.amplitude * std::sin(s.wavenumber * x); },
          [this, x](const ScaledW0Data& s) {
            const double eta = std::fabs(x) / std::sqrt(s.lambda);
            const double w = eta >= w0_->eta.back()
                                 ? 1.0
                                 : hermite_eval(w0_->eta, w0_->w, w0_->wp, eta).value;
            return (x < 0.0 ? -w : w) * s.lambda;
          },
          [x](const TabulatedData& s) {
            if (x <= s.grid.front()) return s.values.front();
            if (x >= s.grid.back()) return s.values.back();
            return hermite_eval(s.grid, s.values, s.derivatives, x).value;
          },
      },
      kind_);
}

double InitialDataSpec::derivative(double x) const {
  return std::visit(
      overloaded{
          [](const ZeroData&) { return 0.0; },
          [x](const SinusoidData& s) {
            return s.amplitude * s.wavenumber * std::cos(s.wavenumber * x);
          },
          [this, x](const ScaledW0Data& s) {
            const double root = std::sqrt(s.lambda);
            const double eta = std::fabs(x) / root;
            if (eta >= w0_->eta.back()) return 0.0;
            return root * hermite_eval(w0_->eta, w0_->w, w0_->wp, eta).slope;
          },
          [x](const TabulatedData& s) {
            if (x < s.grid.front() || x > s.grid.back()) return 0.0;
            return hermite_eval(s.grid, s.values, s.derivatives, x).slope;
          },
      },
      kind_);
}

bool InitialDataSpec::is_zero() const {
  if (std::holds_alternative<ZeroData>(kind_)) return true;
  if (const auto* s = std::get_if<SinusoidData>(&kind_)) return s->amplitude == 0.0;
  return false;
}

std::string InitialDataSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const ZeroData&) { os << "zero"; },
                 [&](const SinusoidData& s) { os << "sin:" << s.amplitude << ":" << s.wavenumber; },
                 [&](const ScaledW0Data& s) { os << "w0:" << s.lambda; },
                 [&](const TabulatedData& s) { os << "table(" << s.grid.size() << " rows)"; },
             },
             kind_);
  return os.str();
}

}  // namespace parasharp
