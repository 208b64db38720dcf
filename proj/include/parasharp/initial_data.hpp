#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace parasharp {

struct ZeroData {};
/// amplitude * sin(wavenumber * x)
struct SinusoidData {
  double amplitude = 1.0;
  double wavenumber = 1.0;
};
/// lambda * w0(x / sqrt(lambda)), extended oddly to x < 0.
struct ScaledW0Data {
  double lambda = 1.0;
};
/// Piecewise cubic Hermite data through (grid, values, derivatives), held
/// constant beyond the end points.
struct TabulatedData {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivatives;
};

using DataKind = std::variant<ZeroData, SinusoidData, ScaledW0Data, TabulatedData>;

/// Bounded initial datum u0 with a bounded piecewise continuous derivative.
class InitialDataSpec {
 public:
  InitialDataSpec();
  /// Validates the parameters; throws DomainError.
  InitialDataSpec(DataKind kind);  // NOLINT(google-explicit-constructor)

  const DataKind& kind() const { return kind_; }

  double value(double x) const;
  double derivative(double x) const;

  bool is_zero() const;
  std::string describe() const;

  struct W0Table;  // shared tabulation of w0, built on first use

 private:
  DataKind kind_;
  std::shared_ptr<const W0Table> w0_;
};

}  // namespace parasharp
