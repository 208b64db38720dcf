#pragma once

#include <span>
#include <string>
#include <variant>

namespace parasharp {

struct ZeroSource {};
struct ConstantSource {
  double c = 0.0;
};
struct LinearSource {
  double a = 0.0;
};
/// f(u) = u |u|^(p-1)
struct PowerLawSource {
  double p = 0.5;
};
/// f(u) = c u |u|^(p-1)
struct ScaledPowerLawSource {
  double c = 1.0;
  double p = 0.5;
};

using SourceKind = std::variant<ZeroSource, ConstantSource, LinearSource,
                                PowerLawSource, ScaledPowerLawSource>;

/// Reaction term f of u_t - u_xx = f(u).
class NonlinearitySpec {
 public:
  NonlinearitySpec() = default;
  /// Throws DomainError on non-finite or out-of-range parameters.
  NonlinearitySpec(SourceKind kind);  // NOLINT(google-explicit-constructor)

  const SourceKind& kind() const { return kind_; }

  double operator()(double u) const;
  void apply(std::span<const double> u, std::span<double> out) const;

  /// sup of |f(v)| over |v| <= m. Every supported f has |f| non-decreasing
  /// in |u|, so this is max(|f(m)|, |f(-m)|).
  double sup_abs(double m) const;

  bool is_zero() const;
  /// True when f is continuous but not differentiable at u = 0.
  bool has_cusp_at_zero() const;
  /// Exponent p for the power-law variants.
  double power() const;
  /// Multiplier c for ScaledPowerLaw, 1 for PowerLaw.
  double scale() const;

  std::string describe() const;

 private:
  SourceKind kind_{ZeroSource{}};
};

}  // namespace parasharp
