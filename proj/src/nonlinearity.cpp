#include "parasharp/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parasharp/errors.hpp"

namespace parasharp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double signed_power(double u, double p) {
  if (u > 0.0) return std::pow(u, p);
  if (u < 0.0) return -std::pow(-u, p);
  return 0.0;
}

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("nonlinearity: exponent p must lie in (0, 1)");
  }
}

}  // namespace

NonlinearitySpec::NonlinearitySpec(SourceKind kind) : kind_(kind) {
  std::visit(overloaded{
                 [](const ZeroSource&) {},
                 [](const ConstantSource& s) {
                   if (!std::isfinite(s.c)) throw DomainError("nonlinearity: constant must be finite");
                 },
                 [](const LinearSource& s) {
                   if (!std::isfinite(s.a)) throw DomainError("nonlinearity: slope must be finite");
                 },
                 [](const PowerLawSource& s) { check_p(s.p); },
                 [](const ScaledPowerLawSource& s) {
                   check_p(s.p);
                   if (!(s.c > 0.0) || !std::isfinite(s.c)) {
                     throw DomainError("nonlinearity: scale must be positive and finite");
                   }
                 },
             },
             kind_);
}

double NonlinearitySpec::operator()(double u) const {
  return std::visit(overloaded{
                        [](const ZeroSource&) { return 0.0; },
                        [](const ConstantSource& s) { return s.c; },
                        [u](const LinearSource& s) { return s.a * u; },
                        [u](const PowerLawSource& s) { return signed_power(u, s.p); },
                        [u](const ScaledPowerLawSource& s) {
                          return s.c * signed_power(u, s.p);
                        },
                    },
                    kind_);
}

void NonlinearitySpec::apply(std::span<const double> u, std::span<double> out) const {
  const std::size_t n = u.size();
  std::visit(overloaded{
                 [&](const ZeroSource&) {
                   for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
                 },
                 [&](const ConstantSource& s) {
                   for (std::size_t i = 0; i < n; ++i) out[i] = s.c;
                 },
                 [&](const LinearSource& s) {
                   for (std::size_t i = 0; i < n; ++i) out[i] = s.a * u[i];
                 },
                 [&](const PowerLawSource& s) {
                   for (std::size_t i = 0; i < n; ++i) out[i] = signed_power(u[i], s.p);
                 },
                 [&](const ScaledPowerLawSource& s) {
                   for (std::size_t i = 0; i < n; ++i) {
                     out[i] = s.c * signed_power(u[i], s.p);
                   }
                 },
             },
             kind_);
}

double NonlinearitySpec::sup_abs(double m) const {
  const double a = std::fabs(m);
  return std::max(std::fabs((*this)(a)), std::fabs((*this)(-a)));
}

bool NonlinearitySpec::is_zero() const {
  if (std::holds_alternative<ZeroSource>(kind_)) return true;
  if (const auto* c = std::get_if<ConstantSource>(&kind_)) return c->c == 0.0;
  if (const auto* l = std::get_if<LinearSource>(&kind_)) return l->a == 0.0;
  return false;
}

bool NonlinearitySpec::has_cusp_at_zero() const {
  return std::holds_alternative<PowerLawSource>(kind_) ||
         std::holds_alternative<ScaledPowerLawSource>(kind_);
}

double NonlinearitySpec::power() const {
  if (const auto* s = std::get_if<PowerLawSource>(&kind_)) return s->p;
  if (const auto* s = std::get_if<ScaledPowerLawSource>(&kind_)) return s->p;
  throw DomainError("nonlinearity: not a power law");
}

double NonlinearitySpec::scale() const {
  if (std::holds_alternative<PowerLawSource>(kind_)) return 1.0;
  if (const auto* s = std::get_if<ScaledPowerLawSource>(&kind_)) return s->c;
  throw DomainError("nonlinearity: not a power law");
}

std::string NonlinearitySpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const ZeroSource&) { os << "zero"; },
                 [&](const ConstantSource& s) { os << "const:" << s.c; },
                 [&](const LinearSource& s) { os << "linear:" << s.a; },
                 [&](const PowerLawSource& s) { os << "power:" << s.p; },
                 [&](const ScaledPowerLawSource& s) {
                   os << "scaled-power:" << s.c << ":" << s.p;
                 },
             },
             kind_);
  return os.str();
}

}  // namespace parasharp
