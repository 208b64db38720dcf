#include <doctest.h>

#include <cmath>
#include <numbers>

#include "parasharp/closed_forms.hpp"
#include "parasharp/errors.hpp"
#include "parasharp/sharpness_suite.hpp"

using namespace parasharp;

TEST_CASE("gap sweep rows") {
  const std::vector<GapRow> rows = gap_sweep(64, 1.0, 6.0);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const GapRow& r = rows[i];
    CAPTURE(r.n);
    CHECK(r.n == (1 << i));
    CHECK(r.p == 1.0 / (2.0 * r.n));
    CHECK(r.ok);
    CHECK(r.gap < 0.0);
    CHECK(slope_lower(r.p) < r.slope0);
    CHECK(r.slope0 < r.phi_p);
    CHECK(r.phi_p < kTwoOverSqrtPi);
    CHECK(r.scaled_inf == r.gap);
  }
  CHECK(std::fabs(rows.back().gap) < std::fabs(rows.front().gap));
  CHECK(rows.back().w0_dist < rows.front().w0_dist);
}

TEST_CASE("scaled infimum follows the time power") {
  const std::vector<GapRow> rows = gap_sweep(2, 4.0, 6.0);
  for (const GapRow& r : rows) {
    CHECK(r.scaled_inf == doctest::Approx(r.gap * std::pow(4.0, selfsim_exponent(r.p))));
  }
}

TEST_CASE("scaled infimum agrees with the minimized sampled gap") {
  const std::vector<GapRow> rows = gap_sweep(2, 1.0, 6.0);
  for (const GapRow& r : rows) {
    const ProfileSolution prof = solve_profile(r.p);
    const SpaceTimeField u = selfsim_field(prof, 1.0, 1.0, GridSpec{});
    const EstimateReport rep = verify_estimate(NonlinearitySpec(PowerLawSource{r.p}),
                                               InitialDataSpec(), u, default_times(1.0), 0.1);
    CHECK(std::fabs(rep.inf_gap / r.scaled_inf - 1.0) < 1e-3);
  }
}

TEST_CASE("convergence to the limit profile") {
  double prev_w = INFINITY, prev_d = INFINITY;
  for (double p : {0.5, 0.125, 1.0 / 32.0, 1.0 / 128.0}) {
    const ConvergenceReport c = convergence_report(p, 6.0);
    CHECK(std::isfinite(c.w0_dist));
    CHECK(c.w0_dist > 0.0);
    CHECK(c.w0_dist < prev_w);
    CHECK(c.w0_deriv_dist < prev_d);
    const ProfileSolution prof = solve_profile(p);
    CHECK(c.w0_deriv_dist >= std::fabs(prof.slope0 - kTwoOverSqrtPi));
    prev_w = c.w0_dist;
    prev_d = c.w0_deriv_dist;
  }
  const ConvergenceReport half = convergence_report(0.5, 4.0);
  CHECK(half.X == 4.0);
  CHECK_THROWS_AS(convergence_report(0.75, 6.0), DomainError);
  CHECK_THROWS_AS(convergence_report(0.5, 0.0), DomainError);
}

TEST_CASE("construction scale") {
  CHECK(std::fabs(construction_scale(1.0, 1.0) - std::sqrt(std::numbers::pi)) < 1e-12);
  CHECK(construction_scale(3.0, 4.0) == doctest::Approx(std::sqrt(std::numbers::pi)));
  CHECK_THROWS_AS(construction_scale(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(construction_scale(1.0, -1.0), DomainError);
}

TEST_CASE("construction approaches alpha + 1") {
  double prev = -INFINITY;
  for (int n : {1, 2, 4, 8, 16, 32, 64}) {
    CAPTURE(n);
    const ConstructionRecord rec = theorem_construction(1.0, 1.0, n);
    CHECK(rec.p == 1.0 / (2.0 * n));
    CHECK(rec.inf_gap < 0.0);
    CHECK(rec.inf_gap > prev);
    prev = rec.inf_gap;
    if (n >= 8) CHECK(rec.alpha_flag);
    CHECK(rec.final_norm == doctest::Approx(rec.slope0 * std::pow(rec.c, 1.0 / (1.0 - rec.p))));
  }
  CHECK(std::fabs(theorem_construction(1.0, 1.0, 32).final_norm - 2.0) < 0.1);
  CHECK_FALSE(theorem_construction(1.0, 1.0, 1).alpha_flag);
  CHECK_THROWS_AS(theorem_construction(1.0, 1.0, 0), DomainError);
}

TEST_CASE("constructed field matches the closed-form record") {
  const ConstructionRecord rec = theorem_construction(1.0, 1.0, 8, {}, GridSpec{});
  REQUIRE(rec.field.has_value());
  CHECK(std::fabs(rec.field->lhs / rec.final_norm - 1.0) < 1e-3);
  CHECK(std::fabs(rec.field->rhs / (rec.final_norm - rec.inf_gap) - 1.0) < 1e-4);
  CHECK(rec.field->residual < 1e-3);
}

TEST_CASE("constructed field is odd in x") {
  const ProfileSolution prof = solve_profile(1.0 / 16.0);
  const SpaceTimeField u = selfsim_field(prof, construction_scale(1.0, 1.0), 1.0, GridSpec{});
  for (std::size_t k = 0; k < u.nt(); ++k) {
    for (std::size_t j = 0; j < u.nx(); ++j) CHECK(u.at(k, j) == -u.at(k, u.nx() - 1 - j));
  }
}

TEST_CASE("sweep argument checks") {
  CHECK_THROWS_AS(gap_sweep(0, 1.0, 6.0), DomainError);
  CHECK_THROWS_AS(gap_sweep(4, 0.0, 6.0), DomainError);
  CHECK_THROWS_AS(gap_sweep(4, 1.0, 20.0), DomainError);
}
