#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include "parasharp/kernels.hpp"

using namespace parasharp::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng) * std::exp(8.0 * dist(rng));
  return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("isa names and availability") {
  CHECK(isa_name(Isa::Scalar) == "scalar");
  CHECK(isa_name(Isa::Avx2) == "avx2");
  CHECK(isa_available(Isa::Scalar));
}

TEST_CASE("scalar dot and max_abs on small inputs") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> b{1.0, -1.0, 1.0, -1.0, 2.0};
  CHECK(scalar::dot(a, b) == doctest::Approx(8.0));
  CHECK(scalar::max_abs(b) == 2.0);
  CHECK(scalar::max_abs(std::vector<double>{}) == 0.0);
  CHECK(scalar::dot(std::vector<double>{}, std::vector<double>{}) == 0.0);
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  std::mt19937_64 rng(12345);
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 129, 1000, 4099}) {
    CAPTURE(n);
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    CHECK(same_bits(scalar::dot(a, b), avx2::dot(a, b)));
    CHECK(same_bits(scalar::max_abs(a), avx2::max_abs(a)));

    const std::array<double, 4> c{0.3, -1.7, 2.25, 1e-3};
    const auto r0 = random_vector(n, rng), r1 = random_vector(n, rng),
               r2 = random_vector(n, rng), r3 = random_vector(n, rng);
    std::vector<double> s(n), v(n);
    scalar::lincomb4(c, {r0, r1, r2, r3}, s);
    avx2::lincomb4(c, {r0, r1, r2, r3}, v);
    for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(s[i], v[i]));
  }
}

TEST_CASE("lincomb4 follows the documented association") {
  const std::array<double, 4> c{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> r0{1.0}, r1{1.0}, r2{1.0}, r3{1.0};
  std::vector<double> out(1);
  scalar::lincomb4(c, {r0, r1, r2, r3}, out);
  CHECK(out[0] == 10.0);
}

TEST_CASE("max_abs ignores sign and handles a single large tail element") {
  std::vector<double> v(13, 0.5);
  v[12] = -9.0;
  CHECK(scalar::max_abs(v) == 9.0);
  CHECK(avx2::max_abs(v) == 9.0);
}

TEST_CASE("dispatch honours set_active_isa") {
  const Isa before = active_isa();
  set_active_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  const std::vector<double> a{1.0, 2.0, 3.0};
  CHECK(dot(a, a) == 14.0);
  CHECK(max_abs(a) == 3.0);
  if (isa_available(Isa::Avx2)) {
    set_active_isa(Isa::Avx2);
    CHECK(active_isa() == Isa::Avx2);
    CHECK(dot(a, a) == 14.0);
  }
  set_active_isa(before);
}
