#include "parasharp/kernels.hpp"

#if defined(PARASHARP_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace parasharp::kernels::avx2 {

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(a.data() + i);
    const __m256d y = _mm256_loadu_pd(b.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, y));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t k = 0; i < n; ++i, ++k) {
    lane[k] = lane[k] + a[i] * b[i];
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double max_abs(std::span<const double> a) {
  const std::size_t n = a.size();
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_andnot_pd(sign, _mm256_loadu_pd(a.data() + i));
    // max_pd returns its second operand when either is NaN, which matches
    // the scalar comparison `v > m ? v : m`.
    m = _mm256_max_pd(v, m);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double r = 0.0;
  for (double v : lane) r = v > r ? v : r;
  for (; i < n; ++i) {
    const double av = std::fabs(a[i]);
    r = av > r ? av : r;
  }
  return r;
}

void lincomb4(const std::array<double, 4>& c,
              const std::array<std::span<const double>, 4>& rows,
              std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d c0 = _mm256_set1_pd(c[0]);
  const __m256d c1 = _mm256_set1_pd(c[1]);
  const __m256d c2 = _mm256_set1_pd(c[2]);
  const __m256d c3 = _mm256_set1_pd(c[3]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_mul_pd(c0, _mm256_loadu_pd(rows[0].data() + i)),
                              _mm256_mul_pd(c1, _mm256_loadu_pd(rows[1].data() + i)));
    s = _mm256_add_pd(s, _mm256_mul_pd(c2, _mm256_loadu_pd(rows[2].data() + i)));
    s = _mm256_add_pd(s, _mm256_mul_pd(c3, _mm256_loadu_pd(rows[3].data() + i)));
    _mm256_storeu_pd(out.data() + i, s);
  }
  for (; i < n; ++i) {
    out[i] = ((c[0] * rows[0][i] + c[1] * rows[1][i]) + c[2] * rows[2][i]) +
             c[3] * rows[3][i];
  }
}

}  // namespace parasharp::kernels::avx2

#else

namespace parasharp::kernels::avx2 {

double dot(std::span<const double> a, std::span<const double> b) {
  return scalar::dot(a, b);
}
double max_abs(std::span<const double> a) { return scalar::max_abs(a); }
void lincomb4(const std::array<double, 4>& c,
              const std::array<std::span<const double>, 4>& rows,
              std::span<double> out) {
  scalar::lincomb4(c, rows, out);
}

}  // namespace parasharp::kernels::avx2

#endif
