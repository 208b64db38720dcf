#include "parasharp/kernels.hpp"

#include <cmath>

namespace parasharp::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lane[0] = lane[0] + a[i] * b[i];
    lane[1] = lane[1] + a[i + 1] * b[i + 1];
    lane[2] = lane[2] + a[i + 2] * b[i + 2];
    lane[3] = lane[3] + a[i + 3] * b[i + 3];
  }
  for (std::size_t k = 0; i < n; ++i, ++k) {
    lane[k] = lane[k] + a[i] * b[i];
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) {
    const double av = std::fabs(v);
    m = av > m ? av : m;
  }
  return m;
}

void lincomb4(const std::array<double, 4>& c,
              const std::array<std::span<const double>, 4>& rows,
              std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ((c[0] * rows[0][i] + c[1] * rows[1][i]) + c[2] * rows[2][i]) +
             c[3] * rows[3][i];
  }
}

}  // namespace parasharp::kernels::scalar
