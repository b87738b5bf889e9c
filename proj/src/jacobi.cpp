#include "sktdpc/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sktdpc {

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, double tolerance,
                            int max_sweeps) {
  if (a.size() != n * n) throw std::invalid_argument("jacobi_eigen: matrix size mismatch");

  double total = 0.0;
  for (double v : a) total += v * v;
  total = std::sqrt(total);

  // v holds eigenvectors as columns, row-major during the sweeps.
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  int sweep = 0;
  const double threshold = tolerance * total;
  while (sweep < max_sweeps && off_diagonal_norm(a, n) > threshold) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Rotation angle annihilating a[p][q] (stable tangent form).
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          a[r * n + p] = c * arp - s * arq;
          a[r * n + q] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a[p * n + r];
          const double aqr = a[q * n + r];
          a[p * n + r] = c * apr - s * aqr;
          a[q * n + r] = s * apr + c * aqr;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;

        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = c * vrp - s * vrq;
          v[r * n + q] = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] > a[y * n + y];
  });

  SymmetricEigen out;
  out.dim = n;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a[src * n + src];
    std::size_t big = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::abs(v[r * n + src]) > std::abs(v[big * n + src])) big = r;
    const double sign = v[big * n + src] < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) out.vectors[c * n + r] = sign * v[r * n + src];
  }
  return out;
}

}  // namespace sktdpc
