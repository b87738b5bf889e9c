#pragma once

#include <cstddef>
#include <vector>

namespace sktdpc {

/// Eigen-decomposition of a real symmetric matrix.
struct SymmetricEigen {
  std::size_t dim = 0;
  /// Descending.
  std::vector<double> values;
  /// Column-major: column c (values[c]'s eigenvector) starts at c * dim.
  std::vector<double> vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a row-major dim x dim symmetric matrix. Stops
/// when the off-diagonal Frobenius norm drops below `tolerance` times the
/// Frobenius norm of the input. Each eigenvector is sign-normalised so that
/// its largest-magnitude entry is positive.
SymmetricEigen jacobi_eigen(std::vector<double> matrix, std::size_t dim,
                            double tolerance = 1e-12, int max_sweeps = 100);

}  // namespace sktdpc
