#pragma once

// Shared helpers for the test binaries: matrix builders, comparison macros,
// and small independent oracles (one-sided Jacobi singular values, naive
// clustering) that deliberately avoid the library's own computational paths.

#include "canonmat/kernels.hpp"
#include "canonmat/numerics.hpp"
#include "canonmat/oracles.hpp"
#include "canonmat/schur.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace testsupport {

using canonmat::ComplexMatrix;
using canonmat::cplx;

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (cplx z : row) m(i, j++) = z;
    ++i;
  }
  return m;
}

inline ComplexMatrix diag(std::initializer_list<cplx> values) {
  ComplexMatrix m(values.size(), values.size());
  std::size_t i = 0;
  for (cplx z : values) {
    m(i, i) = z;
    ++i;
  }
  return m;
}

inline double entry_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return canonmat::max_abs(canonmat::subtract(a, b));
}

// Singular values by one-sided Jacobi sweeps over column pairs; used as the
// independent route for numerical rank. Returns values sorted descending.
inline std::vector<double> singular_values(ComplexMatrix a) {
  const std::size_t n = a.cols;
  const double eps = 1e-14;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        cplx apq = 0.0;
        for (std::size_t i = 0; i < a.rows; ++i) {
          app += std::norm(a(i, p));
          aqq += std::norm(a(i, q));
          apq += std::conj(a(i, p)) * a(i, q);
        }
        const double mag = std::abs(apq);
        if (mag <= eps * std::sqrt(app * aqq)) continue;
        rotated = true;
        const cplx phi = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < a.rows; ++i) {
          const cplx xp = a(i, p);
          const cplx xq = a(i, q);
          a(i, p) = c * xp - s * std::conj(phi) * xq;
          a(i, q) = s * phi * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) norm2 += std::norm(a(i, k));
    sv[k] = std::sqrt(norm2);
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

inline std::size_t numerical_rank(const ComplexMatrix& a, double threshold) {
  std::size_t rank = 0;
  for (double s : singular_values(a)) {
    if (s > threshold) ++rank;
  }
  return rank;
}

// Random partition with block sizes drawn from {1, 2, 3} and eigenvalues
// whose real parts step by at least 0.4 (so pairwise gaps stay large).
inline canonmat::BlockPartition random_partition(std::size_t max_total,
                                                 canonmat::Rng& rng) {
  canonmat::BlockPartition p;
  std::size_t total = 0;
  std::size_t index = 0;
  while (total < max_total) {
    std::size_t size = 1 + static_cast<std::size_t>(rng.uniform() * 3.0);
    size = std::min(size, max_total - total);
    p.sizes.push_back(size);
    p.eigenvalues.push_back(cplx(0.7 * static_cast<double>(index) + rng.uniform(0.0, 0.3),
                                 rng.uniform(-1.0, 1.0)));
    total += size;
    ++index;
  }
  return p;
}

}  // namespace testsupport
