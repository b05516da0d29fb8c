#include "canonmat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace canonmat {

namespace {

// Products at least this large (rows * inner * cols) go parallel.
constexpr std::size_t kParallelFlopCutoff = std::size_t{1} << 18;

inline void multiply_one_row(const ComplexMatrix& a, const ComplexMatrix& b,
                             ComplexMatrix& out, std::size_t i) {
  cplx* out_row = &out.data[i * out.cols];
  std::fill(out_row, out_row + out.cols, cplx{});
  for (std::size_t k = 0; k < a.cols; ++k) {
    const cplx aik = a(i, k);
    const cplx* b_row = &b.data[k * b.cols];
    for (std::size_t j = 0; j < b.cols; ++j) {
      out_row[j] += aik * b_row[j];
    }
  }
}

void require_product_shapes(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) {
    throw Error(ErrorCode::ShapeMismatch, "matrix product dimension mismatch");
  }
}

}  // namespace

ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_product_shapes(a, b);
  ComplexMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) multiply_one_row(a, b, out, i);
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_product_shapes(a, b);
#ifdef _OPENMP
  if (a.rows * a.cols * b.cols >= kParallelFlopCutoff) {
    ComplexMatrix out(a.rows, b.cols);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(a.rows); ++i) {
      multiply_one_row(a, b, out, static_cast<std::size_t>(i));
    }
    return out;
  }
#endif
  return multiply_serial(a, b);
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      out(j, i) = std::conj(a(i, j));
    }
  }
  return out;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw Error(ErrorCode::ShapeMismatch, "matrix difference dimension mismatch");
  }
  ComplexMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
  return out;
}

double similarity_residual(const ComplexMatrix& u, const ComplexMatrix& a,
                           const ComplexMatrix& m) {
  return max_abs(subtract(multiply(multiply(u, a), adjoint(u)), m));
}

double unitarity_residual(const ComplexMatrix& u) {
  return max_abs(subtract(multiply(adjoint(u), u), ComplexMatrix::identity(u.cols)));
}

LuFactors lu_factor(const ComplexMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "lu_factor requires a square matrix");
  const std::size_t n = a.rows;
  LuFactors f{a, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  ComplexMatrix& lu = f.packed;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu(i, k));
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0) {
      throw Error(ErrorCode::SingularMatrix, "lu_factor hit an exactly zero pivot");
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      std::swap(f.perm[k], f.perm[pivot]);
    }
    const cplx pk = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx m = lu(i, k) / pk;
      lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    }
  }
  return f;
}

ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& rhs) {
  const std::size_t n = f.packed.rows;
  if (rhs.rows != n) throw Error(ErrorCode::ShapeMismatch, "lu_solve rhs row mismatch");
  ComplexMatrix x(n, rhs.cols);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rhs.cols; ++j) x(i, j) = rhs(f.perm[i], j);
  }
  // forward substitution, unit lower triangle
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const cplx m = f.packed(i, k);
      if (m == cplx{}) continue;
      for (std::size_t j = 0; j < x.cols; ++j) x(i, j) -= m * x(k, j);
    }
  }
  // back substitution
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const cplx m = f.packed(ii, k);
      if (m == cplx{}) continue;
      for (std::size_t j = 0; j < x.cols; ++j) x(ii, j) -= m * x(k, j);
    }
    const cplx d = f.packed(ii, ii);
    for (std::size_t j = 0; j < x.cols; ++j) x(ii, j) /= d;
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return lu_solve(lu_factor(a), ComplexMatrix::identity(a.rows));
}

double norm_1(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

double cond_1_estimate(const ComplexMatrix& a) {
  try {
    return norm_1(a) * norm_1(inverse(a));
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace canonmat
