#pragma once

// Shared numeric primitives: complex scalars, the lexicographic order on
// them, tolerance policy, and dense row-major complex matrix storage.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace canonmat {

using cplx = std::complex<double>;

enum class ErrorCode {
  InvalidArgument,
  NotSquare,
  NoConvergence,
  ClusterAmbiguity,
  NotNonderogatory,
  RepeatedEigenvalue,
  CycleError,
  NotConnected,
  AlreadyConnected,
  BadRatio,
  IndexOutOfRange,
  AllZero,
  ShapeMismatch,
  NonzeroCrossBlock,
  LengthTooLarge,
  SingularMatrix,
  ParseError,
  DimensionMismatch,
  NonFiniteEntry,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Tolerance policy. All thresholds are relative to the max-abs entry of the
/// matrix they are applied to. max_qr_iters == 0 means "30 * n", resolved at
/// the call site once the matrix size is known.
struct ToleranceConfig {
  double tol_eig = 1e-8;
  double tol_zero = 1e-10;
  double tol_residual = 1e-10;
  std::size_t max_qr_iters = 0;
};

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  cplx& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }

  bool square() const { return rows == cols; }

  static ComplexMatrix identity(std::size_t n);
};

enum class Ordering { Less, Equal, Greater };

/// Lexicographic order on complex numbers: real parts first, then imaginary
/// parts. Exact comparison; tolerance-bearing equality lives in
/// cluster_values.
Ordering lex_compare(cplx a, cplx b);
bool lex_less(cplx a, cplx b);

/// |z| <= tol_zero * scale.
bool approx_zero(cplx z, double scale, double tol_zero);

struct Cluster {
  cplx representative;
  std::vector<std::size_t> members;  // ascending input indices
};

/// Single-linkage clustering of values under the metric
/// |x - y| <= tol_eig * scale. Representatives are cluster means (summed in
/// lexicographic member order, so the result is permutation invariant) and
/// clusters come back sorted lexicographically by representative. Throws
/// ClusterAmbiguity when two representatives end up closer than
/// 2 * tol_eig * scale.
std::vector<Cluster> cluster_values(const std::vector<cplx>& values,
                                    double scale, double tol_eig);

/// Max-abs entry; the matrix norm used by every relative tolerance test.
double max_abs(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, const char* what);

}  // namespace canonmat
