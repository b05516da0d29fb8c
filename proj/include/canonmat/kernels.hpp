#pragma once

// Dense complex kernels. multiply() dispatches to an OpenMP path once the
// product is large enough; multiply_serial() is the reference implementation
// the parallel path is tested against. Both compute every output element with
// the same inner summation order, so their results agree bitwise.

#include "canonmat/numerics.hpp"

namespace canonmat {

ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||u * a * u^H - m||_max, the residual of a similarity factorization.
double similarity_residual(const ComplexMatrix& u, const ComplexMatrix& a,
                           const ComplexMatrix& m);

/// ||u^H * u - I||_max.
double unitarity_residual(const ComplexMatrix& u);

struct LuFactors {
  ComplexMatrix packed;            // unit-lower L and U share storage
  std::vector<std::size_t> perm;   // row permutation applied to the input
};

LuFactors lu_factor(const ComplexMatrix& a);
ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& rhs);
ComplexMatrix inverse(const ComplexMatrix& a);

double norm_1(const ComplexMatrix& a);

/// ||a||_1 * ||a^-1||_1; +inf when a is numerically singular.
double cond_1_estimate(const ComplexMatrix& a);

}  // namespace canonmat
