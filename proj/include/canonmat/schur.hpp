#pragma once

// Unitary reduction to an ordered Schur form and to the block triangular
// eigenvalue-block form used by the canonicalization stages: one diagonal
// block per distinct eigenvalue, eigenvalues lexicographically increasing
// across blocks, first superdiagonal inside every block real nonnegative.

#include "canonmat/numerics.hpp"

namespace canonmat {

struct SchurForm {
  ComplexMatrix u;              // accumulated unitary: m = u * a * u^H
  ComplexMatrix a;              // upper triangular
  std::vector<cplx> diag_order; // diagonal of a, top to bottom
};

struct BlockPartition {
  std::vector<std::size_t> sizes;
  std::vector<cplx> eigenvalues;  // lex strictly increasing

  std::size_t block_count() const { return sizes.size(); }
  std::size_t total() const;
  std::size_t offset(std::size_t block) const;  // first row/col of a block
};

struct BlockSchurForm {
  ComplexMatrix a;
  BlockPartition partition;
  ComplexMatrix u;  // accumulated from the original input
};

/// Hessenberg reduction plus shifted QR iteration, then eigenvalue ordering
/// by adjacent unitary swaps: clustered eigenvalues become contiguous and
/// cluster representatives appear in lexicographic order.
SchurForm schur_ordered(const ComplexMatrix& m, const ToleranceConfig& tol);

struct PositivizeResult {
  ComplexMatrix a;  // d * input * d^-1, first superdiagonal real nonnegative
  ComplexMatrix d;  // diagonal unitary, d(0,0) == 1
};

/// Diagonal unitary similarity that replaces every nonzero first-superdiagonal
/// entry of an upper triangular matrix by its modulus; entries classified zero
/// become exact zeros.
PositivizeResult positivize_superdiagonal(const ComplexMatrix& a,
                                          const ToleranceConfig& tol);

/// Clusters the diagonal, snaps each diagonal entry to its cluster
/// representative, and positivizes the superdiagonal inside diagonal blocks
/// only (entries that cross a block boundary belong to the off-diagonal
/// blocks and are left to the canonicalization stage).
BlockSchurForm block_partition_of(const SchurForm& s, const ToleranceConfig& tol);

/// True iff every first-superdiagonal entry inside every diagonal block is
/// nonzero (equivalently strictly positive after positivization).
bool is_nonderogatory(const BlockSchurForm& o, const ToleranceConfig& tol);

}  // namespace canonmat
