#pragma once

// Canonical forms of nonderogatory matrices under unitary similarity. The
// off-diagonal blocks of the eigenvalue-block form are reduced superdiagonal
// by superdiagonal; every reduction fixes one block's overall phase and adds
// one edge to an undirected forest whose connectivity tells which later
// blocks are already pinned down.

#include "canonmat/forest.hpp"
#include "canonmat/schur.hpp"

#include <utility>

namespace canonmat {

/// Block positions (i, j), i < j, listed superdiagonal by superdiagonal:
/// (0,1), (1,2), ..., then (0,2), (1,3), ..., up to (0, t-1).
std::vector<std::pair<std::size_t, std::size_t>> scan_order(
    const BlockPartition& partition);

struct PhaseReduction {
  ComplexMatrix block;  // phase * input, marked entry stored exactly real
  cplx phase;           // unit modulus
  std::size_t marked_row = 0;
  std::size_t marked_col = 0;
};

/// Scales a nonzero block by the unit phase that turns its leading scan entry
/// into a positive real. The scan runs over the diagonals of the block from
/// the lower-left corner upwards, each diagonal traversed top-left to
/// bottom-right; the first entry that fails the zero test is the leading one.
/// Throws AllZero when every entry passes the zero test.
PhaseReduction phase_normalize_block(const ComplexMatrix& c, double scale,
                                     const ToleranceConfig& tol);

struct CanonicalResult {
  ComplexMatrix m_can;
  BlockPartition partition;
  Forest g;
  ComplexMatrix u_total;
  std::vector<std::pair<std::size_t, std::size_t>> reduced_blocks;  // scan order
  std::vector<cplx> vertex_phases;  // accumulated per-block phase, diagnostic
};

CanonicalResult canonicalize_unitary(const ComplexMatrix& m,
                                     const ToleranceConfig& tol);

/// Checks the normal-form shape against a forest: reduced shape on edges,
/// forced zeros where the forest has no path or only a path through a
/// later-scanned edge, free entries elsewhere.
bool is_g_canonical(const ComplexMatrix& a, const BlockPartition& partition,
                    const Forest& g, const ToleranceConfig& tol);

struct CanonicalBlockSummand {
  Forest tree;  // relabeled 0..t_i-1, insertion order preserved
  ComplexMatrix matrix;
  std::vector<std::size_t> original_vertices;  // ascending block indices
  BlockPartition partition;
};

struct Decomposition {
  std::vector<CanonicalBlockSummand> summands;
  // Entry-level permutation: new index -> old index. With P the permutation
  // matrix P(old, new) = [perm[new] == old], P^T * m_can * P equals the
  // direct sum of the summand matrices.
  std::vector<std::size_t> permutation;
};

Decomposition decompose(const CanonicalResult& cr, const ToleranceConfig& tol);

/// Structural-then-numeric equality of two canonical results; this is the
/// unitary-similarity decision. An explanation lands in *why on mismatch.
bool canonical_equal(const CanonicalResult& x, const CanonicalResult& y,
                     const ToleranceConfig& tol, std::string* why = nullptr);

}  // namespace canonmat
