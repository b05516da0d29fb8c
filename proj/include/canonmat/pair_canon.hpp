#pragma once

// Canonical forms for pairs (M, N) under simultaneous similarity when M has
// distinct eigenvalues: M is diagonalized with lexicographically increasing
// eigenvalues, then the entries of the transformed N are normalized to one in
// row-major order, each normalization adding a directed edge to a forest.

#include "canonmat/forest.hpp"
#include "canonmat/schur.hpp"

#include <functional>
#include <utility>

namespace canonmat {

struct Diagonalization {
  ComplexMatrix s;           // columns are unit eigenvectors
  std::vector<cplx> lambda;  // lex strictly increasing
  double cond_estimate = 0.0;
};

/// Eigenvalues via the ordered Schur form, eigenvectors by back-substitution
/// on the triangular factor. Columns are normalized to unit length with their
/// first nonzero entry real positive. Throws RepeatedEigenvalue when two
/// eigenvalues fall within tol_eig of each other (relative to the matrix
/// scale).
Diagonalization diagonalize_distinct(const ComplexMatrix& m,
                                     const ToleranceConfig& tol);

struct DiagPair {
  std::vector<cplx> lambda;
  ComplexMatrix b;
  ComplexMatrix s;
  double cond_estimate = 0.0;
};

/// The pair (diag(lambda), b) similar to (m, n_mat) via s.
DiagPair diagonal_pair_of(const ComplexMatrix& m, const ComplexMatrix& n_mat,
                          const ToleranceConfig& tol);

struct CanonicalPairResult {
  std::vector<cplx> lambda;
  ComplexMatrix b_can;
  DiForest g;
  ComplexMatrix s_total;
  std::vector<std::pair<std::size_t, std::size_t>> ones;  // scan order
  std::vector<cplx> vertex_scales;  // accumulated per-vertex factor, diagnostic
  double cond_estimate = 0.0;
};

/// Observer invoked after every scan step with the step count (1-based,
/// row-major) and the current matrix; used by tests to watch prefix
/// stability.
using PairStepObserver = std::function<void(std::size_t, const ComplexMatrix&)>;

CanonicalPairResult canonicalize_pair(const ComplexMatrix& m,
                                      const ComplexMatrix& n_mat,
                                      const ToleranceConfig& tol,
                                      const PairStepObserver& observer = {});

bool is_g_canonical_pair(const std::vector<cplx>& lambda, const ComplexMatrix& b,
                         const DiForest& g, const ToleranceConfig& tol);

struct PairSummand {
  std::vector<cplx> lambda;
  ComplexMatrix b;
  DiForest tree;  // relabeled 0..t_i-1
  std::vector<std::size_t> original_vertices;
};

struct PairDecomposition {
  std::vector<PairSummand> summands;
  std::vector<std::size_t> permutation;  // new index -> old index
};

PairDecomposition decompose_pair(const CanonicalPairResult& cpr,
                                 const ToleranceConfig& tol);

bool canonical_pair_equal(const CanonicalPairResult& x, const CanonicalPairResult& y,
                          const ToleranceConfig& tol, std::string* why = nullptr);

}  // namespace canonmat
