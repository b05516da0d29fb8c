#pragma once

// Deterministic JSON documents: matrices as nested [re, im] pairs, results as
// fixed-key-order objects. Serialization prints shortest round-trip decimals,
// LF line endings and a trailing newline, so identical inputs give byte
// identical output. Vertices are 1-based in every document.

#include "canonmat/pair_canon.hpp"
#include "canonmat/unitary_canon.hpp"

#include <string>

namespace canonmat {

/// Parses a matrix document; throws ParseError (with line/column),
/// DimensionMismatch, or NonFiniteEntry.
ComplexMatrix parse_matrix(const std::string& text);

std::string serialize_matrix(const ComplexMatrix& m);

std::string serialize_unitary_result(const CanonicalResult& r,
                                     const ToleranceConfig& tol,
                                     double residual, double unitarity);

std::string serialize_pair_result(const CanonicalPairResult& r,
                                  const ToleranceConfig& tol, double residual);

std::string serialize_similarity_decision(bool similar, const std::string& detail);

std::string serialize_decomposition(const Decomposition& d);

struct StoredUnitaryResult {
  ComplexMatrix m_can;
  BlockPartition partition;
  Forest g;
};

struct StoredPairResult {
  std::vector<cplx> lambda;
  ComplexMatrix b_can;
  DiForest g;
};

enum class ResultKind { Unitary, Pair };

ResultKind stored_result_kind(const std::string& text);
StoredUnitaryResult parse_unitary_result(const std::string& text);
StoredPairResult parse_pair_result(const std::string& text);

}  // namespace canonmat
