#pragma once

// Seeded instance generators and independent cross-checking oracles. The
// oracles decide equivalence by entrywise ratio propagation over a labeled
// union-find and never call into the canonicalization pipeline, so the two
// routes can check each other.

#include "canonmat/forest.hpp"
#include "canonmat/schur.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>

namespace canonmat {

struct OracleVerdict {
  bool equivalent = false;
  std::vector<cplx> witness;  // per-vertex factors when equivalent
  std::string certificate;    // violated constraint otherwise
};

/// Decides whether unit-modulus factors u_0..u_{t-1} exist with
/// B_ij = u_i^-1 u_j A_ij for every off-diagonal block. Both inputs must be
/// in eigenvalue-block form over the same partition; unequal diagonal blocks
/// or mismatched zero patterns yield a not-equivalent verdict with a
/// certificate.
OracleVerdict phase_match_oracle(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const BlockPartition& partition,
                                 const ToleranceConfig& tol);

/// Same idea entrywise, without the modulus constraint: nonzero factors
/// s_0..s_{n-1} with b2_pq = s_p^-1 s_q b_pq. Diagonal entries must match.
OracleVerdict scale_match_oracle(const ComplexMatrix& b, const ComplexMatrix& b2,
                                 const ToleranceConfig& tol);

struct TraceWord {
  std::string word;  // letters 'X' (the matrix) and 'Y' (its adjoint)
  cplx value;
};

/// Traces of all nonempty words of length <= max_len in the matrix and its
/// adjoint, shortlex order with X before Y. These are unitary-similarity
/// invariants. max_len <= 8.
std::vector<TraceWord> trace_word_invariants(const ComplexMatrix& m,
                                             std::size_t max_len);

/// Deterministic seedable generator: std::mt19937_64 seeded through a
/// splitmix64 hash of (seed, stream). Gaussians come from an explicit
/// Box-Muller transform so the stream does not depend on the standard
/// library's distribution implementations. fork(site) derives an independent
/// stream for one draw site; the site tags used by the generators below are
/// documented next to them.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng fork(std::uint64_t site) const;

  std::uint64_t bits();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  cplx normal_cplx();

  static std::uint64_t splitmix64(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary: Gram-Schmidt (with one re-orthogonalization
/// pass) applied to a complex Gaussian matrix; the triangular factor's
/// diagonal is positive real by construction. Draw site 0x11.
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

/// Eigenvalue-block form over a given partition: constant block diagonals,
/// within-block superdiagonal uniform in [0.5, 2], within-block strict upper
/// entries random, each off-diagonal block filled with probability
/// fill_density (all entries random) and zero otherwise. Draw site 0x12.
ComplexMatrix random_block_schur_form(const BlockPartition& partition,
                                      double fill_density, std::uint64_t seed);

/// random_block_schur_form conjugated by random_unitary; nonderogatory by
/// construction. Draw sites 0x12 (entries) and 0x13 (unitary).
ComplexMatrix random_nonderogatory(const BlockPartition& partition,
                                   double fill_density, std::uint64_t seed);

/// (diag(lambda), b) with lex-increasing eigenvalues at pairwise gaps >= 0.1
/// and b entries nonzero with probability fill_density (moduli in
/// [0.3, 1.5]). Draw site 0x14.
std::pair<ComplexMatrix, ComplexMatrix> random_diag_pair(std::size_t n,
                                                         double fill_density,
                                                         std::uint64_t seed);

/// Nonsingular similarity with condition number at most cond_target:
/// U * diag(sigma) * V^H with log-uniform sigma. Draw site 0x15.
ComplexMatrix random_similarity(std::size_t n, double cond_target,
                                std::uint64_t seed);

}  // namespace canonmat
