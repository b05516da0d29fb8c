#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "canonmat/kernels.hpp"
#include "canonmat/oracles.hpp"
#include "canonmat/schur.hpp"

#include "support.hpp"

#include <cmath>

using namespace canonmat;
using testsupport::diag;
using testsupport::mat;

namespace {

const ToleranceConfig kTol{};

void check_schur_invariants(const ComplexMatrix& m, const SchurForm& s,
                            double slack = 1.0) {
  const std::size_t n = m.rows;
  CHECK(unitarity_residual(s.u) <= slack * n * kTol.tol_residual);
  CHECK(similarity_residual(s.u, s.a, m) <=
        slack * n * kTol.tol_residual * std::max(1.0, max_abs(m)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) CHECK(s.a(i, j) == cplx{});
  }
}

}  // namespace

TEST_CASE("schur_ordered reorders a diagonal matrix") {
  const ComplexMatrix m = diag({cplx(2, 0), cplx(1, 0)});
  const SchurForm s = schur_ordered(m, kTol);
  CHECK(s.a(0, 0) == cplx(1, 0));
  CHECK(s.a(1, 1) == cplx(2, 0));
  CHECK(s.a(0, 1) == cplx{});
  check_schur_invariants(m, s);
  // the transform is an exchange up to phases
  CHECK(std::abs(s.u(0, 0)) < 1e-15);
  CHECK(std::abs(std::abs(s.u(0, 1)) - 1.0) < 1e-15);
}

TEST_CASE("schur_ordered leaves an ordered triangular matrix alone") {
  const ComplexMatrix m = mat({{cplx(0, 0), cplx(1, 0)}, {cplx(0, 0), cplx(0, 0)}});
  const SchurForm s = schur_ordered(m, kTol);
  CHECK(s.a(0, 0) == cplx{});
  CHECK(s.a(0, 1) == cplx(1, 0));
  CHECK(s.a(1, 1) == cplx{});
  CHECK(s.u(0, 0) == cplx(1, 0));
  CHECK(s.u(1, 1) == cplx(1, 0));
  CHECK(s.u(0, 1) == cplx{});
}

TEST_CASE("schur_ordered diagonalizes a rotation with eigenvalues -i, +i") {
  const ComplexMatrix m = mat({{cplx(0, 0), cplx(-1, 0)}, {cplx(1, 0), cplx(0, 0)}});
  const SchurForm s = schur_ordered(m, kTol);
  CHECK(std::abs(s.a(0, 0) - cplx(0, -1)) < 1e-14);
  CHECK(std::abs(s.a(1, 1) - cplx(0, 1)) < 1e-14);
  // normal matrix: the Schur form is diagonal
  CHECK(std::abs(s.a(0, 1)) < 1e-14);
  check_schur_invariants(m, s);
}

TEST_CASE("schur_ordered rejects bad input") {
  CHECK_THROWS_AS(schur_ordered(ComplexMatrix(2, 3), kTol), Error);
  ComplexMatrix nan_mat(1, 1);
  nan_mat(0, 0) = cplx(std::nan(""), 0);
  CHECK_THROWS_AS(schur_ordered(nan_mat, kTol), Error);
}

TEST_CASE("positivize_superdiagonal single phase") {
  const ComplexMatrix a = mat({{cplx(0, 0), cplx(0, 2)}, {cplx(0, 0), cplx(0, 0)}});
  const PositivizeResult r = positivize_superdiagonal(a, kTol);
  CHECK(r.a(0, 1) == cplx(2, 0));
  CHECK(r.a(0, 0) == cplx{});
  CHECK(r.d(0, 0) == cplx(1, 0));
  // d follows the recursion d_k = d_{k-1} * phase(a_{k-1,k}), so d_1 = i here
  CHECK(std::abs(r.d(1, 1) - cplx(0, 1)) < 1e-15);
  // conjugation identity d * a * d^-1 == result
  const ComplexMatrix lhs = multiply(multiply(r.d, a), inverse(r.d));
  CHECK(testsupport::entry_distance(lhs, r.a) < 1e-15);
}

TEST_CASE("positivize_superdiagonal three by three") {
  const ComplexMatrix a = mat({{cplx(1, 0), cplx(-3, 0), cplx(5, 0)},
                               {cplx(0, 0), cplx(1, 0), cplx(0, 4)},
                               {cplx(0, 0), cplx(0, 0), cplx(1, 0)}});
  const PositivizeResult r = positivize_superdiagonal(a, kTol);
  CHECK(std::abs(r.a(0, 1) - cplx(3, 0)) < 1e-15);
  CHECK(std::abs(r.a(0, 2) - cplx(0, 5)) < 1e-15);
  CHECK(std::abs(r.a(1, 2) - cplx(4, 0)) < 1e-15);
  CHECK(std::abs(r.d(1, 1) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(r.d(2, 2) - cplx(0, -1)) < 1e-15);
  CHECK(r.a(0, 1).imag() == 0.0);
  CHECK(r.a(1, 2).imag() == 0.0);
}

TEST_CASE("positivize_superdiagonal leaves a diagonal matrix untouched") {
  const ComplexMatrix a = diag({cplx(1, 0), cplx(2, 0), cplx(3, 0)});
  const PositivizeResult r = positivize_superdiagonal(a, kTol);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.a(i, j) == a(i, j));
    CHECK(r.d(i, i) == cplx(1, 0));
  }
}

TEST_CASE("positivize preserves superdiagonal moduli") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 10);
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) a(i, j) = rng.normal_cplx();
    }
    const PositivizeResult r = positivize_superdiagonal(a, kTol);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(std::abs(std::abs(r.a(k - 1, k)) - std::abs(a(k - 1, k))) <
            1e-13 * std::max(1.0, std::abs(a(k - 1, k))));
      CHECK(r.a(k - 1, k).imag() == 0.0);
      CHECK(r.a(k - 1, k).real() >= 0.0);
    }
    CHECK(std::abs(similarity_residual(adjoint(r.d), a, r.a)) < 1e-13 * max_abs(a));
  }
}

TEST_CASE("block_partition_of splits and snaps a clustered diagonal") {
  ComplexMatrix a = diag({cplx(1, 0), cplx(1, 0), cplx(2, 0)});
  a(0, 1) = cplx(0, 3);
  const SchurForm s{ComplexMatrix::identity(3), a, {a(0, 0), a(1, 1), a(2, 2)}};
  const BlockSchurForm o = block_partition_of(s, kTol);
  CHECK(o.partition.sizes == std::vector<std::size_t>{2, 1});
  CHECK(o.partition.eigenvalues[0] == cplx(1, 0));
  CHECK(o.partition.eigenvalues[1] == cplx(2, 0));
  CHECK(o.a(0, 1) == cplx(3, 0));
  // conjugation consistency: u a_input u^H reproduces the block form's source
  CHECK(similarity_residual(o.u, o.a, a) < 1e-13 * max_abs(a));
}

TEST_CASE("block_partition_of with distinct eigenvalues is the identity") {
  const ComplexMatrix a = diag({cplx(1, 0), cplx(2, 0), cplx(3, 0)});
  const SchurForm s{ComplexMatrix::identity(3), a, {a(0, 0), a(1, 1), a(2, 2)}};
  const BlockSchurForm o = block_partition_of(s, kTol);
  CHECK(o.partition.sizes == std::vector<std::size_t>{1, 1, 1});
  for (std::size_t i = 0; i < 9; ++i) CHECK(o.a.data[i] == a.data[i]);
}

TEST_CASE("block_partition_of positivizes inside a single block") {
  ComplexMatrix a = diag({cplx(5, 0), cplx(5, 0)});
  a(0, 1) = cplx(-4, 0);
  const SchurForm s{ComplexMatrix::identity(2), a, {a(0, 0), a(1, 1)}};
  const BlockSchurForm o = block_partition_of(s, kTol);
  CHECK(o.partition.sizes == std::vector<std::size_t>{2});
  CHECK(o.a(0, 1) == cplx(4, 0));
}

TEST_CASE("block_partition_of leaves cross-block superdiagonal entries alone") {
  // diag (1, 1, 2); entry (2,3) crosses the block boundary and must keep its
  // phase rather than being realified.
  ComplexMatrix a = diag({cplx(1, 0), cplx(1, 0), cplx(2, 0)});
  a(0, 1) = cplx(0, 3);
  a(1, 2) = cplx(0, 7);
  const SchurForm s{ComplexMatrix::identity(3), a, {a(0, 0), a(1, 1), a(2, 2)}};
  const BlockSchurForm o = block_partition_of(s, kTol);
  CHECK(o.a(0, 1) == cplx(3, 0));
  CHECK(o.a(1, 2) == cplx(0, 7));  // transformed by d but not realified
}

TEST_CASE("is_nonderogatory checks within-block superdiagonals") {
  ComplexMatrix a1 = diag({cplx(5, 0), cplx(5, 0)});
  a1(0, 1) = cplx(4, 0);
  BlockSchurForm o1{a1, {{2}, {cplx(5, 0)}}, ComplexMatrix::identity(2)};
  CHECK(is_nonderogatory(o1, kTol));

  const ComplexMatrix a2 = diag({cplx(5, 0), cplx(5, 0)});
  BlockSchurForm o2{a2, {{2}, {cplx(5, 0)}}, ComplexMatrix::identity(2)};
  CHECK(!is_nonderogatory(o2, kTol));

  const ComplexMatrix a3 = diag({cplx(1, 0), cplx(2, 0), cplx(3, 0)});
  BlockSchurForm o3{a3, {{1, 1, 1}, {cplx(1, 0), cplx(2, 0), cplx(3, 0)}},
                    ComplexMatrix::identity(3)};
  CHECK(is_nonderogatory(o3, kTol));
}

TEST_CASE("backward error over many random matrices") {
  Rng rng(2718);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 12);
    ComplexMatrix m(n, n);
    for (cplx& z : m.data) z = rng.normal_cplx();
    const SchurForm s = schur_ordered(m, kTol);
    check_schur_invariants(m, s);
    // ordering: diagonal clusters contiguous with lex increasing reps
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(!lex_less(s.a(i + 1, i + 1), s.a(i, i)));
    }
  }
}

TEST_CASE("ordered block form on matrices with repeated eigenvalues") {
  Rng rng(999);
  ToleranceConfig tol;
  tol.tol_eig = 1e-5;  // defective eigenvalues split by roughly sqrt(eps)
  for (int trial = 0; trial < 60; ++trial) {
    BlockPartition p = testsupport::random_partition(
        2 + static_cast<std::size_t>(rng.uniform() * 8), rng);
    const ComplexMatrix m = random_nonderogatory(p, 0.6, rng.bits());
    const SchurForm s = schur_ordered(m, tol);
    const BlockSchurForm o = block_partition_of(s, tol);
    CHECK(o.partition.sizes == p.sizes);
    CHECK(is_nonderogatory(o, tol));
    // block-constant snapped diagonal, lex strictly increasing across blocks
    for (std::size_t b = 0; b + 1 < o.partition.block_count(); ++b) {
      CHECK(lex_less(o.partition.eigenvalues[b], o.partition.eigenvalues[b + 1]));
    }
    std::size_t off = 0;
    for (std::size_t b = 0; b < o.partition.block_count(); ++b) {
      for (std::size_t k = 0; k < o.partition.sizes[b]; ++k) {
        CHECK(o.a(off + k, off + k) == o.partition.eigenvalues[b]);
      }
      off += o.partition.sizes[b];
    }
    // snapping moves clustered diagonal entries to their mean, so the
    // residual is bounded by the cluster spread rather than tol_residual
    CHECK(similarity_residual(o.u, o.a, m) <
          10 * tol.tol_eig * std::max(1.0, max_abs(m)));
  }
}

TEST_CASE("nonderogatory flag agrees with the singular-value rank criterion") {
  Rng rng(31415);
  ToleranceConfig tol;
  tol.tol_eig = 1e-5;
  int derogatory_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    BlockPartition p = testsupport::random_partition(
        2 + static_cast<std::size_t>(rng.uniform() * 6), rng);
    ComplexMatrix a = random_block_schur_form(p, 0.5, rng.bits());
    // knock out some within-block superdiagonal entries to force extra
    // Jordan blocks
    std::vector<std::size_t> jordan_blocks(p.block_count(), 1);
    std::size_t off = 0;
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      for (std::size_t k = 1; k < p.sizes[b]; ++k) {
        if (rng.uniform() < 0.3) {
          a(off + k - 1, off + k) = cplx{};
          ++jordan_blocks[b];
        }
      }
      off += p.sizes[b];
    }
    const bool expect_nonderogatory = std::all_of(
        jordan_blocks.begin(), jordan_blocks.end(), [](std::size_t c) { return c == 1; });
    if (!expect_nonderogatory) ++derogatory_seen;

    const ComplexMatrix u = random_unitary(p.total(), rng.bits());
    const ComplexMatrix m = multiply(multiply(u, a), adjoint(u));

    const BlockSchurForm o = block_partition_of(schur_ordered(m, tol), tol);
    CHECK(is_nonderogatory(o, tol) == expect_nonderogatory);

    // independent rank route on the constructed eigenvalues
    const std::size_t n = p.total();
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      ComplexMatrix shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= p.eigenvalues[b];
      const std::size_t rank =
          testsupport::numerical_rank(shifted, tol.tol_zero * max_abs(m) * 1e2);
      CHECK(n - rank == jordan_blocks[b]);
    }
  }
  CHECK(derogatory_seen > 3);
}
