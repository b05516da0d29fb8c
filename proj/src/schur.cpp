#include "canonmat/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace canonmat {

std::size_t BlockPartition::total() const {
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  return n;
}

std::size_t BlockPartition::offset(std::size_t block) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < block; ++i) off += sizes[i];
  return off;
}

namespace {

// Unitary G = [[c, s], [-conj(s), c]] with real c >= 0 and G*(a,b)^T = (r,0)^T.
struct Givens {
  double c = 1.0;
  cplx s{};
  cplx r{};
};

Givens make_givens(cplx a, cplx b) {
  if (b == cplx{}) return {1.0, cplx{}, a};
  const double ab = std::abs(a);
  const double bb = std::abs(b);
  if (ab == 0.0) return {0.0, std::conj(b) / bb, bb};
  const double h = std::hypot(ab, bb);
  const cplx phase_a = a / ab;
  return {ab / h, phase_a * std::conj(b) / h, phase_a * h};
}

// Rows i, j on columns [col0, col1): (x, y) <- (c x + s y, -conj(s) x + c y).
void rotate_rows(ComplexMatrix& t, std::size_t i, std::size_t j, const Givens& g,
                 std::size_t col0, std::size_t col1) {
  for (std::size_t k = col0; k < col1; ++k) {
    const cplx x = t(i, k);
    const cplx y = t(j, k);
    t(i, k) = g.c * x + g.s * y;
    t(j, k) = -std::conj(g.s) * x + g.c * y;
  }
}

// Columns i, j on rows [row0, row1), right-multiplication by G^H:
// (x, y) <- (c x + conj(s) y, -s x + c y).
void rotate_cols(ComplexMatrix& t, std::size_t i, std::size_t j, const Givens& g,
                 std::size_t row0, std::size_t row1) {
  for (std::size_t k = row0; k < row1; ++k) {
    const cplx x = t(k, i);
    const cplx y = t(k, j);
    t(k, i) = g.c * x + std::conj(g.s) * y;
    t(k, j) = -g.s * x + g.c * y;
  }
}

void hessenberg(ComplexMatrix& t, ComplexMatrix& u) {
  const std::size_t n = t.rows;
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    for (std::size_t i = n - 1; i >= k + 2; --i) {
      if (t(i, k) == cplx{}) continue;
      const Givens g = make_givens(t(i - 1, k), t(i, k));
      t(i - 1, k) = g.r;
      t(i, k) = cplx{};
      rotate_rows(t, i - 1, i, g, k + 1, n);
      rotate_cols(t, i - 1, i, g, 0, n);
      rotate_cols(u, i - 1, i, g, 0, n);
    }
  }
}

bool subdiag_negligible(const ComplexMatrix& t, std::size_t i, double tnorm) {
  const double eps = std::numeric_limits<double>::epsilon();
  double s = std::abs(t(i - 1, i - 1)) + std::abs(t(i, i));
  if (s == 0.0) s = tnorm;
  return std::abs(t(i, i - 1)) <= eps * s;
}

cplx wilkinson_shift(const ComplexMatrix& t, std::size_t iu) {
  const cplx a = t(iu - 1, iu - 1);
  const cplx b = t(iu - 1, iu);
  const cplx c = t(iu, iu - 1);
  const cplx d = t(iu, iu);
  const cplx mid = 0.5 * (a + d);
  const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const cplx mu1 = mid + disc;
  const cplx mu2 = mid - disc;
  const double d1 = std::abs(mu1 - d);
  const double d2 = std::abs(mu2 - d);
  if (d1 < d2) return mu1;
  if (d2 < d1) return mu2;
  return lex_less(mu1, mu2) ? mu1 : mu2;
}

// One implicit single-shift QR sweep on the active window [il, iu].
void qr_step(ComplexMatrix& t, ComplexMatrix& u, std::size_t il, std::size_t iu,
             cplx shift) {
  const std::size_t n = t.rows;
  Givens g = make_givens(t(il, il) - shift, t(il + 1, il));
  rotate_rows(t, il, il + 1, g, il, n);
  rotate_cols(t, il, il + 1, g, 0, std::min(il + 2, iu) + 1);
  rotate_cols(u, il, il + 1, g, 0, u.rows);
  for (std::size_t i = il + 1; i < iu; ++i) {
    g = make_givens(t(i, i - 1), t(i + 1, i - 1));
    t(i, i - 1) = g.r;
    t(i + 1, i - 1) = cplx{};
    rotate_rows(t, i, i + 1, g, i, n);
    rotate_cols(t, i, i + 1, g, 0, std::min(i + 2, iu) + 1);
    rotate_cols(u, i, i + 1, g, 0, u.rows);
  }
}

void qr_iterate(ComplexMatrix& t, ComplexMatrix& u, std::size_t max_iters) {
  const std::size_t n = t.rows;
  if (n < 2) return;
  const double tnorm = max_abs(t);
  std::size_t iu = n - 1;
  std::size_t total = 0;
  std::size_t since_deflation = 0;
  while (true) {
    while (iu > 0 && subdiag_negligible(t, iu, tnorm)) {
      t(iu, iu - 1) = cplx{};
      --iu;
      since_deflation = 0;
    }
    if (iu == 0) break;
    std::size_t il = iu;
    while (il > 0 && !subdiag_negligible(t, il, tnorm)) --il;
    if (il > 0) t(il, il - 1) = cplx{};

    ++total;
    ++since_deflation;
    if (total > max_iters) {
      throw Error(ErrorCode::NoConvergence,
                  "qr iteration exceeded the configured iteration budget");
    }
    const cplx shift =
        (since_deflation % 10 == 0)
            ? t(iu, iu) + cplx(0.75 * std::abs(t(iu, iu - 1)), 0.0)
            : wilkinson_shift(t, iu);
    qr_step(t, u, il, iu, shift);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) t(i, j) = cplx{};
  }
}

// Exchanges the diagonal entries t(k,k) and t(k+1,k+1) by a unitary
// similarity. The rotation taken from the eigenvector (t(k,k+1),
// t(k+1,k+1) - t(k,k)) leaves the superdiagonal entry itself unchanged, so
// the diagonal pair can be exchanged exactly by assignment.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& u, std::size_t k) {
  const cplx t11 = t(k, k);
  const cplx t22 = t(k + 1, k + 1);
  const Givens g = make_givens(t(k, k + 1), t22 - t11);
  rotate_rows(t, k, k + 1, g, k + 2, t.cols);
  rotate_cols(t, k, k + 1, g, 0, k);
  rotate_cols(u, k, k + 1, g, 0, u.rows);
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
}

void order_diagonal(ComplexMatrix& t, ComplexMatrix& u, const ToleranceConfig& tol) {
  const std::size_t n = t.rows;
  if (n < 2) return;
  std::vector<cplx> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = t(i, i);
  double scale = max_abs(t);
  if (scale == 0.0) return;
  const std::vector<Cluster> clusters = cluster_values(diag, scale, tol.tol_eig);
  std::vector<std::size_t> rank(n);
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    for (std::size_t idx : clusters[ci].members) rank[idx] = ci;
  }
  // Stable bubble sort with adjacent unitary swaps; positions inside one
  // cluster keep their relative order.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (rank[k] > rank[k + 1]) {
        swap_adjacent(t, u, k);
        std::swap(rank[k], rank[k + 1]);
        changed = true;
      }
    }
  }
}

// Core of positivize_superdiagonal. within[k] tells whether superdiagonal
// position (k, k+1) is subject to positivization; other positions are only
// carried through the conjugation.
PositivizeResult positivize_impl(const ComplexMatrix& a, const ToleranceConfig& tol,
                                 const std::vector<bool>& within) {
  const std::size_t n = a.rows;
  double scale = max_abs(a);
  if (scale == 0.0) scale = 1.0;
  std::vector<cplx> d(n, 1.0);
  bool trivial = true;
  for (std::size_t k = 1; k < n; ++k) {
    cplx phase = 1.0;
    const cplx entry = a(k - 1, k);
    if (within[k - 1] && !approx_zero(entry, scale, tol.tol_zero)) {
      phase = entry / std::abs(entry);
    }
    d[k] = d[k - 1] * phase;
    d[k] /= std::abs(d[k]);
    if (d[k] != cplx(1.0, 0.0)) trivial = false;
  }

  PositivizeResult out{a, ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) out.d(k, k) = d[k];
  if (!trivial) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (out.a(i, j) == cplx{}) continue;
        out.a(i, j) = d[i] * out.a(i, j) * std::conj(d[j]);
      }
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (!within[k - 1]) continue;
    const cplx original = a(k - 1, k);
    if (approx_zero(original, scale, tol.tol_zero)) {
      out.a(k - 1, k) = cplx{};
    } else {
      out.a(k - 1, k) = cplx(std::abs(original), 0.0);
    }
  }
  return out;
}

}  // namespace

SchurForm schur_ordered(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (!m.square()) throw Error(ErrorCode::NotSquare, "schur_ordered requires a square matrix");
  const std::size_t n = m.rows;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "schur_ordered requires n >= 1");
  require_finite(m, "schur_ordered input");

  SchurForm s{ComplexMatrix::identity(n), m, {}};
  hessenberg(s.a, s.u);
  qr_iterate(s.a, s.u, tol.max_qr_iters > 0 ? tol.max_qr_iters : 30 * n);
  order_diagonal(s.a, s.u, tol);
  s.diag_order.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.diag_order[i] = s.a(i, i);
  return s;
}

PositivizeResult positivize_superdiagonal(const ComplexMatrix& a,
                                          const ToleranceConfig& tol) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "positivize_superdiagonal requires a square matrix");
  return positivize_impl(a, tol, std::vector<bool>(a.rows == 0 ? 0 : a.rows - 1, true));
}

BlockSchurForm block_partition_of(const SchurForm& s, const ToleranceConfig& tol) {
  const std::size_t n = s.a.rows;
  double scale = max_abs(s.a);
  if (scale == 0.0) scale = 1.0;

  std::vector<cplx> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = s.a(i, i);
  const std::vector<Cluster> clusters = cluster_values(diag, scale, tol.tol_eig);

  BlockPartition partition;
  std::size_t expected_start = 0;
  for (const Cluster& c : clusters) {
    for (std::size_t k = 0; k < c.members.size(); ++k) {
      if (c.members[k] != expected_start + k) {
        throw Error(ErrorCode::InvalidArgument,
                    "block_partition_of: clustered diagonal is not contiguous; "
                    "the Schur form was not ordered");
      }
    }
    expected_start += c.members.size();
    partition.sizes.push_back(c.members.size());
    partition.eigenvalues.push_back(c.representative);
  }

  ComplexMatrix snapped = s.a;
  for (const Cluster& c : clusters) {
    for (std::size_t idx : c.members) snapped(idx, idx) = c.representative;
  }

  std::vector<bool> within(n == 0 ? 0 : n - 1, false);
  std::size_t off = 0;
  for (std::size_t b = 0; b < partition.sizes.size(); ++b) {
    for (std::size_t k = 1; k < partition.sizes[b]; ++k) within[off + k - 1] = true;
    off += partition.sizes[b];
  }
  PositivizeResult pos = positivize_impl(snapped, tol, within);

  // a_out = d * a * d^-1 means the accumulated unitary picks up d^H.
  ComplexMatrix u = s.u;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx dj = std::conj(pos.d(j, j));
    if (dj == cplx(1.0, 0.0)) continue;
    for (std::size_t i = 0; i < n; ++i) u(i, j) *= dj;
  }
  return {std::move(pos.a), std::move(partition), std::move(u)};
}

bool is_nonderogatory(const BlockSchurForm& o, const ToleranceConfig& tol) {
  double scale = max_abs(o.a);
  if (scale == 0.0) scale = 1.0;
  std::size_t off = 0;
  for (std::size_t b = 0; b < o.partition.block_count(); ++b) {
    const std::size_t m = o.partition.sizes[b];
    for (std::size_t k = 1; k < m; ++k) {
      if (approx_zero(o.a(off + k - 1, off + k), scale, tol.tol_zero)) return false;
    }
    off += m;
  }
  return true;
}

}  // namespace canonmat
