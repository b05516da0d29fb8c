#include "canonmat/unitary_canon.hpp"

#include "canonmat/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace canonmat {

namespace {

struct BlockView {
  std::size_t row0, rows, col0, cols;
};

BlockView block_view(const BlockPartition& p, std::size_t bi, std::size_t bj) {
  return {p.offset(bi), p.sizes[bi], p.offset(bj), p.sizes[bj]};
}

ComplexMatrix extract_block(const ComplexMatrix& a, const BlockView& v) {
  ComplexMatrix out(v.rows, v.cols);
  for (std::size_t i = 0; i < v.rows; ++i) {
    for (std::size_t j = 0; j < v.cols; ++j) out(i, j) = a(v.row0 + i, v.col0 + j);
  }
  return out;
}

bool block_all_zero(const ComplexMatrix& a, const BlockView& v, double scale,
                    const ToleranceConfig& tol) {
  for (std::size_t i = 0; i < v.rows; ++i) {
    for (std::size_t j = 0; j < v.cols; ++j) {
      if (!approx_zero(a(v.row0 + i, v.col0 + j), scale, tol.tol_zero)) return false;
    }
  }
  return true;
}

void scale_block(ComplexMatrix& a, const BlockView& v, cplx factor) {
  if (factor == cplx(1.0, 0.0)) return;
  for (std::size_t i = 0; i < v.rows; ++i) {
    for (std::size_t j = 0; j < v.cols; ++j) {
      cplx& z = a(v.row0 + i, v.col0 + j);
      if (z != cplx{}) z *= factor;
    }
  }
}

void zero_block(ComplexMatrix& a, const BlockView& v) {
  for (std::size_t i = 0; i < v.rows; ++i) {
    for (std::size_t j = 0; j < v.cols; ++j) a(v.row0 + i, v.col0 + j) = cplx{};
  }
}

// Diagonal-scan positions of a rows x cols block, lower-left corner first.
template <typename Fn>
void for_each_scan_position(std::size_t rows, std::size_t cols, Fn&& fn) {
  const long r = static_cast<long>(rows);
  const long c = static_cast<long>(cols);
  for (long d = r - 1; d >= -(c - 1); --d) {
    const long i0 = std::max(0L, d);
    const long i1 = std::min(r - 1, c - 1 + d);
    for (long i = i0; i <= i1; ++i) {
      if (!fn(static_cast<std::size_t>(i), static_cast<std::size_t>(i - d))) return;
    }
  }
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> scan_order(
    const BlockPartition& partition) {
  const std::size_t t = partition.block_count();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(t * (t - 1) / 2);
  for (std::size_t d = 1; d < t; ++d) {
    for (std::size_t i = 0; i + d < t; ++i) out.emplace_back(i, i + d);
  }
  return out;
}

PhaseReduction phase_normalize_block(const ComplexMatrix& c, double scale,
                                     const ToleranceConfig& tol) {
  bool found = false;
  std::size_t mi = 0, mj = 0;
  for_each_scan_position(c.rows, c.cols, [&](std::size_t i, std::size_t j) {
    if (!approx_zero(c(i, j), scale, tol.tol_zero)) {
      found = true;
      mi = i;
      mj = j;
      return false;
    }
    return true;
  });
  if (!found) {
    throw Error(ErrorCode::AllZero, "phase_normalize_block: block has no nonzero entry");
  }
  const cplx v = c(mi, mj);
  const cplx phase = std::conj(v) / std::abs(v);
  PhaseReduction out{c, phase, mi, mj};
  if (phase != cplx(1.0, 0.0)) {
    for (cplx& z : out.block.data) {
      if (z != cplx{}) z *= phase;
    }
  }
  out.block(mi, mj) = cplx(std::abs(v), 0.0);
  return out;
}

CanonicalResult canonicalize_unitary(const ComplexMatrix& m,
                                     const ToleranceConfig& tol) {
  const SchurForm s = schur_ordered(m, tol);
  BlockSchurForm o = block_partition_of(s, tol);
  if (!is_nonderogatory(o, tol)) {
    throw Error(ErrorCode::NotNonderogatory,
                "input is derogatory: a within-block superdiagonal entry vanishes");
  }

  const BlockPartition partition = o.partition;
  const std::size_t t = partition.block_count();
  ComplexMatrix a = std::move(o.a);
  ComplexMatrix u = std::move(o.u);
  double scale = max_abs(a);
  if (scale == 0.0) scale = 1.0;

  Forest g(t);
  LabeledUnionFind uf(t, LabelMode::Phase);
  std::vector<cplx> vertex_phase(t, cplx(1.0, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> reduced;

  for (const auto& [bi, bj] : scan_order(partition)) {
    const BlockView view = block_view(partition, bi, bj);
    if (block_all_zero(a, view, scale, tol)) {
      zero_block(a, view);
      continue;
    }
    if (uf.connected(bi, bj)) continue;  // already pinned by earlier reductions

    const PhaseReduction red = phase_normalize_block(extract_block(a, view), scale, tol);

    // Realize the phase as a transformation that multiplies the whole
    // component of bj: blocks with exactly one endpoint in that component
    // pick up the phase (or its conjugate); previously reduced blocks have
    // both endpoints inside one component and stay put.
    const std::size_t root_j = uf.resolve(bj).root;
    std::vector<bool> in_comp(t, false);
    for (std::size_t k = 0; k < t; ++k) in_comp[k] = uf.resolve(k).root == root_j;

    for (std::size_t p = 0; p < t; ++p) {
      for (std::size_t q = p + 1; q < t; ++q) {
        if (in_comp[q] && !in_comp[p]) {
          scale_block(a, block_view(partition, p, q), red.phase);
        } else if (in_comp[p] && !in_comp[q]) {
          scale_block(a, block_view(partition, p, q), std::conj(red.phase));
        }
      }
    }
    // Overwrite the reduced block so its marked entry is stored exactly real.
    for (std::size_t i = 0; i < view.rows; ++i) {
      for (std::size_t j = 0; j < view.cols; ++j) {
        a(view.row0 + i, view.col0 + j) = red.block(i, j);
      }
    }
    // u_total picks up the block-scalar diagonal on the right.
    if (red.phase != cplx(1.0, 0.0)) {
      for (std::size_t q = 0; q < t; ++q) {
        if (!in_comp[q]) continue;
        const std::size_t c0 = partition.offset(q);
        for (std::size_t i = 0; i < u.rows; ++i) {
          for (std::size_t j = c0; j < c0 + partition.sizes[q]; ++j) {
            u(i, j) *= red.phase;
          }
        }
        vertex_phase[q] *= red.phase;
        vertex_phase[q] /= std::abs(vertex_phase[q]);
      }
    }

    uf.unite(bi, bj, vertex_phase[bj] / vertex_phase[bi]);
    g.add_edge(bi, bj);
    reduced.emplace_back(bi, bj);
  }

  return {std::move(a), partition, std::move(g), std::move(u), std::move(reduced),
          std::move(vertex_phase)};
}

bool is_g_canonical(const ComplexMatrix& a, const BlockPartition& partition,
                    const Forest& g, const ToleranceConfig& tol) {
  const std::size_t n = partition.total();
  const std::size_t t = partition.block_count();
  if (!a.square() || a.rows != n || g.vertex_count() != t) {
    throw Error(ErrorCode::ShapeMismatch, "is_g_canonical: inconsistent dimensions");
  }
  double scale = max_abs(a);
  if (scale == 0.0) scale = 1.0;

  // Diagonal blocks: constant diagonal equal to the block eigenvalue, real
  // positive first superdiagonal, zeros below the diagonal; eigenvalues lex
  // strictly increasing.
  for (std::size_t b = 0; b < t; ++b) {
    if (b + 1 < t && !lex_less(partition.eigenvalues[b], partition.eigenvalues[b + 1])) {
      return false;
    }
    const std::size_t off = partition.offset(b);
    const std::size_t mb = partition.sizes[b];
    for (std::size_t i = 0; i < mb; ++i) {
      if (!approx_zero(a(off + i, off + i) - partition.eigenvalues[b], scale, tol.tol_zero)) {
        return false;
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (!approx_zero(a(off + i, off + j), scale, tol.tol_zero)) return false;
      }
    }
    for (std::size_t k = 1; k < mb; ++k) {
      const cplx e = a(off + k - 1, off + k);
      if (std::abs(e.imag()) > tol.tol_zero * scale) return false;
      if (!(e.real() > tol.tol_zero * scale)) return false;
    }
  }

  for (std::size_t bi = 0; bi < t; ++bi) {
    for (std::size_t bj = 0; bj < t; ++bj) {
      if (bi == bj) continue;
      const BlockView view = block_view(partition, bi, bj);
      if (bi > bj) {
        if (!block_all_zero(a, view, scale, tol)) return false;
        continue;
      }
      if (g.has_edge(bi, bj)) {
        // Reduced shape: the leading scan entry exists and is real positive.
        bool found = false;
        bool shape_ok = false;
        for_each_scan_position(view.rows, view.cols, [&](std::size_t i, std::size_t j) {
          const cplx z = a(view.row0 + i, view.col0 + j);
          if (approx_zero(z, scale, tol.tol_zero)) return true;
          found = true;
          shape_ok = std::abs(z.imag()) <= tol.tol_zero * scale &&
                     z.real() > tol.tol_zero * scale;
          return false;
        });
        if (!found || !shape_ok) return false;
        continue;
      }
      bool required_zero = false;
      if (!g.connected(bi, bj)) {
        required_zero = true;
      } else {
        for (const PathStep& step : g.tree_path(bi, bj)) {
          const std::size_t eu = std::min(step.from, step.to);
          const std::size_t ev = std::max(step.from, step.to);
          if (ev - eu > bj - bi || (ev - eu == bj - bi && eu > bi)) {
            required_zero = true;
            break;
          }
        }
      }
      if (required_zero && !block_all_zero(a, view, scale, tol)) return false;
    }
  }
  return true;
}

Decomposition decompose(const CanonicalResult& cr, const ToleranceConfig& tol) {
  const BlockPartition& partition = cr.partition;
  const std::size_t t = partition.block_count();
  double scale = max_abs(cr.m_can);
  if (scale == 0.0) scale = 1.0;

  const auto comps = cr.g.components();

  std::vector<std::size_t> comp_of(t, 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) comp_of[v] = c;
  }
  for (std::size_t bi = 0; bi < t; ++bi) {
    for (std::size_t bj = 0; bj < t; ++bj) {
      if (bi == bj || comp_of[bi] == comp_of[bj]) continue;
      if (!block_all_zero(cr.m_can, block_view(partition, bi, bj), scale, tol)) {
        throw Error(ErrorCode::NonzeroCrossBlock,
                    "decompose: block across components fails the zero test");
      }
    }
  }

  Decomposition out;
  for (const auto& comp : comps) {
    CanonicalBlockSummand summand{Forest(comp.size()), ComplexMatrix(), comp, {}};
    std::vector<std::size_t> local(t, t);
    for (std::size_t k = 0; k < comp.size(); ++k) local[comp[k]] = k;
    for (const auto& e : cr.g.edges()) {
      if (local[e.first] < t && local[e.second] < t) {
        summand.tree.add_edge(local[e.first], local[e.second]);
      }
    }
    std::vector<std::size_t> entry_indices;
    for (std::size_t v : comp) {
      summand.partition.sizes.push_back(partition.sizes[v]);
      summand.partition.eigenvalues.push_back(partition.eigenvalues[v]);
      const std::size_t off = partition.offset(v);
      for (std::size_t r = 0; r < partition.sizes[v]; ++r) entry_indices.push_back(off + r);
    }
    summand.matrix = ComplexMatrix(entry_indices.size(), entry_indices.size());
    for (std::size_t i = 0; i < entry_indices.size(); ++i) {
      for (std::size_t j = 0; j < entry_indices.size(); ++j) {
        summand.matrix(i, j) = cr.m_can(entry_indices[i], entry_indices[j]);
      }
    }
    out.permutation.insert(out.permutation.end(), entry_indices.begin(),
                           entry_indices.end());
    out.summands.push_back(std::move(summand));
  }
  return out;
}

bool canonical_equal(const CanonicalResult& x, const CanonicalResult& y,
                     const ToleranceConfig& tol, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (x.partition.sizes != y.partition.sizes) return fail("partition sizes differ");
  if (x.g.edges() != y.g.edges()) return fail("graphs differ");
  if (x.reduced_blocks != y.reduced_blocks) return fail("reduced positions differ");

  double scale = std::max(max_abs(x.m_can), max_abs(y.m_can));
  if (scale == 0.0) scale = 1.0;
  const double eig_tol = std::max(tol.tol_eig, 1e-8) * scale;
  for (std::size_t b = 0; b < x.partition.block_count(); ++b) {
    if (std::abs(x.partition.eigenvalues[b] - y.partition.eigenvalues[b]) > eig_tol) {
      return fail("eigenvalues differ");
    }
  }

  const std::size_t t = x.partition.block_count();
  for (std::size_t bi = 0; bi < t; ++bi) {
    for (std::size_t bj = bi + 1; bj < t; ++bj) {
      const BlockView view = block_view(x.partition, bi, bj);
      const bool zx = block_all_zero(x.m_can, view, scale, tol);
      const bool zy = block_all_zero(y.m_can, view, scale, tol);
      if (zx != zy) return fail("zero structure differs");
    }
  }

  const double entry_tol = std::max(tol.tol_zero, 1e-8) * scale;
  if (max_abs(subtract(x.m_can, y.m_can)) > entry_tol) {
    return fail("canonical entries differ beyond tolerance");
  }
  if (why) why->clear();
  return true;
}

}  // namespace canonmat
