#include "canonmat/pair_canon.hpp"

#include "canonmat/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace canonmat {

Diagonalization diagonalize_distinct(const ComplexMatrix& m,
                                     const ToleranceConfig& tol) {
  const SchurForm s = schur_ordered(m, tol);
  const std::size_t n = m.rows;
  double scale = max_abs(s.a);
  if (scale == 0.0) scale = 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(s.a(i, i) - s.a(j, j)) <= tol.tol_eig * scale) {
        throw Error(ErrorCode::RepeatedEigenvalue,
                    "matrix does not have distinct eigenvalues at the working "
                    "tolerance");
      }
    }
  }

  // Eigenvectors of the triangular factor by back-substitution, v_k = e_k.
  ComplexMatrix v(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    v(k, k) = 1.0;
    for (std::size_t jj = k; jj-- > 0;) {
      cplx sum = 0.0;
      for (std::size_t l = jj + 1; l <= k; ++l) sum += s.a(jj, l) * v(l, k);
      v(jj, k) = -sum / (s.a(jj, jj) - s.a(k, k));
    }
  }

  Diagonalization out{multiply(s.u, v), s.diag_order, 0.0};

  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(out.s(i, k));
    const double norm = std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) out.s(i, k) /= norm;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx e = out.s(i, k);
      if (std::abs(e) > tol.tol_zero) {
        const cplx phase = std::conj(e) / std::abs(e);
        if (phase != cplx(1.0, 0.0)) {
          for (std::size_t r = 0; r < n; ++r) out.s(r, k) *= phase;
        }
        out.s(i, k) = cplx(std::abs(e), 0.0);
        break;
      }
    }
  }
  out.cond_estimate = cond_1_estimate(out.s);
  return out;
}

DiagPair diagonal_pair_of(const ComplexMatrix& m, const ComplexMatrix& n_mat,
                          const ToleranceConfig& tol) {
  if (!m.square() || !n_mat.square() || m.rows != n_mat.rows) {
    throw Error(ErrorCode::ShapeMismatch,
                "pair canonicalization requires two square matrices of equal size");
  }
  require_finite(n_mat, "pair canonicalization second matrix");
  Diagonalization d = diagonalize_distinct(m, tol);
  const LuFactors f = lu_factor(d.s);
  ComplexMatrix b = lu_solve(f, multiply(n_mat, d.s));
  return {std::move(d.lambda), std::move(b), std::move(d.s), d.cond_estimate};
}

CanonicalPairResult canonicalize_pair(const ComplexMatrix& m,
                                      const ComplexMatrix& n_mat,
                                      const ToleranceConfig& tol,
                                      const PairStepObserver& observer) {
  DiagPair dp = diagonal_pair_of(m, n_mat, tol);
  const std::size_t n = dp.b.rows;
  ComplexMatrix& b = dp.b;
  const double scale = max_abs(b);  // frozen before the scan

  DiForest g(n);
  LabeledUnionFind uf(n, LabelMode::Scale);
  std::vector<cplx> vertex_scale(n, cplx(1.0, 0.0));
  ComplexMatrix s_total = std::move(dp.s);
  std::vector<std::pair<std::size_t, std::size_t>> ones;

  std::size_t step = 0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      ++step;
      if (p == q) {
        if (observer) observer(step, b);
        continue;
      }
      cplx& entry = b(p, q);
      if (approx_zero(entry, scale, tol.tol_zero)) {
        entry = cplx{};
        if (observer) observer(step, b);
        continue;
      }
      if (uf.connected(p, q)) {
        if (observer) observer(step, b);
        continue;
      }

      // Scale the component of q by 1/entry; entries with exactly one
      // endpoint inside that component pick up the factor (or its inverse),
      // everything else stays bitwise identical.
      const cplx value = entry;
      const cplx tau = 1.0 / value;
      const std::size_t root_q = uf.resolve(q).root;
      std::vector<bool> in_comp(n, false);
      for (std::size_t k = 0; k < n; ++k) in_comp[k] = uf.resolve(k).root == root_q;

      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          if (in_comp[c] == in_comp[r]) continue;
          cplx& z = b(r, c);
          if (z == cplx{}) continue;
          z *= in_comp[c] ? tau : value;
        }
      }
      b(p, q) = cplx(1.0, 0.0);
      ones.emplace_back(p, q);

      for (std::size_t k = 0; k < n; ++k) {
        if (!in_comp[k]) continue;
        vertex_scale[k] *= tau;
        for (std::size_t r = 0; r < n; ++r) s_total(r, k) *= tau;
      }
      uf.unite(p, q, vertex_scale[q] / vertex_scale[p]);
      g.add_edge(p, q);
      if (observer) observer(step, b);
    }
  }

  return {std::move(dp.lambda), std::move(b), std::move(g), std::move(s_total),
          std::move(ones), std::move(vertex_scale), dp.cond_estimate};
}

bool is_g_canonical_pair(const std::vector<cplx>& lambda, const ComplexMatrix& b,
                         const DiForest& g, const ToleranceConfig& tol) {
  const std::size_t n = b.rows;
  if (!b.square() || lambda.size() != n || g.vertex_count() != n) {
    throw Error(ErrorCode::ShapeMismatch, "is_g_canonical_pair: inconsistent dimensions");
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!lex_less(lambda[k], lambda[k + 1])) return false;
  }
  double scale = max_abs(b);
  if (scale == 0.0) scale = 1.0;

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (g.has_edge(p, q)) {
        if (std::abs(b(p, q) - cplx(1.0, 0.0)) > tol.tol_zero) return false;
        continue;
      }
      bool required_zero = false;
      if (!g.connected(p, q)) {
        required_zero = true;
      } else {
        for (const PathStep& step : g.tree_path(p, q)) {
          const std::size_t tail = step.along_stored_direction ? step.from : step.to;
          const std::size_t head = step.along_stored_direction ? step.to : step.from;
          if (tail > p || (tail == p && head > q)) {
            required_zero = true;
            break;
          }
        }
      }
      if (required_zero && !approx_zero(b(p, q), scale, tol.tol_zero)) return false;
    }
  }
  return true;
}

PairDecomposition decompose_pair(const CanonicalPairResult& cpr,
                                 const ToleranceConfig& tol) {
  const std::size_t n = cpr.b_can.rows;
  double scale = max_abs(cpr.b_can);
  if (scale == 0.0) scale = 1.0;

  const auto comps = cpr.g.components();
  std::vector<std::size_t> comp_of(n, 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) comp_of[v] = c;
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (comp_of[p] == comp_of[q]) continue;
      if (!approx_zero(cpr.b_can(p, q), scale, tol.tol_zero)) {
        throw Error(ErrorCode::NonzeroCrossBlock,
                    "decompose_pair: entry across components fails the zero test");
      }
    }
  }

  PairDecomposition out;
  for (const auto& comp : comps) {
    PairSummand summand{{}, ComplexMatrix(comp.size(), comp.size()),
                        DiForest(comp.size()), comp};
    std::vector<std::size_t> local(n, n);
    for (std::size_t k = 0; k < comp.size(); ++k) local[comp[k]] = k;
    for (const auto& e : cpr.g.edges()) {
      if (local[e.first] < n && local[e.second] < n) {
        summand.tree.add_edge(local[e.first], local[e.second]);
      }
    }
    for (std::size_t i = 0; i < comp.size(); ++i) {
      summand.lambda.push_back(cpr.lambda[comp[i]]);
      for (std::size_t j = 0; j < comp.size(); ++j) {
        summand.b(i, j) = cpr.b_can(comp[i], comp[j]);
      }
    }
    out.permutation.insert(out.permutation.end(), comp.begin(), comp.end());
    out.summands.push_back(std::move(summand));
  }
  return out;
}

bool canonical_pair_equal(const CanonicalPairResult& x, const CanonicalPairResult& y,
                          const ToleranceConfig& tol, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (x.lambda.size() != y.lambda.size()) return fail("sizes differ");
  if (x.g.edges() != y.g.edges()) return fail("graphs differ");
  if (x.ones != y.ones) return fail("one positions differ");

  double scale = std::max(max_abs(x.b_can), max_abs(y.b_can));
  if (scale == 0.0) scale = 1.0;
  double lambda_scale = 0.0;
  for (cplx l : x.lambda) lambda_scale = std::max(lambda_scale, std::abs(l));
  if (lambda_scale == 0.0) lambda_scale = 1.0;
  const double eig_tol = std::max(tol.tol_eig, 1e-8) * lambda_scale;
  for (std::size_t k = 0; k < x.lambda.size(); ++k) {
    if (std::abs(x.lambda[k] - y.lambda[k]) > eig_tol) return fail("eigenvalues differ");
  }

  const std::size_t n = x.lambda.size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const bool zx = approx_zero(x.b_can(p, q), scale, tol.tol_zero);
      const bool zy = approx_zero(y.b_can(p, q), scale, tol.tol_zero);
      if (zx != zy) return fail("zero structure differs");
    }
  }
  const double entry_tol = std::max(tol.tol_zero, 1e-8) * scale;
  if (max_abs(subtract(x.b_can, y.b_can)) > entry_tol) {
    return fail("canonical entries differ beyond tolerance");
  }
  if (why) why->clear();
  return true;
}

}  // namespace canonmat
