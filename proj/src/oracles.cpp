#include "canonmat/oracles.hpp"

#include "canonmat/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace canonmat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double match_tolerance(const ToleranceConfig& tol) {
  return std::max(tol.tol_zero, 1e-8);
}

struct BlockView {
  std::size_t row0, rows, col0, cols;
};

BlockView block_view(const BlockPartition& p, std::size_t bi, std::size_t bj) {
  return {p.offset(bi), p.sizes[bi], p.offset(bj), p.sizes[bj]};
}

bool block_all_zero(const ComplexMatrix& a, const BlockView& v, double scale,
                    double tol_zero) {
  for (std::size_t i = 0; i < v.rows; ++i) {
    for (std::size_t j = 0; j < v.cols; ++j) {
      if (!approx_zero(a(v.row0 + i, v.col0 + j), scale, tol_zero)) return false;
    }
  }
  return true;
}

}  // namespace

OracleVerdict phase_match_oracle(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const BlockPartition& partition,
                                 const ToleranceConfig& tol) {
  const std::size_t n = partition.total();
  const std::size_t t = partition.block_count();
  if (!a.square() || !b.square() || a.rows != n || b.rows != n) {
    throw Error(ErrorCode::ShapeMismatch, "phase_match_oracle: dimension mismatch");
  }
  double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0) scale = 1.0;
  const double mtol = match_tolerance(tol);

  auto not_equivalent = [](std::string why) {
    return OracleVerdict{false, {}, std::move(why)};
  };

  for (std::size_t bi = 0; bi < t; ++bi) {
    const BlockView v = block_view(partition, bi, bi);
    for (std::size_t i = 0; i < v.rows; ++i) {
      for (std::size_t j = 0; j < v.cols; ++j) {
        if (std::abs(a(v.row0 + i, v.col0 + j) - b(v.row0 + i, v.col0 + j)) >
            mtol * scale) {
          return not_equivalent("diagonal block " + std::to_string(bi + 1) +
                                " differs");
        }
      }
    }
  }

  LabeledUnionFind uf(t, LabelMode::Phase);
  for (std::size_t bi = 0; bi < t; ++bi) {
    for (std::size_t bj = bi + 1; bj < t; ++bj) {
      const BlockView v = block_view(partition, bi, bj);
      const bool za = block_all_zero(a, v, scale, tol.tol_zero);
      const bool zb = block_all_zero(b, v, scale, tol.tol_zero);
      if (za != zb) {
        return not_equivalent("zero pattern differs at block (" +
                              std::to_string(bi + 1) + "," + std::to_string(bj + 1) + ")");
      }
      if (za) continue;

      // Ratio taken at the largest-modulus entry of the first block.
      std::size_t pi = 0, pj = 0;
      double best = -1.0;
      for (std::size_t i = 0; i < v.rows; ++i) {
        for (std::size_t j = 0; j < v.cols; ++j) {
          const double mag = std::abs(a(v.row0 + i, v.col0 + j));
          if (mag > best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      }
      const cplx ratio = b(v.row0 + pi, v.col0 + pj) / a(v.row0 + pi, v.col0 + pj);
      if (std::abs(std::abs(ratio) - 1.0) > mtol) {
        return not_equivalent("block (" + std::to_string(bi + 1) + "," +
                              std::to_string(bj + 1) +
                              ") scales by a non-unit modulus");
      }
      for (std::size_t i = 0; i < v.rows; ++i) {
        for (std::size_t j = 0; j < v.cols; ++j) {
          if (std::abs(b(v.row0 + i, v.col0 + j) - ratio * a(v.row0 + i, v.col0 + j)) >
              mtol * scale) {
            return not_equivalent("block (" + std::to_string(bi + 1) + "," +
                                  std::to_string(bj + 1) + ") is not proportional");
          }
        }
      }
      const cplx unit_ratio = ratio / std::abs(ratio);
      if (uf.connected(bi, bj)) {
        const cplx existing = uf.resolve(bj).factor / uf.resolve(bi).factor;
        if (std::abs(existing - unit_ratio) > mtol) {
          return not_equivalent("inconsistent cycle at block (" +
                                std::to_string(bi + 1) + "," + std::to_string(bj + 1) +
                                ")");
        }
      } else {
        uf.unite(bi, bj, unit_ratio);
      }
    }
  }

  OracleVerdict verdict{true, std::vector<cplx>(t), ""};
  for (std::size_t k = 0; k < t; ++k) verdict.witness[k] = uf.resolve(k).factor;
  return verdict;
}

OracleVerdict scale_match_oracle(const ComplexMatrix& b, const ComplexMatrix& b2,
                                 const ToleranceConfig& tol) {
  if (!b.square() || !b2.square() || b.rows != b2.rows) {
    throw Error(ErrorCode::ShapeMismatch, "scale_match_oracle: dimension mismatch");
  }
  const std::size_t n = b.rows;
  double scale = std::max(max_abs(b), max_abs(b2));
  if (scale == 0.0) scale = 1.0;
  const double mtol = match_tolerance(tol);

  auto not_equivalent = [](std::string why) {
    return OracleVerdict{false, {}, std::move(why)};
  };

  for (std::size_t p = 0; p < n; ++p) {
    if (std::abs(b(p, p) - b2(p, p)) > mtol * scale) {
      return not_equivalent("diagonal entry " + std::to_string(p + 1) + " differs");
    }
  }

  LabeledUnionFind uf(n, LabelMode::Scale);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      const bool z1 = approx_zero(b(p, q), scale, tol.tol_zero);
      const bool z2 = approx_zero(b2(p, q), scale, tol.tol_zero);
      if (z1 != z2) {
        return not_equivalent("zero pattern differs at (" + std::to_string(p + 1) +
                              "," + std::to_string(q + 1) + ")");
      }
      if (z1) continue;
      const cplx ratio = b2(p, q) / b(p, q);
      if (uf.connected(p, q)) {
        const cplx existing = uf.resolve(q).factor / uf.resolve(p).factor;
        if (std::abs(existing - ratio) > mtol * std::max(1.0, std::abs(ratio))) {
          return not_equivalent("inconsistent cycle at (" + std::to_string(p + 1) +
                                "," + std::to_string(q + 1) + ")");
        }
      } else {
        uf.unite(p, q, ratio);
      }
    }
  }

  OracleVerdict verdict{true, std::vector<cplx>(n), ""};
  for (std::size_t k = 0; k < n; ++k) verdict.witness[k] = uf.resolve(k).factor;
  return verdict;
}

std::vector<TraceWord> trace_word_invariants(const ComplexMatrix& m,
                                             std::size_t max_len) {
  if (!m.square()) throw Error(ErrorCode::NotSquare, "trace_word_invariants requires a square matrix");
  if (max_len > 8) {
    throw Error(ErrorCode::LengthTooLarge, "trace words limited to length 8");
  }
  const ComplexMatrix mh = adjoint(m);
  std::vector<TraceWord> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      std::string word;
      ComplexMatrix prod;
      for (std::size_t pos = 0; pos < len; ++pos) {
        const bool star = (mask >> (len - 1 - pos)) & 1;
        word.push_back(star ? 'Y' : 'X');
        const ComplexMatrix& factor = star ? mh : m;
        prod = (pos == 0) ? factor : multiply(prod, factor);
      }
      cplx tr = 0.0;
      for (std::size_t i = 0; i < m.rows; ++i) tr += prod(i, i);
      out.push_back({std::move(word), tr});
    }
  }
  return out;
}

std::uint64_t Rng::splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::fork(std::uint64_t site) const {
  return Rng(splitmix64(seed_ ^ splitmix64(site)));
}

std::uint64_t Rng::bits() { return engine_(); }

double Rng::uniform() {
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * kPi * uniform();
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

cplx Rng::normal_cplx() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im);
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng = Rng(seed).fork(0x11);
  ComplexMatrix q(n, n);
  for (cplx& z : q.data) z = rng.normal_cplx();
  // Gram-Schmidt, two passes per column.
  for (std::size_t k = 0; k < n; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, j)) * q(i, k);
        for (std::size_t i = 0; i < n; ++i) q(i, k) -= proj * q(i, j);
      }
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(q(i, k));
    const double norm = std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
  }
  return q;
}

ComplexMatrix random_block_schur_form(const BlockPartition& partition,
                                      double fill_density, std::uint64_t seed) {
  Rng rng = Rng(seed).fork(0x12);
  const std::size_t n = partition.total();
  const std::size_t t = partition.block_count();
  ComplexMatrix a(n, n);
  for (std::size_t b = 0; b < t; ++b) {
    const std::size_t off = partition.offset(b);
    const std::size_t mb = partition.sizes[b];
    for (std::size_t i = 0; i < mb; ++i) a(off + i, off + i) = partition.eigenvalues[b];
    for (std::size_t k = 1; k < mb; ++k) {
      a(off + k - 1, off + k) = cplx(rng.uniform(0.5, 2.0), 0.0);
    }
    for (std::size_t i = 0; i < mb; ++i) {
      for (std::size_t j = i + 2; j < mb; ++j) {
        a(off + i, off + j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      }
    }
  }
  for (std::size_t bi = 0; bi < t; ++bi) {
    for (std::size_t bj = bi + 1; bj < t; ++bj) {
      const bool present = rng.uniform() < fill_density;
      const std::size_t r0 = partition.offset(bi);
      const std::size_t c0 = partition.offset(bj);
      if (!present) continue;
      for (std::size_t i = 0; i < partition.sizes[bi]; ++i) {
        for (std::size_t j = 0; j < partition.sizes[bj]; ++j) {
          a(r0 + i, c0 + j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
      }
    }
  }
  return a;
}

ComplexMatrix random_nonderogatory(const BlockPartition& partition,
                                   double fill_density, std::uint64_t seed) {
  const ComplexMatrix a = random_block_schur_form(partition, fill_density, seed);
  const ComplexMatrix u = random_unitary(partition.total(), Rng(seed).fork(0x13).bits());
  return multiply(multiply(u, a), adjoint(u));
}

std::pair<ComplexMatrix, ComplexMatrix> random_diag_pair(std::size_t n,
                                                         double fill_density,
                                                         std::uint64_t seed) {
  Rng rng = Rng(seed).fork(0x14);
  ComplexMatrix m(n, n);
  // Real parts step by at least 0.4, so pairwise gaps stay >= 0.1 and the lex
  // order is strict.
  for (std::size_t k = 0; k < n; ++k) {
    m(k, k) = cplx(0.7 * static_cast<double>(k) + rng.uniform(0.0, 0.3),
                   rng.uniform(-1.0, 1.0));
  }
  ComplexMatrix b(n, n);
  for (cplx& z : b.data) {
    if (rng.uniform() < fill_density) {
      const double mag = rng.uniform(0.3, 1.5);
      const double arg = rng.uniform(0.0, 2.0 * kPi);
      z = std::polar(mag, arg);
    }
  }
  return {std::move(m), std::move(b)};
}

ComplexMatrix random_similarity(std::size_t n, double cond_target,
                                std::uint64_t seed) {
  Rng rng = Rng(seed).fork(0x15);
  const ComplexMatrix u = random_unitary(n, rng.bits());
  const ComplexMatrix v = random_unitary(n, rng.bits());
  const double half_log = 0.5 * std::log(std::max(cond_target, 1.0));
  ComplexMatrix s(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    s(k, k) = std::exp(rng.uniform(-half_log, half_log));
  }
  return multiply(multiply(u, s), adjoint(v));
}

}  // namespace canonmat
