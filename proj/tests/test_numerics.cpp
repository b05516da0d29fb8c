#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "canonmat/numerics.hpp"
#include "canonmat/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace canonmat;

TEST_CASE("lex_compare basic cases") {
  CHECK(lex_compare(cplx(1, 2), cplx(1, 3)) == Ordering::Less);
  CHECK(lex_compare(cplx(0.5, -3), cplx(0.5, -3)) == Ordering::Equal);
  CHECK(lex_compare(cplx(0, 1), cplx(1, 0)) == Ordering::Less);
  CHECK(lex_compare(cplx(2, 0), cplx(1, 5)) == Ordering::Greater);
  CHECK(lex_compare(cplx(1, 5), cplx(1, 2)) == Ordering::Greater);
}

TEST_CASE("lex_compare is a total order on random triples") {
  Rng rng(2024);
  auto draw = [&] { return cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)); };
  for (int trial = 0; trial < 2000; ++trial) {
    cplx a = draw(), b = draw(), c = draw();
    if (trial % 5 == 0) b = a;  // exercise equal values too
    // trichotomy
    int relations = 0;
    if (lex_compare(a, b) == Ordering::Less) ++relations;
    if (lex_compare(a, b) == Ordering::Equal) ++relations;
    if (lex_compare(a, b) == Ordering::Greater) ++relations;
    CHECK(relations == 1);
    // antisymmetry
    if (lex_compare(a, b) == Ordering::Less) CHECK(lex_compare(b, a) == Ordering::Greater);
    if (lex_compare(a, b) == Ordering::Equal) CHECK(lex_compare(b, a) == Ordering::Equal);
    // transitivity
    if (!lex_less(b, a) && !lex_less(c, b)) CHECK(!lex_less(c, a));
  }
}

TEST_CASE("approx_zero thresholds") {
  CHECK(approx_zero(cplx(0, 0), 1.0, 1e-12));
  CHECK(approx_zero(cplx(1e-15, 0), 1.0, 1e-12));
  CHECK(!approx_zero(cplx(1e-3, 0), 1.0, 1e-12));
}

TEST_CASE("approx_zero is symmetric under negation") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const cplx z(rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-14, 0)),
                 rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-14, 0)));
    CHECK(approx_zero(z, 1.0, 1e-10) == approx_zero(-z, 1.0, 1e-10));
  }
}

TEST_CASE("cluster_values groups nearby values") {
  const std::vector<cplx> values{cplx(2, 0), cplx(1, 0), cplx(1 + 1e-14, 0)};
  const auto clusters = cluster_values(values, 1.0, 1e-10);
  REQUIRE(clusters.size() == 2);
  CHECK(std::abs(clusters[0].representative - cplx(1, 0)) < 1e-13);
  CHECK(clusters[0].members == std::vector<std::size_t>{1, 2});
  CHECK(clusters[1].representative == cplx(2, 0));
  CHECK(clusters[1].members == std::vector<std::size_t>{0});
}

TEST_CASE("cluster_values singleton") {
  const auto clusters = cluster_values({cplx(5, 0)}, 1.0, 1e-10);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].representative == cplx(5, 0));
}

TEST_CASE("cluster_values single linkage across a chain") {
  const std::vector<cplx> values{cplx(0, 0), cplx(0.5e-10, 0), cplx(1, 0)};
  const auto clusters = cluster_values(values, 1.0, 1e-10);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].members == std::vector<std::size_t>{0, 1});
  CHECK(clusters[1].members == std::vector<std::size_t>{2});
}

TEST_CASE("cluster_values flags ambiguous representatives") {
  // Two clusters barely apart: members 1.5 radii apart stay separate but the
  // representatives violate the 2-radius guard.
  const std::vector<cplx> values{cplx(0, 0), cplx(1.5e-10, 0)};
  CHECK_THROWS_AS(cluster_values(values, 1.0, 1e-10), Error);
  try {
    cluster_values(values, 1.0, 1e-10);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ClusterAmbiguity);
  }
}

namespace {

// Independent single-linkage oracle: adjacency matrix + breadth-first reach.
std::vector<std::vector<std::size_t>> naive_clusters(const std::vector<cplx>& values,
                                                     double radius) {
  const std::size_t n = values.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) continue;
    std::vector<std::size_t> comp{v};
    seen[v] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::size_t w = 0; w < n; ++w) {
        if (!seen[w] && std::abs(values[comp[head]] - values[w]) <= radius) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("cluster_values matches a brute-force linkage oracle") {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 12);
    std::vector<cplx> values;
    for (std::size_t i = 0; i < n; ++i) {
      // coarse grid plus occasional tiny perturbation produces interesting
      // clusters
      const double re = std::round(rng.uniform(-2, 2) * 4.0) / 4.0;
      const double im = std::round(rng.uniform(-2, 2) * 4.0) / 4.0;
      values.emplace_back(re + rng.uniform(0, 1e-13), im);
    }
    const double tol = 1e-10;
    std::vector<Cluster> clusters;
    try {
      clusters = cluster_values(values, 1.0, tol);
    } catch (const Error&) {
      continue;  // oracle comparison only applies to unambiguous instances
    }
    ++checked;
    std::vector<std::vector<std::size_t>> got;
    for (const auto& c : clusters) got.push_back(c.members);
    std::sort(got.begin(), got.end());
    CHECK(got == naive_clusters(values, tol * 1.0));
  }
  CHECK(checked > 200);
}

TEST_CASE("cluster_values is permutation invariant") {
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 10);
    std::vector<cplx> values;
    for (std::size_t i = 0; i < n; ++i) {
      values.emplace_back(std::round(rng.uniform(-1, 1) * 3.0) / 3.0 + rng.uniform(0, 1e-13),
                          std::round(rng.uniform(-1, 1) * 3.0) / 3.0);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t k = n; k > 1; --k) {
      std::swap(perm[k - 1], perm[static_cast<std::size_t>(rng.uniform() * k)]);
    }
    std::vector<cplx> shuffled(n);
    for (std::size_t k = 0; k < n; ++k) shuffled[k] = values[perm[k]];

    std::vector<Cluster> c1, c2;
    try {
      c1 = cluster_values(values, 1.0, 1e-10);
      c2 = cluster_values(shuffled, 1.0, 1e-10);
    } catch (const Error&) {
      continue;
    }
    REQUIRE(c1.size() == c2.size());
    for (std::size_t k = 0; k < c1.size(); ++k) {
      CHECK(c1[k].representative == c2[k].representative);
      // member sets agree once mapped through the permutation
      std::vector<std::size_t> mapped;
      for (std::size_t idx : c2[k].members) mapped.push_back(perm[idx]);
      std::sort(mapped.begin(), mapped.end());
      CHECK(mapped == c1[k].members);
    }
  }
}

TEST_CASE("max_abs and finiteness helpers") {
  ComplexMatrix m(2, 2);
  m(0, 1) = cplx(3, 4);
  CHECK(max_abs(m) == doctest::Approx(5.0));
  CHECK(all_finite(m));
  m(1, 0) = cplx(std::nan(""), 0);
  CHECK(!all_finite(m));
  CHECK_THROWS_AS(require_finite(m, "test"), Error);
}
