#include "canonmat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace canonmat {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorCode::NotNonderogatory: return "NotNonderogatory";
    case ErrorCode::RepeatedEigenvalue: return "RepeatedEigenvalue";
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::AlreadyConnected: return "AlreadyConnected";
    case ErrorCode::BadRatio: return "BadRatio";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonzeroCrossBlock: return "NonzeroCrossBlock";
    case ErrorCode::LengthTooLarge: return "LengthTooLarge";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
  }
  return "UnknownError";
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Ordering lex_compare(cplx a, cplx b) {
  if (a.real() < b.real()) return Ordering::Less;
  if (a.real() > b.real()) return Ordering::Greater;
  if (a.imag() < b.imag()) return Ordering::Less;
  if (a.imag() > b.imag()) return Ordering::Greater;
  return Ordering::Equal;
}

bool lex_less(cplx a, cplx b) { return lex_compare(a, b) == Ordering::Less; }

bool approx_zero(cplx z, double scale, double tol_zero) {
  return std::abs(z) <= tol_zero * scale;
}

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::vector<Cluster> cluster_values(const std::vector<cplx>& values,
                                    double scale, double tol_eig) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "cluster_values requires scale > 0");
  }
  if (tol_eig < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "cluster_values requires tol_eig >= 0");
  }
  for (cplx v : values) {
    if (!finite(v)) {
      throw Error(ErrorCode::NonFiniteEntry, "cluster_values input not finite");
    }
  }

  const std::size_t n = values.size();
  const double radius = tol_eig * scale;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= radius) {
        parent[find(i)] = find(j);
      }
    }
  }

  std::vector<Cluster> clusters;
  std::vector<std::size_t> root_to_cluster(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (root_to_cluster[r] == n) {
      root_to_cluster[r] = clusters.size();
      clusters.push_back({});
    }
    clusters[root_to_cluster[r]].members.push_back(i);
  }

  for (Cluster& c : clusters) {
    std::vector<cplx> member_values;
    member_values.reserve(c.members.size());
    for (std::size_t idx : c.members) member_values.push_back(values[idx]);
    const bool all_equal = std::all_of(
        member_values.begin(), member_values.end(),
        [&](cplx v) { return v == member_values.front(); });
    if (all_equal) {
      c.representative = member_values.front();
      continue;
    }
    // Sum in lexicographic order so the mean does not depend on the order the
    // caller listed the values in.
    std::sort(member_values.begin(), member_values.end(), lex_less);
    cplx sum = 0.0;
    for (cplx v : member_values) sum += v;
    c.representative = sum / static_cast<double>(member_values.size());
  }

  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    return lex_less(a.representative, b.representative);
  });

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      if (std::abs(clusters[i].representative - clusters[j].representative) <
          2.0 * radius) {
        throw Error(ErrorCode::ClusterAmbiguity,
                    "cluster representatives closer than twice the clustering "
                    "radius; tighten tolerances or reject the input");
      }
    }
  }
  return clusters;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (cplx z : m.data) best = std::max(best, std::abs(z));
  return best;
}

bool all_finite(const ComplexMatrix& m) {
  for (cplx z : m.data) {
    if (!finite(z)) return false;
  }
  return true;
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) {
    throw Error(ErrorCode::NonFiniteEntry, std::string(what) + " has non-finite entries");
  }
}

}  // namespace canonmat
