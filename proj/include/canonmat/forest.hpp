#pragma once

// Acyclic constraint graphs over vertex indices (an undirected and a directed
// variant) plus a union-find whose per-vertex labels carry multiplicative
// factors. These are the backbone of both canonicalization algorithms and of
// the independent oracles.

#include "canonmat/numerics.hpp"

#include <utility>

namespace canonmat {

struct PathStep {
  std::size_t from = 0;
  std::size_t to = 0;
  // For directed forests: whether the stored edge points from -> to. Always
  // true for undirected forests.
  bool along_stored_direction = true;
};

class Forest {
 public:
  explicit Forest(std::size_t vertex_count);

  std::size_t vertex_count() const { return adjacency_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;  // insertion order
  }

  bool connected(std::size_t p, std::size_t q) const;
  bool has_edge(std::size_t p, std::size_t q) const;

  /// Throws CycleError when p and q are already connected.
  void add_edge(std::size_t p, std::size_t q);

  /// The unique simple path from p to q; throws NotConnected otherwise.
  std::vector<PathStep> tree_path(std::size_t p, std::size_t q) const;

  /// Connected components: each sorted ascending, the list sorted by
  /// smallest member.
  std::vector<std::vector<std::size_t>> components() const;

 private:
  void check_vertex(std::size_t v) const;

  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

class DiForest {
 public:
  explicit DiForest(std::size_t vertex_count);

  std::size_t vertex_count() const { return underlying_.vertex_count(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;  // insertion order, stored as (tail, head)
  }

  /// Undirected connectivity of the underlying graph.
  bool connected(std::size_t p, std::size_t q) const;
  bool has_edge(std::size_t tail, std::size_t head) const;

  /// Throws CycleError when the underlying undirected graph already joins
  /// p and q.
  void add_edge(std::size_t tail, std::size_t head);

  /// The unique undirected path; each step reports the stored direction.
  std::vector<PathStep> tree_path(std::size_t p, std::size_t q) const;

  std::vector<std::vector<std::size_t>> components() const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  Forest underlying_;
};

enum class LabelMode { Phase, Scale };

/// Weighted union-find: every vertex carries a multiplicative factor relative
/// to its component root. Phase mode keeps factors at modulus one
/// (renormalizing after compression); scale mode only requires them nonzero.
/// Queries compress paths, so they need mutable access.
class LabeledUnionFind {
 public:
  LabeledUnionFind(std::size_t vertex_count, LabelMode mode);

  struct Resolution {
    std::size_t root;
    cplx factor;
  };

  std::size_t vertex_count() const { return parent_.size(); }
  LabelMode mode() const { return mode_; }

  Resolution resolve(std::size_t v);
  bool connected(std::size_t p, std::size_t q);

  /// Merges the components of p and q so that resolve(q).factor /
  /// resolve(p).factor == ratio at merge time. Throws AlreadyConnected or
  /// BadRatio (zero ratio, or modulus far from one in phase mode).
  void unite(std::size_t p, std::size_t q, cplx ratio);

 private:
  void check_vertex(std::size_t v) const;

  LabelMode mode_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<cplx> label_;  // factor relative to parent
};

}  // namespace canonmat
