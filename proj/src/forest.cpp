#include "canonmat/forest.hpp"

#include <algorithm>
#include <cmath>

namespace canonmat {

namespace {

constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

// BFS parent trace over adjacency lists; returns the vertex sequence from p
// to q, or an empty vector when there is no path (p == q gives {p}).
std::vector<std::size_t> bfs_path(const std::vector<std::vector<std::size_t>>& adj,
                                  std::size_t p, std::size_t q) {
  if (p == q) return {p};
  std::vector<std::size_t> prev(adj.size(), kNoVertex);
  std::vector<std::size_t> queue{p};
  prev[p] = p;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    for (std::size_t w : adj[v]) {
      if (prev[w] != kNoVertex) continue;
      prev[w] = v;
      if (w == q) {
        std::vector<std::size_t> path{q};
        for (std::size_t c = q; c != p; c = prev[c]) path.push_back(prev[c]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace

Forest::Forest(std::size_t vertex_count) : adjacency_(vertex_count) {}

void Forest::check_vertex(std::size_t v) const {
  if (v >= vertex_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "forest vertex out of range");
  }
}

bool Forest::connected(std::size_t p, std::size_t q) const {
  check_vertex(p);
  check_vertex(q);
  return !bfs_path(adjacency_, p, q).empty();
}

bool Forest::has_edge(std::size_t p, std::size_t q) const {
  check_vertex(p);
  check_vertex(q);
  for (const auto& e : edges_) {
    if ((e.first == p && e.second == q) || (e.first == q && e.second == p)) return true;
  }
  return false;
}

void Forest::add_edge(std::size_t p, std::size_t q) {
  check_vertex(p);
  check_vertex(q);
  if (connected(p, q)) {
    throw Error(ErrorCode::CycleError, "edge would close an undirected cycle");
  }
  edges_.emplace_back(p, q);
  adjacency_[p].push_back(q);
  adjacency_[q].push_back(p);
}

std::vector<PathStep> Forest::tree_path(std::size_t p, std::size_t q) const {
  check_vertex(p);
  check_vertex(q);
  const std::vector<std::size_t> vertices = bfs_path(adjacency_, p, q);
  if (vertices.empty()) {
    throw Error(ErrorCode::NotConnected, "no path between the requested vertices");
  }
  std::vector<PathStep> steps;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    steps.push_back({vertices[i - 1], vertices[i], true});
  }
  return steps;
}

std::vector<std::vector<std::size_t>> Forest::components() const {
  const std::size_t n = vertex_count();
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) continue;
    std::vector<std::size_t> comp{v};
    seen[v] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::size_t w : adjacency_[comp[head]]) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  // Vertices are scanned in ascending order, so the list is already sorted by
  // smallest member.
  return out;
}

DiForest::DiForest(std::size_t vertex_count) : underlying_(vertex_count) {}

bool DiForest::connected(std::size_t p, std::size_t q) const {
  return underlying_.connected(p, q);
}

bool DiForest::has_edge(std::size_t tail, std::size_t head) const {
  for (const auto& e : edges_) {
    if (e.first == tail && e.second == head) return true;
  }
  return false;
}

void DiForest::add_edge(std::size_t tail, std::size_t head) {
  underlying_.add_edge(tail, head);
  edges_.emplace_back(tail, head);
}

std::vector<PathStep> DiForest::tree_path(std::size_t p, std::size_t q) const {
  std::vector<PathStep> steps = underlying_.tree_path(p, q);
  for (PathStep& s : steps) {
    s.along_stored_direction = has_edge(s.from, s.to);
  }
  return steps;
}

std::vector<std::vector<std::size_t>> DiForest::components() const {
  return underlying_.components();
}

LabeledUnionFind::LabeledUnionFind(std::size_t vertex_count, LabelMode mode)
    : mode_(mode), parent_(vertex_count), size_(vertex_count, 1),
      label_(vertex_count, cplx(1.0, 0.0)) {
  for (std::size_t i = 0; i < vertex_count; ++i) parent_[i] = i;
}

void LabeledUnionFind::check_vertex(std::size_t v) const {
  if (v >= parent_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "union-find vertex out of range");
  }
}

LabeledUnionFind::Resolution LabeledUnionFind::resolve(std::size_t v) {
  check_vertex(v);
  if (parent_[v] == v) return {v, label_[v]};
  const Resolution up = resolve(parent_[v]);
  parent_[v] = up.root;
  label_[v] *= up.factor;
  if (mode_ == LabelMode::Phase) label_[v] /= std::abs(label_[v]);
  return {up.root, label_[v]};
}

bool LabeledUnionFind::connected(std::size_t p, std::size_t q) {
  return resolve(p).root == resolve(q).root;
}

void LabeledUnionFind::unite(std::size_t p, std::size_t q, cplx ratio) {
  if (ratio == cplx{}) {
    throw Error(ErrorCode::BadRatio, "union ratio must be nonzero");
  }
  if (mode_ == LabelMode::Phase && std::abs(std::abs(ratio) - 1.0) > 1e-12) {
    throw Error(ErrorCode::BadRatio, "phase-mode union ratio must have modulus one");
  }
  const Resolution rp = resolve(p);
  const Resolution rq = resolve(q);
  if (rp.root == rq.root) {
    throw Error(ErrorCode::AlreadyConnected, "vertices already share a component");
  }
  // resolve(q).factor / resolve(p).factor must equal ratio after the merge.
  if (size_[rp.root] >= size_[rq.root]) {
    parent_[rq.root] = rp.root;
    label_[rq.root] = ratio * rp.factor / rq.factor;
    if (mode_ == LabelMode::Phase) label_[rq.root] /= std::abs(label_[rq.root]);
    size_[rp.root] += size_[rq.root];
  } else {
    parent_[rp.root] = rq.root;
    label_[rp.root] = rq.factor / (ratio * rp.factor);
    if (mode_ == LabelMode::Phase) label_[rp.root] /= std::abs(label_[rp.root]);
    size_[rq.root] += size_[rp.root];
  }
}

}  // namespace canonmat
