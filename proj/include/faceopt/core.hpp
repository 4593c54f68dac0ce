#pragma once

// Loopless multigraphs with string ids mapped to dense indices, plus the
// small structural queries everything else builds on.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace faceopt {

enum class ErrorCode {
  LoopEdge,
  UnknownVertex,
  DuplicateId,
  NonPlanarRotation,
  NotBiconnected,
  TooSmall,
  NonPlanarSkeleton,
  InvalidParams,
  SizeGuardExceeded,
  Infeasible,
  RegimeViolation,
  InvalidParity,
  TooLarge,
  InvalidInput,
  Internal,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonPlanarRotation: return "NonPlanarRotation";
    case ErrorCode::NotBiconnected: return "NotBiconnected";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NonPlanarSkeleton: return "NonPlanarSkeleton";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::RegimeViolation: return "RegimeViolation";
    case ErrorCode::InvalidParity: return "InvalidParity";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Loopless undirected multigraph. Vertices and edges are dense indices;
// names keep the external string ids (sorted, so construction order never
// leaks into iteration order).
struct Multigraph {
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;
  std::vector<std::pair<int, int>> ends;   // per edge, endpoint vertex indices (as given)
  std::vector<std::vector<int>> adj;       // per vertex, incident edges sorted ascending

  int n() const { return static_cast<int>(vertex_names.size()); }
  int m() const { return static_cast<int>(edge_names.size()); }

  int other_end(int e, int v) const {
    auto [a, b] = ends[e];
    if (v == a) return b;
    if (v == b) return a;
    fail(ErrorCode::Internal, "vertex not an endpoint of edge");
  }

  int vertex_index(const std::string& name) const {
    auto it = std::lower_bound(vertex_names.begin(), vertex_names.end(), name);
    if (it == vertex_names.end() || *it != name)
      fail(ErrorCode::UnknownVertex, "no vertex named '" + name + "'");
    return static_cast<int>(it - vertex_names.begin());
  }

  int edge_index(const std::string& name) const {
    auto it = std::find(edge_names.begin(), edge_names.end(), name);
    if (it == edge_names.end()) fail(ErrorCode::UnknownVertex, "no edge named '" + name + "'");
    return static_cast<int>(it - edge_names.begin());
  }
};

struct EdgeSpec {
  std::string id;
  std::string u, v;
};

inline Multigraph build_graph(std::vector<std::string> vertex_ids, std::vector<EdgeSpec> edges) {
  Multigraph g;
  std::sort(vertex_ids.begin(), vertex_ids.end());
  for (size_t i = 0; i + 1 < vertex_ids.size(); ++i)
    if (vertex_ids[i] == vertex_ids[i + 1])
      fail(ErrorCode::DuplicateId, "duplicate vertex id '" + vertex_ids[i] + "'");
  g.vertex_names = std::move(vertex_ids);

  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i].id == edges[i + 1].id)
      fail(ErrorCode::DuplicateId, "duplicate edge id '" + edges[i].id + "'");

  g.adj.assign(g.vertex_names.size(), {});
  for (const EdgeSpec& e : edges) {
    int a = g.vertex_index(e.u);
    int b = g.vertex_index(e.v);
    if (a == b) fail(ErrorCode::LoopEdge, "edge '" + e.id + "' is a loop at '" + e.u + "'");
    int ei = static_cast<int>(g.edge_names.size());
    g.edge_names.push_back(e.id);
    g.ends.emplace_back(a, b);
    g.adj[a].push_back(ei);
    g.adj[b].push_back(ei);
  }
  return g;
}

// Indexed construction for internally synthesized graphs.
inline Multigraph make_graph(int n, const std::vector<std::pair<int, int>>& edge_ends,
                             const std::string& vprefix = "v", const std::string& eprefix = "e") {
  auto pad = [](int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
  };
  int vw = static_cast<int>(std::to_string(std::max(1, n - 1)).size());
  int ew = static_cast<int>(std::to_string(std::max<size_t>(1, edge_ends.size() ? edge_ends.size() - 1 : 0)).size());
  std::vector<std::string> vids;
  vids.reserve(n);
  for (int i = 0; i < n; ++i) vids.push_back(vprefix + pad(i, vw));
  std::vector<EdgeSpec> es;
  es.reserve(edge_ends.size());
  for (size_t i = 0; i < edge_ends.size(); ++i)
    es.push_back({eprefix + pad(static_cast<int>(i), ew), vids[edge_ends[i].first], vids[edge_ends[i].second]});
  return build_graph(std::move(vids), std::move(es));
}

inline bool is_connected(const Multigraph& g) {
  if (g.n() == 0) return false;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : g.adj[v]) {
      int w = g.other_end(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.n();
}

// Connected, n >= 2, and no cutvertex. A single edge and a bundle of
// parallel edges on two vertices both qualify.
inline bool is_biconnected(const Multigraph& g) {
  if (g.n() < 2 || !is_connected(g)) return false;
  for (int v = 0; v < g.n(); ++v)
    if (g.adj[v].empty()) return false;

  // Iterative DFS lowpoint computation; a parallel edge back to the parent is
  // a genuine back edge (only the tree edge itself is skipped).
  std::vector<int> disc(g.n(), -1), low(g.n(), 0), parent_edge(g.n(), -1);
  int timer = 0;
  struct Frame {
    int v;
    size_t next;
  };
  std::vector<Frame> stack;
  disc[0] = low[0] = timer++;
  stack.push_back({0, 0});
  int root_children = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < g.adj[f.v].size()) {
      int e = g.adj[f.v][f.next++];
      if (e == parent_edge[f.v]) continue;
      int w = g.other_end(e, f.v);
      if (disc[w] == -1) {
        disc[w] = low[w] = timer++;
        parent_edge[w] = e;
        if (f.v == 0) ++root_children;
        stack.push_back({w, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
    } else {
      int v = f.v;
      stack.pop_back();
      if (!stack.empty()) {
        int p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) return false;  // p is a cutvertex
      }
    }
  }
  if (root_children > 1) return false;
  return true;
}

struct Bipartition {
  std::vector<int> color;  // 0/1 per vertex
};

// Two-coloring; empty when an odd cycle exists. Requires a connected graph.
inline std::optional<Bipartition> bipartition(const Multigraph& g) {
  if (g.n() == 0 || !is_connected(g)) fail(ErrorCode::InvalidParams, "bipartition needs a connected graph");
  Bipartition b;
  b.color.assign(g.n(), -1);
  std::vector<int> queue{0};
  b.color[0] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int e : g.adj[v]) {
      int w = g.other_end(e, v);
      if (b.color[w] == -1) {
        b.color[w] = 1 - b.color[v];
        queue.push_back(w);
      } else if (b.color[w] == b.color[v]) {
        return std::nullopt;
      }
    }
  }
  return b;
}

// The unique k with 2m == f*k under Euler's formula (f = m - n + 2), if any.
// Any embedding of a connected planar multigraph has exactly f faces, so a
// k-uniform embedding forces k = 2m/f.
inline std::optional<int> euler_uniform_k(const Multigraph& g) {
  long long f = static_cast<long long>(g.m()) - g.n() + 2;
  if (f <= 0) return std::nullopt;
  long long twice_m = 2LL * g.m();
  if (twice_m % f != 0) return std::nullopt;
  long long k = twice_m / f;
  if (k < 2) return std::nullopt;
  return static_cast<int>(k);
}

}  // namespace faceopt
