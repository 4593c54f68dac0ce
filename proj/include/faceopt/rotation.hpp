#pragma once

// Combinatorial embeddings as rotation systems over darts, and the face
// traversal that turns them into face boundaries.
//
// A dart is a directed edge-side: dart 2e points from ends[e].first to
// ends[e].second, dart 2e+1 the other way. The rotation at a vertex is the
// clockwise cyclic order of the darts leaving it. Face walking follows the
// convention: standing on dart d, the next dart of the same face is the
// successor of reverse(d) in the rotation at head(d).

#include <numeric>

#include "faceopt/core.hpp"

namespace faceopt {

inline int dart_of(int edge, int dir) { return 2 * edge + dir; }
inline int dart_edge(int d) { return d >> 1; }
inline int dart_reverse(int d) { return d ^ 1; }

inline int dart_tail(const Multigraph& g, int d) {
  auto [a, b] = g.ends[dart_edge(d)];
  return (d & 1) ? b : a;
}
inline int dart_head(const Multigraph& g, int d) {
  auto [a, b] = g.ends[dart_edge(d)];
  return (d & 1) ? a : b;
}

struct RotationSystem {
  // order[v] = darts with tail v, in cyclic order.
  std::vector<std::vector<int>> order;
};

// Checks that order[v] is a permutation of the darts leaving v.
inline void validate_rotation(const Multigraph& g, const RotationSystem& rs) {
  if (static_cast<int>(rs.order.size()) != g.n())
    fail(ErrorCode::InvalidParams, "rotation has wrong vertex count");
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> expect;
    for (int e : g.adj[v]) expect.push_back(dart_of(e, g.ends[e].first == v ? 0 : 1));
    std::vector<int> got = rs.order[v];
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (expect != got)
      fail(ErrorCode::InvalidParams,
           "rotation at vertex '" + g.vertex_names[v] + "' is not a permutation of its incident darts");
  }
}

// Builds a rotation from per-vertex edge-id lists (each incident edge named
// exactly once, parallel edges distinguished by id).
inline RotationSystem rotation_from_edge_ids(const Multigraph& g,
                                             const std::map<std::string, std::vector<std::string>>& order) {
  RotationSystem rs;
  rs.order.assign(g.n(), {});
  for (const auto& [vname, eids] : order) {
    int v = g.vertex_index(vname);
    for (const std::string& eid : eids) {
      int e = g.edge_index(eid);
      if (g.ends[e].first != v && g.ends[e].second != v)
        fail(ErrorCode::InvalidParams, "edge '" + eid + "' is not incident to vertex '" + vname + "'");
      rs.order[v].push_back(dart_of(e, g.ends[e].first == v ? 0 : 1));
    }
  }
  validate_rotation(g, rs);
  return rs;
}

// Rotation listing each vertex's incident edges in ascending edge order.
inline RotationSystem default_rotation(const Multigraph& g) {
  RotationSystem rs;
  rs.order.assign(g.n(), {});
  for (int v = 0; v < g.n(); ++v)
    for (int e : g.adj[v]) rs.order[v].push_back(dart_of(e, g.ends[e].first == v ? 0 : 1));
  return rs;
}

inline RotationSystem mirror(const RotationSystem& rs) {
  RotationSystem out = rs;
  for (auto& lst : out.order) std::reverse(lst.begin(), lst.end());
  return out;
}

struct FaceReport {
  std::vector<std::vector<int>> faces;  // dart cycles, each face once
  std::vector<int> face_of_dart;        // dart -> face index
  std::vector<int> sizes() const {
    std::vector<int> s;
    s.reserve(faces.size());
    for (const auto& f : faces) s.push_back(static_cast<int>(f.size()));
    return s;
  }
  std::vector<int> sorted_sizes() const {
    std::vector<int> s = sizes();
    std::sort(s.begin(), s.end());
    return s;
  }
  int max_size() const {
    int best = 0;
    for (const auto& f : faces) best = std::max<int>(best, static_cast<int>(f.size()));
    return best;
  }
};

// Successor map: dart d -> next dart on the same face.
inline std::vector<int> face_successors(const Multigraph& g, const RotationSystem& rs) {
  std::vector<int> pos(2 * g.m(), -1);  // dart -> index within its tail's rotation
  for (int v = 0; v < g.n(); ++v)
    for (size_t i = 0; i < rs.order[v].size(); ++i) pos[rs.order[v][i]] = static_cast<int>(i);
  std::vector<int> next(2 * g.m(), -1);
  for (int d = 0; d < 2 * g.m(); ++d) {
    int r = dart_reverse(d);
    int h = dart_head(g, d);  // == tail of r
    const auto& cyc = rs.order[h];
    next[d] = cyc[(pos[r] + 1) % cyc.size()];
  }
  return next;
}

inline FaceReport faces(const Multigraph& g, const RotationSystem& rs) {
  std::vector<int> next = face_successors(g, rs);
  FaceReport rep;
  rep.face_of_dart.assign(2 * g.m(), -1);
  for (int d0 = 0; d0 < 2 * g.m(); ++d0) {
    if (rep.face_of_dart[d0] != -1) continue;
    int fid = static_cast<int>(rep.faces.size());
    rep.faces.emplace_back();
    for (int d = d0; rep.face_of_dart[d] == -1; d = next[d]) {
      rep.face_of_dart[d] = fid;
      rep.faces.back().push_back(d);
    }
  }
  return rep;
}

// Euler check: a rotation on a connected multigraph describes a planar (genus
// zero) embedding iff n - m + f == 2.
inline bool rotation_is_planar(const Multigraph& g, const FaceReport& rep) {
  return g.n() - g.m() + static_cast<int>(rep.faces.size()) == 2;
}

inline FaceReport planar_faces(const Multigraph& g, const RotationSystem& rs) {
  FaceReport rep = faces(g, rs);
  if (!rotation_is_planar(g, rep))
    fail(ErrorCode::NonPlanarRotation, "rotation system has genus > 0 (Euler check failed)");
  return rep;
}

}  // namespace faceopt
