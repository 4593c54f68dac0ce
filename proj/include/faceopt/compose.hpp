#pragma once

// Turning per-node choices into a concrete embedding.
//
// Every embedding of a biconnected planar multigraph corresponds to one
// assignment of a cyclic order to each bond node's parallel slots and a
// reflection bit to each rigid node, up to one global reflection. This file
// assembles the rotation system for such an assignment by recursion over the
// tree: a node embeds its skeleton, then splices each child's fan of darts
// into the gap its virtual edge occupies.

#include "faceopt/spqr.hpp"

namespace faceopt {

struct EmbeddingChoice {
  // bond node -> order of its non-parent slots (indices into node.edges,
  // values in [1, k-1]); missing means ascending
  std::map<int, std::vector<int>> p_perm;
  // rigid node -> reflect its skeleton relative to the surrounding frame
  std::map<int, bool> r_flip;
  // any node -> mirror its entire subtree where it is spliced in; a
  // redundant convenience (the same embeddings are reachable through p_perm
  // and r_flip alone) used when constructions want to orient one child
  std::map<int, bool> subtree_mirror;
};

namespace detail_compose {

inline bool get_flag(const std::map<int, bool>& m, int key) {
  auto it = m.find(key);
  return it != m.end() && it->second;
}

// Skeleton rotation for a node, over skeleton darts (2*slot + dir in the
// node's local graph), honoring the node's own choice and the surrounding
// orientation. Returns the rotation and the frame the children live in.
inline std::pair<RotationSystem, bool> skeleton_rotation(const SpqrTree& t, int id,
                                                         const EmbeddingChoice& choice,
                                                         bool mirrored) {
  const SpqrNode& node = t.nodes[id];
  bool child_frame = mirrored;
  RotationSystem rs;
  switch (node.type) {
    case NodeType::Q:
    case NodeType::S: {
      // degree <= 2 everywhere: the rotation is unique, reflection included
      rs = default_rotation(node.skel);
      break;
    }
    case NodeType::P: {
      int k = static_cast<int>(node.edges.size());
      std::vector<int> order;
      if (auto it = choice.p_perm.find(id); it != choice.p_perm.end()) {
        order = it->second;
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expect;
        for (int s = 1; s < k; ++s) expect.push_back(s);
        if (sorted != expect)
          fail(ErrorCode::InvalidParams, "bond order is not a permutation of the node's slots");
      } else {
        for (int s = 1; s < k; ++s) order.push_back(s);
      }
      int lu = node.local_vertex(node.pole_u), lv = node.local_vertex(node.pole_v);
      rs.order.assign(2, {});
      auto dart_at = [&](int slot, int vert) {
        return dart_of(slot, node.skel.ends[slot].first == vert ? 0 : 1);
      };
      rs.order[lu].push_back(dart_at(0, lu));
      for (int s : order) rs.order[lu].push_back(dart_at(s, lu));
      rs.order[lv].push_back(dart_at(0, lv));
      for (auto it = order.rbegin(); it != order.rend(); ++it) rs.order[lv].push_back(dart_at(*it, lv));
      if (mirrored) rs = mirror(rs);
      break;
    }
    case NodeType::R: {
      rs = node.r_rotation;
      bool eff = mirrored ^ get_flag(choice.r_flip, id);
      if (eff) rs = mirror(rs);
      child_frame = eff;
      break;
    }
  }
  return {rs, child_frame};
}

struct Assembler {
  const SpqrTree& t;
  const EmbeddingChoice& choice;
  RotationSystem out;

  // Embeds the subtree of `id` inside frame `mirrored`. Writes complete
  // rotations for all vertices strictly inside the subtree and returns the
  // linear fans of subtree darts at the two poles (the arcs that fill the
  // gap left by the node's parent edge, as seen from pole_u and pole_v).
  std::pair<std::vector<int>, std::vector<int>> embed(int id, bool mirrored) {
    const SpqrNode& node = t.nodes[id];
    if (node.type == NodeType::Q && id != t.root) {
      int e = node.real_edge;
      return {{dart_of(e, t.g.ends[e].first == node.pole_u ? 0 : 1)},
              {dart_of(e, t.g.ends[e].first == node.pole_v ? 0 : 1)}};
    }

    auto [skel_rot, child_frame] = skeleton_rotation(t, id, choice, mirrored);

    // Expansion of each skeleton dart at its tail: real slots expand to the
    // real edge's dart, virtual slots to the child's fan at that vertex.
    std::vector<std::vector<int>> expansion(2 * node.edges.size());
    for (int slot = 0; slot < static_cast<int>(node.edges.size()); ++slot) {
      const SkelEdge& se = node.edges[slot];
      if (se.kind == SkelEdge::Kind::ParentVirtual) continue;
      if (se.child < 0) {  // the root's own real edge
        expansion[dart_of(slot, 0)] = {dart_of(se.real_edge, t.g.ends[se.real_edge].first == se.u ? 0 : 1)};
        expansion[dart_of(slot, 1)] = {dart_of(se.real_edge, t.g.ends[se.real_edge].first == se.v ? 0 : 1)};
        continue;
      }
      bool frame = child_frame ^ get_flag(choice.subtree_mirror, se.child);
      if (se.kind == SkelEdge::Kind::Real) {
        int e = se.real_edge;
        expansion[dart_of(slot, 0)] = {dart_of(e, t.g.ends[e].first == se.u ? 0 : 1)};
        expansion[dart_of(slot, 1)] = {dart_of(e, t.g.ends[e].first == se.v ? 0 : 1)};
        (void)frame;  // a single edge has no orientation of its own
      } else {
        auto [fan_u, fan_v] = embed(se.child, frame);
        // child poles are (se.u, se.v) in that order
        int local_first = node.skel.ends[slot].first;
        int u_local = node.local_vertex(se.u);
        expansion[dart_of(slot, 0)] = local_first == u_local ? fan_u : fan_v;
        expansion[dart_of(slot, 1)] = local_first == u_local ? fan_v : fan_u;
      }
    }

    // Assemble per-vertex dart lists in skeleton rotation order.
    std::vector<int> parent_slot_dart(node.skel.n(), -1);
    std::vector<std::vector<int>> full(node.skel.n());
    for (int lv = 0; lv < node.skel.n(); ++lv) {
      for (int sd : skel_rot.order[lv]) {
        if (node.edges[dart_edge(sd)].kind == SkelEdge::Kind::ParentVirtual) {
          parent_slot_dart[lv] = sd;
          continue;
        }
        const auto& exp = expansion[sd];
        full[lv].insert(full[lv].end(), exp.begin(), exp.end());
      }
    }

    // Poles hand their fan upward; all other skeleton vertices are complete.
    std::pair<std::vector<int>, std::vector<int>> fans;
    for (int lv = 0; lv < node.skel.n(); ++lv) {
      int orig = node.skel_verts[lv];
      if (id != t.root && (orig == node.pole_u || orig == node.pole_v)) {
        // rotate so the fan starts right after the parent dart
        const auto& cyc = skel_rot.order[lv];
        int start = -1;
        for (size_t i = 0; i < cyc.size(); ++i)
          if (cyc[i] == parent_slot_dart[lv]) start = static_cast<int>(i);
        std::vector<int> fan;
        for (size_t step = 1; step < cyc.size(); ++step) {
          int sd = cyc[(start + step) % cyc.size()];
          const auto& exp = expansion[sd];
          fan.insert(fan.end(), exp.begin(), exp.end());
        }
        (orig == node.pole_u ? fans.first : fans.second) = std::move(fan);
      } else {
        out.order[orig] = std::move(full[lv]);
      }
    }
    return fans;
  }
};

}  // namespace detail_compose

inline RotationSystem compose_embedding(const SpqrTree& t, const EmbeddingChoice& choice = {}) {
  detail_compose::Assembler a{t, choice, {}};
  a.out.order.assign(t.g.n(), {});
  a.embed(t.root, false);
  validate_rotation(t.g, a.out);
  return a.out;
}

// Number of embeddings up to reflection, saturating at cap: the product of
// (k-1)! over bond nodes with k edges and 2 per rigid node, halved once when
// any factor exists because reflecting every choice reproduces the same
// embedding. The halving is applied by dropping one binary factor before
// multiplying, so saturation at cap cannot distort it.
inline unsigned long long embedding_count_capped(const SpqrTree& t,
                                                 unsigned long long cap = ~0ULL) {
  unsigned long long total = 1;
  auto mul = [&](unsigned long long f) {
    if (f != 0 && total > cap / f) total = cap;
    else total *= f;
  };
  int rigid = 0;
  for (const SpqrNode& node : t.nodes)
    if (node.type == NodeType::R) ++rigid;
  for (int i = 1; i < rigid; ++i) mul(2);
  bool halved = rigid > 0;
  for (const SpqrNode& node : t.nodes) {
    if (node.type != NodeType::P) continue;
    unsigned long long k = node.edges.size() - 1;  // k >= 2 in any bond node
    for (unsigned long long i = halved ? 2 : 3; i <= k; ++i) mul(i);
    halved = true;
  }
  return total;
}

// --- skeleton embeddings and faces ---------------------------------------

// Rotation system of one node's skeleton (over its local graph) under the
// node's own choice: a slot order for bond nodes, a flip bit for rigid
// nodes, nothing for the rest.
inline RotationSystem embed_skeleton(const SpqrTree& t, int id, const EmbeddingChoice& choice = {}) {
  return detail_compose::skeleton_rotation(t, id, choice, false).first;
}

// Faces of a node's skeleton in its reference orientation (identity bond
// orders, no reflections). Darts in the report are skeleton darts
// (2*slot + dir over node.edges).
inline FaceReport skeleton_faces(const SpqrTree& t, int id) {
  return planar_faces(t.nodes[id].skel, embed_skeleton(t, id));
}

// --- boundary side lengths ----------------------------------------------

// Minimal lengths of the two boundary walks joining the poles of a subtree's
// graph, over all of its embeddings, as a sorted pair. Both minima are
// achievable simultaneously.
struct SideLen {
  long long a = 0, b = 0;  // a <= b
};

inline SideLen sidelen(const SpqrTree& t, int id) {
  const SpqrNode& node = t.nodes[id];
  switch (node.type) {
    case NodeType::Q: {
      if (id == t.root) fail(ErrorCode::InvalidParams, "side lengths are for non-root nodes");
      return {1, 1};
    }
    case NodeType::S: {
      // both walks run through every slot in series
      SideLen s;
      for (size_t slot = 1; slot < node.edges.size(); ++slot) {
        SideLen c = node.edges[slot].kind == SkelEdge::Kind::Real
                        ? SideLen{1, 1}
                        : sidelen(t, node.edges[slot].child);
        s.a += c.a;
        s.b += c.b;
      }
      return s;
    }
    case NodeType::P: {
      // the bundle's outside walks are the outward sides of its two
      // outermost children; best case shows the two smallest short sides
      std::vector<long long> shorts;
      for (size_t slot = 1; slot < node.edges.size(); ++slot)
        shorts.push_back(node.edges[slot].kind == SkelEdge::Kind::Real
                             ? 1
                             : sidelen(t, node.edges[slot].child).a);
      std::sort(shorts.begin(), shorts.end());
      return {shorts[0], shorts[1]};
    }
    case NodeType::R: {
      // the two faces flanking the parent edge in the (unique) skeleton
      // embedding; every slot on them can independently show its short side
      FaceReport rep = skeleton_faces(t, id);
      long long len[2] = {0, 0};
      int which = 0;
      for (int dir = 0; dir < 2; ++dir) {
        int f = rep.face_of_dart[dart_of(0, dir)];
        for (int sd : rep.faces[f]) {
          int slot = dart_edge(sd);
          if (slot == 0) continue;
          len[which] += node.edges[slot].kind == SkelEdge::Kind::Real
                            ? 1
                            : sidelen(t, node.edges[slot].child).a;
        }
        ++which;
      }
      return {std::min(len[0], len[1]), std::max(len[0], len[1])};
    }
  }
  fail(ErrorCode::Internal, "bad node type");
}

}  // namespace faceopt
