#pragma once

// Decomposition of a biconnected multigraph into its triconnected
// components, arranged as a tree rooted at a reference edge.
//
// Construction runs in two phases. Phase one recursively splits the graph at
// separation pairs until every piece is unsplittable (a bond of three edges,
// a triangle, or a simple 3-connected graph), then re-merges adjacent
// bond/bond and cycle/cycle pieces; the result is the unique set of
// triconnected components. Phase two roots the component tree at a chosen
// real edge and materializes explicit edge nodes: the root is the node of
// the reference edge, and every other real edge becomes a leaf child of the
// component whose skeleton carries it.
//
// Node vocabulary: Q = a single real edge, S = cycle skeleton, P = bond
// skeleton (three or more parallel edges), R = simple 3-connected skeleton.

#include <functional>

#include "faceopt/core.hpp"
#include "faceopt/planarity.hpp"
#include "faceopt/rotation.hpp"

namespace faceopt {

enum class NodeType { Q, S, P, R };

inline const char* node_type_name(NodeType t) {
  switch (t) {
    case NodeType::Q: return "Q";
    case NodeType::S: return "S";
    case NodeType::P: return "P";
    case NodeType::R: return "R";
  }
  return "?";
}

struct SkelEdge {
  enum class Kind { Real, Virtual, ParentVirtual };
  int u = -1, v = -1;  // original-graph vertex indices
  Kind kind = Kind::Real;
  int real_edge = -1;  // Kind::Real only
  int child = -1;      // node id below this edge (-1 for ParentVirtual and the root's real slot)
};

struct SpqrNode {
  NodeType type = NodeType::Q;
  std::vector<SkelEdge> edges;  // non-root nodes keep their parent virtual edge at slot 0
  int parent = -1;
  int pole_u = -1, pole_v = -1;  // endpoints of the parent virtual edge (root: reference edge)
  int real_edge = -1;            // Q nodes

  // Derived bookkeeping filled in by build_spqr.
  int pert_edges = 0;     // original edges in the subtree
  int pert_vertices = 0;  // vertices of the subtree's graph, poles included
  int min_edge = -1;      // smallest original edge index in the subtree

  // Local skeleton graph: edge i of `skel` is edges[i]; skel_verts maps the
  // local vertex index to the original one (sorted ascending).
  Multigraph skel;
  std::vector<int> skel_verts;
  RotationSystem r_rotation;  // R nodes: one planar rotation of skel

  int local_vertex(int orig) const {
    auto it = std::lower_bound(skel_verts.begin(), skel_verts.end(), orig);
    if (it == skel_verts.end() || *it != orig) fail(ErrorCode::Internal, "vertex not in skeleton");
    return static_cast<int>(it - skel_verts.begin());
  }
};

struct SpqrTree {
  Multigraph g;
  std::vector<SpqrNode> nodes;
  int root = -1;  // root Q node
  int root_edge = -1;

  std::vector<int> children(int node) const {
    std::vector<int> out;
    for (const SkelEdge& e : nodes[node].edges)
      if (e.child >= 0) out.push_back(e.child);
    return out;
  }
  std::vector<int> nodes_of_type(NodeType t) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (nodes[i].type == t) out.push_back(i);
    return out;
  }
};

namespace detail_spqr {

struct CEdge {
  int u, v;
  int orig = -1;  // original edge index, or -1 for virtual
  int mate = -1;  // virtual pair id, or -1 for real
};

struct Comp {
  std::vector<CEdge> edges;
};

inline std::vector<int> comp_vertices(const Comp& c) {
  std::vector<int> vs;
  for (const CEdge& e : c.edges) {
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// Separation classes of c's edges with respect to {a, b}: two edges are
// together when a path joins them that avoids a and b internally. Returns
// groups of edge slots, ordered by their smallest slot.
inline std::vector<std::vector<int>> separation_classes(const Comp& c, int a, int b) {
  int m = static_cast<int>(c.edges.size());
  std::vector<int> uf(m);
  for (int i = 0; i < m; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  std::map<int, int> first_at_vertex;  // inner vertex -> first incident slot
  for (int i = 0; i < m; ++i)
    for (int w : {c.edges[i].u, c.edges[i].v}) {
      if (w == a || w == b) continue;
      auto [it, fresh] = first_at_vertex.emplace(w, i);
      if (!fresh) uf[find(i)] = find(it->second);
    }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < m; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, slots] : groups) out.push_back(std::move(slots));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x[0] < y[0]; });
  return out;
}

// Splits c at the first separation pair admitting a bipartition of its
// classes with at least two edges on each side. The two halves each gain a
// fresh virtual edge (a mated pair identified by *next_mate).
inline bool try_split(const Comp& c, Comp& out1, Comp& out2, int* next_mate) {
  std::vector<int> vs = comp_vertices(c);
  int total = static_cast<int>(c.edges.size());
  for (size_t ai = 0; ai < vs.size(); ++ai)
    for (size_t bi = ai + 1; bi < vs.size(); ++bi) {
      int a = vs[ai], b = vs[bi];
      auto classes = separation_classes(c, a, b);
      if (classes.size() < 2) continue;
      std::vector<int> side1;  // slots
      bool found = false;
      for (const auto& cl : classes) {
        int s = static_cast<int>(cl.size());
        if (s >= 2 && total - s >= 2) {
          side1 = cl;
          found = true;
          break;
        }
      }
      if (!found && total >= 4 &&
          std::all_of(classes.begin(), classes.end(), [](const auto& cl) { return cl.size() == 1; })) {
        // a bond: every class is a single parallel edge, so two of them
        // versus the rest is a valid bipartition
        side1 = {classes[0][0], classes[1][0]};
        found = true;
      }
      if (!found) continue;

      std::vector<char> in1(total, 0);
      for (int s : side1) in1[s] = 1;
      int pair_id = (*next_mate)++;
      out1.edges.clear();
      out2.edges.clear();
      for (int i = 0; i < total; ++i) (in1[i] ? out1 : out2).edges.push_back(c.edges[i]);
      out1.edges.push_back({a, b, -1, pair_id});
      out2.edges.push_back({a, b, -1, pair_id});
      return true;
    }
  return false;
}

enum class CompClass { Bond, Polygon, Rigid };

inline CompClass classify(const Comp& c) {
  auto norm = [](const CEdge& e) { return std::pair<int, int>(std::min(e.u, e.v), std::max(e.u, e.v)); };
  bool bond = true;
  for (const CEdge& e : c.edges)
    if (norm(e) != norm(c.edges[0])) bond = false;
  if (bond) return CompClass::Bond;
  std::map<int, int> deg;
  for (const CEdge& e : c.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  bool cycle = deg.size() == c.edges.size();
  for (auto [v, d] : deg)
    if (d != 2) cycle = false;
  return cycle ? CompClass::Polygon : CompClass::Rigid;
}

// Split to completion, then merge mated bond/bond and cycle/cycle pairs.
inline std::vector<Comp> triconnected_components(const Multigraph& g) {
  std::vector<Comp> done;
  std::vector<Comp> work(1);
  for (int e = 0; e < g.m(); ++e) work[0].edges.push_back({g.ends[e].first, g.ends[e].second, e, -1});
  int next_mate = 0;
  while (!work.empty()) {
    Comp c = std::move(work.back());
    work.pop_back();
    Comp h1, h2;
    if (try_split(c, h1, h2, &next_mate)) {
      work.push_back(std::move(h1));
      work.push_back(std::move(h2));
    } else {
      done.push_back(std::move(c));
    }
  }

  for (bool merged = true; merged;) {
    merged = false;
    std::map<int, std::vector<int>> holders;  // mate id -> comp indices
    for (int i = 0; i < static_cast<int>(done.size()); ++i)
      for (const CEdge& e : done[i].edges)
        if (e.mate >= 0) holders[e.mate].push_back(i);
    for (auto& [pair_id, comps] : holders) {
      if (comps.size() != 2) fail(ErrorCode::Internal, "virtual edge without exactly two holders");
      int i = comps[0], j = comps[1];
      CompClass ci = classify(done[i]), cj = classify(done[j]);
      if (ci != cj || ci == CompClass::Rigid) continue;
      Comp merged_comp;
      for (const CEdge& e : done[i].edges)
        if (e.mate != pair_id) merged_comp.edges.push_back(e);
      for (const CEdge& e : done[j].edges)
        if (e.mate != pair_id) merged_comp.edges.push_back(e);
      done[i] = std::move(merged_comp);
      done.erase(done.begin() + j);
      merged = true;
      break;
    }
  }
  return done;
}

}  // namespace detail_spqr

inline void validate_tree(const SpqrTree& t);

inline SpqrTree build_spqr(const Multigraph& g, int root_edge = 0) {
  if (!is_biconnected(g)) fail(ErrorCode::NotBiconnected, "decomposition needs a biconnected graph");
  if (g.m() < 2) fail(ErrorCode::TooSmall, "decomposition needs at least two edges");
  if (root_edge < 0 || root_edge >= g.m()) fail(ErrorCode::InvalidParams, "reference edge out of range");

  SpqrTree t;
  t.g = g;
  t.root_edge = root_edge;

  auto finish_node = [&](SpqrNode& node) {
    std::vector<std::pair<int, int>> lends;
    std::vector<int> vs;
    for (const SkelEdge& e : node.edges) {
      vs.push_back(e.u);
      vs.push_back(e.v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    node.skel_verts = vs;
    for (const SkelEdge& e : node.edges)
      lends.emplace_back(node.local_vertex(e.u), node.local_vertex(e.v));
    node.skel = make_graph(static_cast<int>(vs.size()), lends);
  };

  if (g.m() == 2) {
    // Two parallel edges: reference edge node plus one leaf edge node.
    int other = 1 - root_edge;
    auto [u, v] = g.ends[root_edge];
    SpqrNode root;
    root.type = NodeType::Q;
    root.real_edge = root_edge;
    root.pole_u = u;
    root.pole_v = v;
    root.edges = {{u, v, SkelEdge::Kind::Real, root_edge, -1}, {u, v, SkelEdge::Kind::Virtual, -1, 1}};
    SpqrNode leaf;
    leaf.type = NodeType::Q;
    leaf.real_edge = other;
    leaf.parent = 0;
    leaf.pole_u = u;
    leaf.pole_v = v;
    leaf.edges = {{u, v, SkelEdge::Kind::ParentVirtual, -1, -1}, {u, v, SkelEdge::Kind::Real, other, -1}};
    finish_node(root);
    finish_node(leaf);
    t.nodes = {root, leaf};
    t.root = 0;
  } else {
    using detail_spqr::CEdge;
    using detail_spqr::Comp;
    std::vector<Comp> comps = detail_spqr::triconnected_components(g);

    // mate id -> the two (component, slot) holders
    std::map<int, std::vector<std::pair<int, int>>> holders;
    int root_comp = -1, root_slot = -1;
    for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci)
      for (int si = 0; si < static_cast<int>(comps[ci].edges.size()); ++si) {
        const CEdge& e = comps[ci].edges[si];
        if (e.mate >= 0) holders[e.mate].emplace_back(ci, si);
        if (e.orig == root_edge) {
          root_comp = ci;
          root_slot = si;
        }
      }
    if (root_comp < 0) fail(ErrorCode::Internal, "reference edge missing from components");

    auto& nodes = t.nodes;
    auto classify_type = [&](const Comp& c) {
      switch (detail_spqr::classify(c)) {
        case detail_spqr::CompClass::Bond: return NodeType::P;
        case detail_spqr::CompClass::Polygon: return NodeType::S;
        default: return NodeType::R;
      }
    };

    // Recursive emission: build_comp returns the node id for component ci
    // entered through slot `entry` (which becomes its parent virtual edge).
    std::function<int(int, int, int, int, int)> build_comp = [&](int ci, int entry, int parent_id,
                                                                 int pu, int pv) -> int {
      const Comp& c = comps[ci];
      int id = static_cast<int>(nodes.size());
      nodes.emplace_back();
      nodes[id].type = classify_type(c);
      nodes[id].parent = parent_id;
      nodes[id].pole_u = pu;
      nodes[id].pole_v = pv;
      nodes[id].edges.push_back({pu, pv, SkelEdge::Kind::ParentVirtual, -1, -1});
      bool is_p = nodes[id].type == NodeType::P;
      for (int si = 0; si < static_cast<int>(c.edges.size()); ++si) {
        if (si == entry) continue;
        const CEdge& e = c.edges[si];
        int eu = is_p ? pu : e.u, ev = is_p ? pv : e.v;
        if (e.orig >= 0) {
          int qid = static_cast<int>(nodes.size());
          nodes.emplace_back();
          nodes[qid].type = NodeType::Q;
          nodes[qid].real_edge = e.orig;
          nodes[qid].parent = id;
          nodes[qid].pole_u = eu;
          nodes[qid].pole_v = ev;
          nodes[qid].edges = {{eu, ev, SkelEdge::Kind::ParentVirtual, -1, -1},
                              {eu, ev, SkelEdge::Kind::Real, e.orig, -1}};
          nodes[id].edges.push_back({eu, ev, SkelEdge::Kind::Real, e.orig, qid});
        } else {
          const auto& hs = holders[e.mate];
          auto [oci, osi] = hs[0].first == ci && hs[0].second == si ? hs[1] : hs[0];
          int child = build_comp(oci, osi, id, eu, ev);
          nodes[id].edges.push_back({eu, ev, SkelEdge::Kind::Virtual, -1, child});
        }
      }
      return id;
    };

    auto [ru, rv] = g.ends[root_edge];
    SpqrNode root;
    root.type = NodeType::Q;
    root.real_edge = root_edge;
    root.pole_u = ru;
    root.pole_v = rv;
    root.edges = {{ru, rv, SkelEdge::Kind::Real, root_edge, -1}, {ru, rv, SkelEdge::Kind::Virtual, -1, -1}};
    nodes.push_back(root);
    t.root = 0;
    int top = build_comp(root_comp, root_slot, 0, ru, rv);
    nodes[0].edges[1].child = top;
  }

  // Subtree statistics, bottom-up.
  std::function<void(int)> stats = [&](int id) {
    SpqrNode& node = t.nodes[id];
    if (node.type == NodeType::Q && node.real_edge >= 0 && id != t.root) {
      node.pert_edges = 1;
      node.pert_vertices = 2;
      node.min_edge = node.real_edge;
      return;
    }
    node.pert_edges = 0;
    node.pert_vertices = static_cast<int>([&] {
      std::vector<int> vs;
      for (const SkelEdge& e : node.edges) {
        vs.push_back(e.u);
        vs.push_back(e.v);
      }
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      return vs.size();
    }());
    node.min_edge = node.real_edge;  // root Q starts from its own edge
    if (id == t.root) node.pert_edges = 1;
    for (SkelEdge& e : node.edges) {
      if (e.child < 0) continue;
      stats(e.child);
      const SpqrNode& ch = t.nodes[e.child];
      node.pert_edges += ch.pert_edges;
      node.pert_vertices += ch.pert_vertices - 2;
      if (node.min_edge < 0 || ch.min_edge < node.min_edge) node.min_edge = ch.min_edge;
    }
  };
  stats(t.root);

  // Deterministic slot order: parent edge first, the rest by the smallest
  // original edge below them.
  for (SpqrNode& node : t.nodes) {
    auto key = [&](const SkelEdge& e) {
      if (e.kind == SkelEdge::Kind::ParentVirtual) return -1;
      if (e.child >= 0) return t.nodes[e.child].min_edge;
      return e.real_edge;  // root's real slot
    };
    std::stable_sort(node.edges.begin(), node.edges.end(),
                     [&](const SkelEdge& x, const SkelEdge& y) { return key(x) < key(y); });
  }

  for (SpqrNode& node : t.nodes) finish_node(node);

  // Rigid skeletons must be planar; this is the planarity gate for the whole
  // graph, since S and P skeletons always are.
  for (SpqrNode& node : t.nodes) {
    if (node.type != NodeType::R) continue;
    auto rot = planar_rotation_simple(node.skel);
    if (!rot) fail(ErrorCode::NonPlanarSkeleton, "rigid skeleton is not planar");
    node.r_rotation = std::move(*rot);
  }

  validate_tree(t);
  return t;
}

// Structural invariants of a well-formed decomposition tree.
inline void validate_tree(const SpqrTree& t) {
  auto check = [&](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::Internal, std::string("decomposition invariant violated: ") + what);
  };
  check(t.root >= 0 && t.nodes[t.root].type == NodeType::Q, "root is an edge node");
  check(t.nodes[t.root].pert_edges == t.g.m(), "subtree of root covers all edges");
  check(t.nodes[t.root].pert_vertices == t.g.n(), "subtree of root covers all vertices");

  std::vector<int> edge_seen(t.g.m(), 0);
  for (int id = 0; id < static_cast<int>(t.nodes.size()); ++id) {
    const SpqrNode& node = t.nodes[id];
    if (node.type == NodeType::Q) {
      check(node.real_edge >= 0, "edge node carries an edge");
      ++edge_seen[node.real_edge];
      auto [a, b] = t.g.ends[node.real_edge];
      check((node.pole_u == a && node.pole_v == b) || (node.pole_u == b && node.pole_v == a),
            "edge node poles are the edge ends");
      continue;
    }
    check(node.edges.size() >= 3, "component skeleton has >= 3 edges");
    check(node.edges[0].kind == SkelEdge::Kind::ParentVirtual, "parent edge sits at slot 0");
    check(node.edges[0].u == node.pole_u && node.edges[0].v == node.pole_v, "poles match parent edge");
    for (size_t i = 1; i < node.edges.size(); ++i) {
      const SkelEdge& e = node.edges[i];
      check(e.kind != SkelEdge::Kind::ParentVirtual, "single parent edge");
      check(e.child >= 0, "non-parent slots have children");
      const SpqrNode& ch = t.nodes[e.child];
      check(ch.parent == id, "child parent link");
      check((ch.pole_u == e.u && ch.pole_v == e.v), "child poles equal its slot ends");
      if (e.kind == SkelEdge::Kind::Real)
        check(ch.type == NodeType::Q && ch.real_edge == e.real_edge, "real slot leads to its edge node");
      else
        check(ch.type != NodeType::Q, "virtual slot leads to a component");
      if (node.type != NodeType::R && ch.type != NodeType::Q && ch.type != NodeType::R)
        check(node.type != ch.type, "no S-S or P-P adjacency");
    }
    const Multigraph& sk = node.skel;
    if (node.type == NodeType::P) {
      for (const SkelEdge& e : node.edges)
        check(std::minmax(e.u, e.v) == std::minmax(node.pole_u, node.pole_v),
              "bond skeleton edges join the poles");
    } else if (node.type == NodeType::S) {
      check(sk.n() >= 3 && sk.m() == sk.n(), "cycle skeleton size");
      for (int v = 0; v < sk.n(); ++v) check(sk.adj[v].size() == 2, "cycle skeleton degrees");
      check(is_connected(sk), "cycle skeleton connected");
    } else {
      check(sk.n() >= 4, "rigid skeleton order");
      std::vector<std::pair<int, int>> seen;
      for (auto [a, b] : sk.ends) seen.emplace_back(std::min(a, b), std::max(a, b));
      std::sort(seen.begin(), seen.end());
      check(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "rigid skeleton simple");
      for (int v = 0; v < sk.n(); ++v) check(sk.adj[v].size() >= 3, "rigid skeleton min degree 3");
      detail_spqr::Comp probe;
      for (const SkelEdge& e : node.edges) probe.edges.push_back({e.u, e.v, 0, -1});
      detail_spqr::Comp h1, h2;
      int mate = 0;
      check(!detail_spqr::try_split(probe, h1, h2, &mate), "rigid skeleton unsplittable");
    }
  }
  for (int e = 0; e < t.g.m(); ++e) check(edge_seen[e] == 1, "each edge in exactly one edge node");
}

// --- pertinent graphs and expansion sizes ------------------------------

struct PertinentGraph {
  Multigraph graph;
  std::vector<int> edge_map;    // local edge -> original edge (-1 for the added pole edge)
  std::vector<int> vertex_map;  // local vertex -> original vertex
  int pole_edge = -1;           // slot of the added pole edge, if requested
  int pole_u = -1, pole_v = -1;  // local indices of the poles
};

// Subtree real edges, listed in ascending original index.
inline void collect_pert_edges(const SpqrTree& t, int node, std::vector<int>* out) {
  const SpqrNode& nd = t.nodes[node];
  if (nd.type == NodeType::Q && node != t.root) {
    out->push_back(nd.real_edge);
    return;
  }
  if (node == t.root) out->push_back(nd.real_edge);
  for (const SkelEdge& e : nd.edges)
    if (e.child >= 0) collect_pert_edges(t, e.child, out);
}

inline PertinentGraph pertinent_graph(const SpqrTree& t, int node, bool with_pole_edge) {
  std::vector<int> pe;
  collect_pert_edges(t, node, &pe);
  std::sort(pe.begin(), pe.end());
  std::vector<int> verts;
  for (int e : pe) {
    verts.push_back(t.g.ends[e].first);
    verts.push_back(t.g.ends[e].second);
  }
  verts.push_back(t.nodes[node].pole_u);
  verts.push_back(t.nodes[node].pole_v);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto local = [&](int ov) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), ov) - verts.begin());
  };
  PertinentGraph out;
  out.vertex_map = verts;
  std::vector<std::pair<int, int>> lends;
  for (int e : pe) {
    lends.emplace_back(local(t.g.ends[e].first), local(t.g.ends[e].second));
    out.edge_map.push_back(e);
  }
  out.pole_u = local(t.nodes[node].pole_u);
  out.pole_v = local(t.nodes[node].pole_v);
  if (with_pole_edge) {
    out.pole_edge = static_cast<int>(lends.size());
    lends.emplace_back(out.pole_u, out.pole_v);
    out.edge_map.push_back(-1);
  }
  out.graph = make_graph(static_cast<int>(verts.size()), lends);
  return out;
}

// Same tree rooted at a different reference edge. Phase one is
// deterministic in the graph alone, so the component set is identical and
// only parent/child roles move.
inline SpqrTree reroot(const SpqrTree& t, int root_edge) { return build_spqr(t.g, root_edge); }

// Skeleton of a P- or R-node with every S-child inlined as the path its
// cycle forms between the poles of its slot. Expanded edges reference
// non-S nodes only (leaf Q, P, or R), or -1 for the parent edge.
struct ExpandedSkeleton {
  Multigraph graph;
  std::vector<int> verts;      // local vertex -> original vertex
  std::vector<int> edge_node;  // local edge -> referenced node id (-1: parent edge)
  int parent_edge = -1;        // local edge index of the parent edge
};

inline ExpandedSkeleton expanded_skeleton(const SpqrTree& t, int id) {
  const SpqrNode& node = t.nodes[id];
  if (node.type != NodeType::P && node.type != NodeType::R)
    fail(ErrorCode::InvalidParams, "expansion applies to bond and rigid nodes");

  std::vector<int> verts;
  std::vector<std::pair<int, int>> ends;  // original vertex ids for now
  std::vector<int> edge_node;
  int parent_local = -1;
  auto add_edge = [&](int u, int v, int ref) {
    ends.emplace_back(u, v);
    edge_node.push_back(ref);
  };
  for (int slot = 0; slot < static_cast<int>(node.edges.size()); ++slot) {
    const SkelEdge& se = node.edges[slot];
    if (se.kind == SkelEdge::Kind::ParentVirtual) {
      parent_local = static_cast<int>(ends.size());
      add_edge(se.u, se.v, -1);
      continue;
    }
    const SpqrNode& ch = t.nodes[se.child];
    if (ch.type != NodeType::S) {
      add_edge(se.u, se.v, se.child);
      continue;
    }
    // walk the S cycle from se.u to se.v avoiding the S-node's parent edge
    std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (other, slot)
    for (int cs = 1; cs < static_cast<int>(ch.edges.size()); ++cs) {
      adj[ch.edges[cs].u].emplace_back(ch.edges[cs].v, cs);
      adj[ch.edges[cs].v].emplace_back(ch.edges[cs].u, cs);
    }
    int at = se.u, prev_slot = -1;
    while (at != se.v) {
      for (auto [nxt, cs] : adj[at]) {
        if (cs == prev_slot) continue;
        const SkelEdge& ce = ch.edges[cs];
        add_edge(at, nxt, ce.child);
        prev_slot = cs;
        at = nxt;
        break;
      }
    }
  }
  for (auto [u, v] : ends) {
    verts.push_back(u);
    verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto local = [&](int ov) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), ov) - verts.begin());
  };
  std::vector<std::pair<int, int>> lends;
  for (auto [u, v] : ends) lends.emplace_back(local(u), local(v));

  ExpandedSkeleton out;
  out.graph = make_graph(static_cast<int>(verts.size()), lends);
  out.verts = std::move(verts);
  out.edge_node = std::move(edge_node);
  out.parent_edge = parent_local;
  return out;
}

// Vertex/edge counts of a skeleton slot once expanded back to real edges.
// The parent slot expands to everything outside the node's subtree (plus the
// poles), mirroring the counts seen from the far side.
inline std::pair<int, int> expansion_counts(const SpqrTree& t, int node, int slot) {
  const SkelEdge& e = t.nodes[node].edges[slot];
  switch (e.kind) {
    case SkelEdge::Kind::Real: return {2, 1};
    case SkelEdge::Kind::Virtual:
      return {t.nodes[e.child].pert_vertices, t.nodes[e.child].pert_edges};
    case SkelEdge::Kind::ParentVirtual:
      return {t.g.n() - t.nodes[node].pert_vertices + 2, t.g.m() - t.nodes[node].pert_edges};
  }
  fail(ErrorCode::Internal, "bad slot kind");
}

}  // namespace faceopt
