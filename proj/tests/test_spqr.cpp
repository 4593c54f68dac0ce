#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "faceopt/compose.hpp"
#include "faceopt/spqr.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace faceopt;

namespace {

Multigraph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Multigraph wheel4() {
  // hub 0, rim 1-2-3-4
  return make_graph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

Multigraph theta() {
  // u=0, v=1 joined by three length-2 paths through 2, 3, 4
  return make_graph(5, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}});
}

std::map<NodeType, int> type_counts(const SpqrTree& t) {
  std::map<NodeType, int> c;
  for (const auto& nd : t.nodes) ++c[nd.type];
  return c;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("guards: biconnected input with at least two edges") {
  CHECK(code_of([] { build_spqr(make_graph(3, {{0, 1}, {1, 2}})); }) == ErrorCode::NotBiconnected);
  CHECK(code_of([] { build_spqr(make_graph(2, {{0, 1}})); }) == ErrorCode::TooSmall);
  CHECK(code_of([] {
          Multigraph g = make_graph(2, {{0, 1}, {0, 1}});
          build_spqr(g, 5);
        }) == ErrorCode::InvalidParams);
  // K5 is biconnected but not planar: the rigid-skeleton gate trips
  CHECK(code_of([] {
          build_spqr(make_graph(
              5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
        }) == ErrorCode::NonPlanarSkeleton);
}

TEST_CASE("degenerate shapes: digon, bundle, single cycle") {
  SpqrTree digon = build_spqr(make_graph(2, {{0, 1}, {0, 1}}));
  CHECK(digon.nodes.size() == 2);
  CHECK(type_counts(digon)[NodeType::Q] == 2);

  SpqrTree bundle = build_spqr(make_graph(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}));
  auto bc = type_counts(bundle);
  CHECK(bc[NodeType::P] == 1);
  CHECK(bc[NodeType::Q] == 4);
  CHECK(bc[NodeType::S] == 0);
  int p = bundle.nodes_of_type(NodeType::P)[0];
  CHECK(bundle.nodes[p].edges.size() == 4);  // parent edge + three real slots

  SpqrTree c5 = build_spqr(make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
  auto cc = type_counts(c5);
  CHECK(cc[NodeType::S] == 1);
  CHECK(cc[NodeType::P] == 0);
  CHECK(cc[NodeType::R] == 0);
  CHECK(cc[NodeType::Q] == 5);
}

TEST_CASE("two parallel u-v paths of lengths 1 and 3 form a single cycle") {
  // u=0, v=1, path 0-2-3-1 plus the direct edge: this is a 4-cycle, so the
  // canonical decomposition is one cycle node (a bond needs three classes).
  Multigraph g = make_graph(4, {{0, 1}, {0, 2}, {2, 3}, {3, 1}});
  SpqrTree t = build_spqr(g);
  auto c = type_counts(t);
  CHECK(c[NodeType::S] == 1);
  CHECK(c[NodeType::P] == 0);
  CHECK(c[NodeType::Q] == 4);
}

TEST_CASE("doubling the short path yields a bond with an edge child and a cycle child") {
  // u=0, v=1: edges e0,e1 parallel u-v plus path 0-2-3-1
  Multigraph g = make_graph(4, {{0, 1}, {0, 1}, {0, 2}, {2, 3}, {3, 1}});
  SpqrTree t = build_spqr(g, 0);
  auto c = type_counts(t);
  CHECK(c[NodeType::P] == 1);
  CHECK(c[NodeType::S] == 1);
  CHECK(c[NodeType::R] == 0);

  int p = t.nodes_of_type(NodeType::P)[0];
  CHECK(t.nodes[p].parent == t.root);
  REQUIRE(t.nodes[p].edges.size() == 3);
  std::multiset<NodeType> child_types;
  for (int ch : t.children(p)) child_types.insert(t.nodes[ch].type);
  CHECK(child_types == std::multiset<NodeType>{NodeType::Q, NodeType::S});

  int s = t.nodes_of_type(NodeType::S)[0];
  CHECK(t.nodes[s].skel.n() == 4);  // the 4-cycle through the poles
  CHECK(t.nodes[s].skel.m() == 4);
}

TEST_CASE("K4 and the 4-spoke wheel are single rigid nodes") {
  for (const Multigraph& g : {k4(), wheel4()}) {
    SpqrTree t = build_spqr(g);
    auto c = type_counts(t);
    CHECK(c[NodeType::R] == 1);
    CHECK(c[NodeType::S] == 0);
    CHECK(c[NodeType::P] == 0);
    CHECK(c[NodeType::Q] == g.m());
    int r = t.nodes_of_type(NodeType::R)[0];
    CHECK(t.nodes[r].skel.m() == g.m());
    CHECK(t.nodes[r].skel.n() == g.n());
  }
}

TEST_CASE("theta graph: one bond with three cycle neighbors") {
  SpqrTree t = build_spqr(theta(), 0);
  auto c = type_counts(t);
  CHECK(c[NodeType::P] == 1);
  CHECK(c[NodeType::S] == 3);
  CHECK(c[NodeType::Q] == 6);  // one per real edge, reference edge included
  int p = t.nodes_of_type(NodeType::P)[0];
  REQUIRE(t.nodes[p].edges.size() == 3);
  // rooted inside one path: the bond's parent and both children are cycles
  CHECK(t.nodes[t.nodes[p].parent].type == NodeType::S);
  for (int ch : t.children(p)) CHECK(t.nodes[ch].type == NodeType::S);
}

TEST_CASE("subdivided K4: cycle node over rigid node") {
  // K4 with edge 0-1 replaced by path 0-4-1
  Multigraph g = make_graph(5, {{0, 4}, {4, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  SpqrTree t = build_spqr(g, 0);
  auto c = type_counts(t);
  CHECK(c[NodeType::S] == 1);
  CHECK(c[NodeType::R] == 1);
  CHECK(c[NodeType::P] == 0);
  int r = t.nodes_of_type(NodeType::R)[0];
  CHECK(t.nodes[r].skel.n() == 4);
  CHECK(t.nodes[r].skel.m() == 6);
}

TEST_CASE("pertinent graphs extract the represented subgraph") {
  SpqrTree t = build_spqr(k4(), 0);
  int r = t.nodes_of_type(NodeType::R)[0];
  PertinentGraph pg = pertinent_graph(t, r, false);
  CHECK(pg.graph.m() == 5);  // K4 minus the root edge
  CHECK(pg.graph.n() == 4);
  CHECK(std::minmax(t.nodes[r].pole_u, t.nodes[r].pole_v) ==
        std::minmax(t.g.ends[0].first, t.g.ends[0].second));

  // leaf Q: the single real edge
  int leaf = -1;
  for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i)
    if (t.nodes[i].type == NodeType::Q && i != t.root) leaf = i;
  PertinentGraph qg = pertinent_graph(t, leaf, false);
  CHECK(qg.graph.m() == 1);
  CHECK(qg.graph.n() == 2);

  // theta rooted at a path edge: the bond node represents the other two paths
  SpqrTree th = build_spqr(theta(), 0);
  int p = th.nodes_of_type(NodeType::P)[0];
  PertinentGraph pp = pertinent_graph(th, p, false);
  CHECK(pp.graph.m() == 4);
  CHECK(pp.graph.n() == 4);
  std::vector<int> expect;
  for (int e = 0; e < th.g.m(); ++e)
    if (e != 0 && e != 1) expect.push_back(e);  // everything but the rooted path
  CHECK(pp.edge_map == expect);
}

TEST_CASE("expansion counts") {
  // K4 with a doubled edge: bond over {e0,e1} with the rigid rest
  Multigraph g = make_graph(4, {{0, 1}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  SpqrTree t = build_spqr(g, 0);
  int p = t.nodes_of_type(NodeType::P)[0];
  REQUIRE(t.nodes[p].edges.size() == 3);
  for (size_t slot = 1; slot < t.nodes[p].edges.size(); ++slot) {
    auto [ne, me] = expansion_counts(t, p, static_cast<int>(slot));
    if (t.nodes[p].edges[slot].kind == SkelEdge::Kind::Real) {
      CHECK(ne == 2);
      CHECK(me == 1);  // single edge
    } else {
      CHECK(ne == 4);
      CHECK(me == 5);  // K4 minus an edge
    }
  }
  // parent slot of the bond: the reference edge side
  auto [np, mp] = expansion_counts(t, p, 0);
  CHECK(np == 2);
  CHECK(mp == 1);

  // length-2 path expansion
  SpqrTree th = build_spqr(theta(), 0);
  int pb = th.nodes_of_type(NodeType::P)[0];
  for (size_t slot = 1; slot < th.nodes[pb].edges.size(); ++slot) {
    auto [ne, me] = expansion_counts(th, pb, static_cast<int>(slot));
    CHECK(ne == 3);
    CHECK(me == 2);
  }
}

TEST_CASE("expanded skeletons inline cycle children as paths") {
  SpqrTree th = build_spqr(theta(), 0);
  int p = th.nodes_of_type(NodeType::P)[0];
  ExpandedSkeleton ex = expanded_skeleton(th, p);
  CHECK(ex.graph.m() == 5);  // parent edge + two length-2 paths
  CHECK(ex.graph.n() == 4);
  REQUIRE(ex.parent_edge >= 0);
  for (int e = 0; e < ex.graph.m(); ++e) {
    if (e == ex.parent_edge) {
      CHECK(ex.edge_node[e] == -1);
    } else {
      REQUIRE(ex.edge_node[e] >= 0);
      CHECK(th.nodes[ex.edge_node[e]].type == NodeType::Q);
    }
  }

  // rigid node with no cycle children: expansion is the skeleton itself
  SpqrTree tk = build_spqr(k4(), 0);
  int r = tk.nodes_of_type(NodeType::R)[0];
  ExpandedSkeleton exr = expanded_skeleton(tk, r);
  CHECK(exr.graph.m() == 6);
  CHECK(exr.graph.n() == 4);

  // bond with one edge child and one length-3 cycle child
  Multigraph g = make_graph(4, {{0, 1}, {0, 1}, {0, 2}, {2, 3}, {3, 1}});
  SpqrTree td = build_spqr(g, 0);
  int pd = td.nodes_of_type(NodeType::P)[0];
  ExpandedSkeleton exd = expanded_skeleton(td, pd);
  CHECK(exd.graph.m() == 5);  // parent + edge + path of 3
  CHECK(exd.graph.n() == 4);
}

TEST_CASE("skeleton embeddings: bond order layout and rigid mirror pair") {
  Multigraph bundle = make_graph(2, {{0, 1}, {0, 1}, {0, 1}});
  SpqrTree t = build_spqr(bundle, 0);
  int p = t.nodes_of_type(NodeType::P)[0];
  EmbeddingChoice ch;
  ch.p_perm[p] = {1, 2};
  RotationSystem rs = embed_skeleton(t, p, ch);
  int lu = t.nodes[p].local_vertex(t.nodes[p].pole_u);
  int lv = t.nodes[p].local_vertex(t.nodes[p].pole_v);
  auto slot_seq = [&](const std::vector<int>& darts) {
    std::vector<int> s;
    for (int d : darts) s.push_back(dart_edge(d));
    return s;
  };
  CHECK(slot_seq(rs.order[lu]) == std::vector<int>{0, 1, 2});
  CHECK(slot_seq(rs.order[lv]) == std::vector<int>{0, 2, 1});

  SpqrTree tk = build_spqr(k4(), 0);
  int r = tk.nodes_of_type(NodeType::R)[0];
  EmbeddingChoice flip0, flip1;
  flip0.r_flip[r] = false;
  flip1.r_flip[r] = true;
  RotationSystem a = embed_skeleton(tk, r, flip0);
  RotationSystem b = embed_skeleton(tk, r, flip1);
  CHECK(mirror(a).order == b.order);
  CHECK(planar_faces(tk.nodes[r].skel, a).sorted_sizes() == std::vector<int>{3, 3, 3, 3});

  EmbeddingChoice bad;
  bad.p_perm[p] = {1, 1};
  CHECK_THROWS_AS(compose_embedding(t, bad), Error);
}

TEST_CASE("rerooting preserves the component structure") {
  for (const Multigraph& g :
       {k4(), theta(), make_graph(4, {{0, 1}, {0, 1}, {0, 2}, {2, 3}, {3, 1}})}) {
    SpqrTree t0 = build_spqr(g, 0);
    auto signature = [](const SpqrTree& t) {
      std::multiset<std::pair<int, int>> sig;  // (type, skeleton size) per component
      for (const auto& nd : t.nodes)
        if (nd.type != NodeType::Q)
          sig.emplace(static_cast<int>(nd.type), static_cast<int>(nd.edges.size()));
      return sig;
    };
    auto sig0 = signature(t0);
    for (int e = 1; e < g.m(); ++e) {
      SpqrTree te = reroot(t0, e);
      CHECK(signature(te) == sig0);
      CHECK(te.root_edge == e);
      SpqrTree back = reroot(te, 0);
      CHECK(signature(back) == sig0);
    }
  }
}

TEST_CASE("composed embeddings re-glue the input graph on the whole corpus") {
  auto graphs = corpus::corpus_graphs(8);
  INFO("corpus size " << graphs.size());
  CHECK(graphs.size() >= 300);
  long long checked = 0;
  for (const Multigraph& g : graphs) {
    REQUIRE(is_biconnected(g));
    SpqrTree t = build_spqr(g);  // validate_tree runs inside
    RotationSystem rs = compose_embedding(t);
    FaceReport rep = planar_faces(g, rs);  // Euler-validated
    int total = 0;
    for (const auto& f : rep.faces) total += static_cast<int>(f.size());
    REQUIRE(total == 2 * g.m());
    ++checked;
  }
  CHECK(checked == static_cast<long long>(graphs.size()));
}

TEST_CASE("side lengths match exhaustive per-node minima on small graphs") {
  // sidelen claims both boundary-walk minima are simultaneously achievable;
  // check against brute force over all planar rotations of pert + pole edge.
  auto graphs = corpus::corpus_graphs(6);
  for (const Multigraph& g : graphs) {
    SpqrTree t = build_spqr(g);
    for (int id = 0; id < static_cast<int>(t.nodes.size()); ++id) {
      if (id == t.root) continue;
      PertinentGraph pg = pertinent_graph(t, id, true);
      if (oracle::rotation_combo_count(pg.graph, 100000) >= 100000) continue;
      long long best_a = -1, best_b = -1;
      oracle::for_all_rotations(pg.graph, [&](const RotationSystem& rs) {
        FaceReport rep = faces(pg.graph, rs);
        if (!rotation_is_planar(pg.graph, rep)) return;
        int f1 = rep.face_of_dart[dart_of(pg.pole_edge, 0)];
        int f2 = rep.face_of_dart[dart_of(pg.pole_edge, 1)];
        long long x = static_cast<long long>(rep.faces[f1].size()) - 1;
        long long y = static_cast<long long>(rep.faces[f2].size()) - 1;
        if (x > y) std::swap(x, y);
        if (best_a < 0 || x < best_a) best_a = x;
        if (best_b < 0 || y < best_b) best_b = y;
      });
      REQUIRE(best_a >= 0);
      SideLen s = sidelen(t, id);
      if (t.nodes[id].type != NodeType::S) {
        CHECK(s.a == best_a);
        CHECK(s.b == best_b);
      } else {
        // cycle nodes: the short side is still exact, the long side is the
        // aligned-chain value which can exceed the separately-minimized b
        CHECK(s.a == best_a);
        CHECK(s.b >= best_b);
      }
    }
  }
}
