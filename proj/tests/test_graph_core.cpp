#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "faceopt/core.hpp"
#include "faceopt/rotation.hpp"
#include "support/oracles.hpp"

using namespace faceopt;

namespace {

Multigraph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// Planar rotation of K4 (vertex 3 drawn inside triangle 0-1-2), derived by
// hand from clockwise angular order at each vertex.
RotationSystem k4_planar_rotation(const Multigraph& g) {
  RotationSystem rs;
  rs.order = {
      {dart_of(1, 0), dart_of(2, 0), dart_of(0, 0)},
      {dart_of(0, 1), dart_of(4, 0), dart_of(3, 0)},
      {dart_of(3, 1), dart_of(5, 0), dart_of(1, 1)},
      {dart_of(4, 1), dart_of(2, 1), dart_of(5, 1)},
  };
  validate_rotation(g, rs);
  return rs;
}

}  // namespace

TEST_CASE("build_graph maps ids and rejects malformed input") {
  Multigraph g = build_graph({"b", "a", "c"}, {{"e1", "a", "b"}, {"e0", "b", "c"}});
  CHECK(g.n() == 3);
  CHECK(g.m() == 2);
  // names are sorted, so indices are stable regardless of input order
  CHECK(g.vertex_names == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.edge_names == std::vector<std::string>{"e0", "e1"});
  CHECK(g.ends[g.edge_index("e1")] == std::pair<int, int>(0, 1));
  CHECK(g.other_end(g.edge_index("e0"), g.vertex_index("c")) == g.vertex_index("b"));

  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code([] { build_graph({"a"}, {{"e", "a", "a"}}); }) == ErrorCode::LoopEdge);
  CHECK(code([] { build_graph({"a", "b"}, {{"e", "a", "z"}}); }) == ErrorCode::UnknownVertex);
  CHECK(code([] { build_graph({"a", "a"}, {}); }) == ErrorCode::DuplicateId);
  CHECK(code([] { build_graph({"a", "b"}, {{"e", "a", "b"}, {"e", "b", "a"}}); }) ==
        ErrorCode::DuplicateId);
}

TEST_CASE("K4 planar rotation yields four triangles") {
  Multigraph g = k4();
  RotationSystem rs = k4_planar_rotation(g);
  FaceReport rep = planar_faces(g, rs);
  CHECK(rep.sorted_sizes() == std::vector<int>{3, 3, 3, 3});
  CHECK(rep.max_size() == 3);
  // every dart appears in exactly one face
  int total = 0;
  for (const auto& f : rep.faces) total += static_cast<int>(f.size());
  CHECK(total == 2 * g.m());
  CHECK(oracle::face_sizes_mirror_walk(g, rs) == rep.sorted_sizes());
  CHECK(planar_faces(g, mirror(rs)).sorted_sizes() == rep.sorted_sizes());
}

TEST_CASE("cycles and bundles have the expected faces") {
  Multigraph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(planar_faces(c4, default_rotation(c4)).sorted_sizes() == std::vector<int>{4, 4});

  Multigraph pair2 = make_graph(2, {{0, 1}, {0, 1}});
  CHECK(planar_faces(pair2, default_rotation(pair2)).sorted_sizes() == std::vector<int>{2, 2});

  Multigraph single = make_graph(2, {{0, 1}});
  CHECK(planar_faces(single, default_rotation(single)).sorted_sizes() == std::vector<int>{2});

  // three parallel edges: opposite cyclic orders at the two endpoints nest
  // the edges into three digons
  Multigraph theta = make_graph(2, {{0, 1}, {0, 1}, {0, 1}});
  RotationSystem nested;
  nested.order = {{dart_of(0, 0), dart_of(1, 0), dart_of(2, 0)},
                  {dart_of(2, 1), dart_of(1, 1), dart_of(0, 1)}};
  validate_rotation(theta, nested);
  CHECK(planar_faces(theta, nested).sorted_sizes() == std::vector<int>{2, 2, 2});
  CHECK(oracle::face_sizes_mirror_walk(theta, nested) == std::vector<int>{2, 2, 2});

  // same cyclic order at both endpoints is a torus embedding: one face of
  // size six, so the Euler check trips
  RotationSystem twisted;
  twisted.order = {{dart_of(0, 0), dart_of(1, 0), dart_of(2, 0)},
                   {dart_of(0, 1), dart_of(1, 1), dart_of(2, 1)}};
  validate_rotation(theta, twisted);
  CHECK(faces(theta, twisted).sorted_sizes() == std::vector<int>{6});
  CHECK_THROWS_AS(planar_faces(theta, twisted), Error);
}

TEST_CASE("rotation_from_edge_ids round-trips and validates") {
  Multigraph g = build_graph({"u", "v"}, {{"a", "u", "v"}, {"b", "u", "v"}});
  RotationSystem rs = rotation_from_edge_ids(g, {{"u", {"a", "b"}}, {"v", {"b", "a"}}});
  CHECK(planar_faces(g, rs).sorted_sizes() == std::vector<int>{2, 2});
  CHECK_THROWS_AS(rotation_from_edge_ids(g, {{"u", {"a", "a"}}, {"v", {"b", "a"}}}), Error);
  CHECK_THROWS_AS(rotation_from_edge_ids(g, {{"u", {"a"}}, {"v", {"b", "a"}}}), Error);
}

TEST_CASE("biconnectivity matches the deletion oracle") {
  auto check = [](const Multigraph& g, bool expect) {
    CHECK(is_biconnected(g) == expect);
    CHECK(oracle::biconnected_by_deletion(g) == expect);
  };
  check(make_graph(2, {{0, 1}}), true);                          // single edge
  check(make_graph(2, {{0, 1}, {0, 1}}), true);                  // parallel pair
  check(make_graph(3, {{0, 1}, {1, 2}}), false);                 // path: 1 is a cutvertex
  check(make_graph(3, {{0, 1}, {1, 2}, {2, 0}}), true);          // triangle
  check(k4(), true);
  check(make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}), false);  // bowtie
  check(make_graph(4, {{0, 1}, {2, 3}}), false);                 // disconnected
  check(make_graph(3, {{0, 1}, {1, 2}, {1, 2}}), false);         // 1 still cut despite bundle
  check(make_graph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}}), true);  // doubled triangle edge
  check(make_graph(1, {}), false);                               // lone vertex

  std::mt19937 rng(20260814);
  for (int iter = 0; iter < 400; ++iter) {
    int n = 2 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % 8);
    std::vector<std::pair<int, int>> ends;
    for (int i = 0; i < m; ++i) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b) ends.emplace_back(a, b);
    }
    if (ends.empty()) continue;
    Multigraph g = make_graph(n, ends);
    INFO("iter " << iter);
    CHECK(is_biconnected(g) == oracle::biconnected_by_deletion(g));
  }
}

TEST_CASE("bipartition and the face-parity gate") {
  Multigraph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto b = bipartition(c4);
  REQUIRE(b.has_value());
  CHECK(b->color[0] != b->color[1]);
  CHECK(b->color[0] == b->color[2]);

  CHECK_FALSE(bipartition(make_graph(3, {{0, 1}, {1, 2}, {2, 0}})).has_value());
  CHECK(bipartition(make_graph(2, {{0, 1}, {0, 1}, {0, 1}})).has_value());
  CHECK_FALSE(bipartition(k4()).has_value());
}

TEST_CASE("euler_uniform_k pins the only possible uniform face size") {
  CHECK(euler_uniform_k(k4()) == 3);
  CHECK(euler_uniform_k(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})) == 4);
  CHECK(euler_uniform_k(make_graph(2, {{0, 1}, {0, 1}})) == 2);
  CHECK(euler_uniform_k(make_graph(2, {{0, 1}})) == 2);  // single edge: one face of size 2
  CHECK(euler_uniform_k(make_graph(3, {{0, 1}, {1, 2}, {2, 0}})) == 3);
  // K4 minus an edge: f=3, 2m=10, not divisible
  CHECK_FALSE(euler_uniform_k(make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}})).has_value());
  // cube graph: n=8, m=12, f=6, k=4
  CHECK(euler_uniform_k(make_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                       {4, 5}, {5, 6}, {6, 7}, {7, 4},
                                       {0, 4}, {1, 5}, {2, 6}, {3, 7}})) == 4);
}
