#pragma once

// Planar embedding of *simple* graphs via Boyer-Myrvold. Rigid skeletons in
// the decomposition are simple and 3-connected, so their embedding is unique
// up to reflection; this wrapper produces one orientation of it.

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/properties.hpp>

#include "faceopt/rotation.hpp"

namespace faceopt {

namespace detail {
using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                          boost::property<boost::edge_index_t, int>>;
}

// Rotation system of a planar embedding, or nullopt when nonplanar.
// Rejects parallel edges: the caller is expected to have collapsed them.
inline std::optional<RotationSystem> planar_rotation_simple(const Multigraph& g) {
  {
    std::vector<std::pair<int, int>> seen;
    for (auto [a, b] : g.ends) seen.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      fail(ErrorCode::InvalidParams, "planar_rotation_simple requires a simple graph");
  }

  detail::BoostGraph bg(g.n());
  for (int e = 0; e < g.m(); ++e) boost::add_edge(g.ends[e].first, g.ends[e].second, e, bg);

  using EdgeDesc = boost::graph_traits<detail::BoostGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> emb(g.n());
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg, boost::boyer_myrvold_params::embedding = emb.data());
  if (!planar) return std::nullopt;

  auto eidx = boost::get(boost::edge_index, bg);
  RotationSystem rs;
  rs.order.assign(g.n(), {});
  for (int v = 0; v < g.n(); ++v)
    for (const EdgeDesc& ed : emb[v]) {
      int e = eidx[ed];
      rs.order[v].push_back(dart_of(e, g.ends[e].first == v ? 0 : 1));
    }
  validate_rotation(g, rs);
  return rs;
}

inline bool is_planar_simple(const Multigraph& g) { return planar_rotation_simple(g).has_value(); }

}  // namespace faceopt
