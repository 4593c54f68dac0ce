#pragma once

// JSON formats shared by the CLI and tests.
//
// Graph:     {"vertices":["u","v",...],
//             "edges":[{"id":"e1","ends":["u","v"]},...]}
// Embedding: {"schema":"faceopt/1",
//             "rotation":{"u":["e1","e3"],...},
//             "faces":[{"size":3,"sides":[["e1","u->v"],...]},...],
//             "max_face":N}
//
// nlohmann::json objects iterate sorted by key, so dumping any value built
// here is byte-deterministic. Unknown keys in inputs are ignored, which lets
// every emitted graph be fed back in unchanged.

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "faceopt/core.hpp"
#include "faceopt/rotation.hpp"

namespace faceopt {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "faceopt/1";

inline Multigraph graph_from_json(const Json& j) {
  if (!j.is_object())
    fail(ErrorCode::InvalidInput, "graph JSON must be an object");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    fail(ErrorCode::InvalidInput, "graph JSON needs a \"vertices\" array");
  if (!j.contains("edges") || !j["edges"].is_array())
    fail(ErrorCode::InvalidInput, "graph JSON needs an \"edges\" array");
  std::vector<std::string> vids;
  for (const Json& v : j["vertices"]) {
    if (!v.is_string()) fail(ErrorCode::InvalidInput, "vertex ids must be strings");
    vids.push_back(v.get<std::string>());
  }
  std::vector<EdgeSpec> edges;
  for (const Json& e : j["edges"]) {
    if (!e.is_object() || !e.contains("id") || !e["id"].is_string() ||
        !e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2 ||
        !e["ends"][0].is_string() || !e["ends"][1].is_string())
      fail(ErrorCode::InvalidInput,
           "each edge needs {\"id\":string,\"ends\":[string,string]}");
    edges.push_back({e["id"].get<std::string>(), e["ends"][0].get<std::string>(),
                     e["ends"][1].get<std::string>()});
  }
  return build_graph(std::move(vids), std::move(edges));
}

inline Json graph_to_json(const Multigraph& g) {
  Json edges = Json::array();
  for (int e = 0; e < g.m(); ++e) {
    Json ends = Json::array();
    ends.push_back(g.vertex_names[g.ends[e].first]);
    ends.push_back(g.vertex_names[g.ends[e].second]);
    Json je;
    je["id"] = g.edge_names[e];
    je["ends"] = std::move(ends);
    edges.push_back(std::move(je));
  }
  Json j;
  j["schema"] = kSchemaTag;
  j["vertices"] = g.vertex_names;
  j["edges"] = std::move(edges);
  return j;
}

inline Json rotation_to_json(const Multigraph& g, const RotationSystem& rs) {
  validate_rotation(g, rs);
  Json rot = Json::object();
  for (int v = 0; v < g.n(); ++v) {
    Json arr = Json::array();
    for (int d : rs.order[v]) arr.push_back(g.edge_names[dart_edge(d)]);
    rot[g.vertex_names[v]] = std::move(arr);
  }
  return rot;
}

inline RotationSystem rotation_from_json(const Multigraph& g, const Json& j) {
  if (!j.is_object())
    fail(ErrorCode::InvalidInput, "rotation must map vertex ids to edge-id lists");
  std::map<std::string, std::vector<std::string>> order;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_array())
      fail(ErrorCode::InvalidInput, "rotation entries must be arrays of edge ids");
    std::vector<std::string> ids;
    for (const Json& e : it.value()) {
      if (!e.is_string())
        fail(ErrorCode::InvalidInput, "rotation entries must be arrays of edge ids");
      ids.push_back(e.get<std::string>());
    }
    order[it.key()] = std::move(ids);
  }
  return rotation_from_edge_ids(g, order);
}

inline Json embedding_to_json(const Multigraph& g, const RotationSystem& rs,
                              const FaceReport& rep) {
  Json faces = Json::array();
  for (const auto& f : rep.faces) {
    Json sides = Json::array();
    for (int d : f) {
      Json side = Json::array();
      side.push_back(g.edge_names[dart_edge(d)]);
      side.push_back(g.vertex_names[dart_tail(g, d)] + "->" +
                     g.vertex_names[dart_head(g, d)]);
      sides.push_back(std::move(side));
    }
    Json jf;
    jf["size"] = static_cast<int>(f.size());
    jf["sides"] = std::move(sides);
    faces.push_back(std::move(jf));
  }
  Json j;
  j["schema"] = kSchemaTag;
  j["rotation"] = rotation_to_json(g, rs);
  j["faces"] = std::move(faces);
  j["max_face"] = rep.max_size();
  return j;
}

// Reads an emitted embedding back and re-validates it: the rotation must be
// a permutation at every vertex and its face traversal must satisfy Euler's
// formula (planar_faces raises NonPlanarRotation otherwise).
inline RotationSystem embedding_from_json(const Multigraph& g, const Json& j) {
  if (!j.is_object() || !j.contains("rotation"))
    fail(ErrorCode::InvalidInput, "embedding JSON needs a \"rotation\" object");
  RotationSystem rs = rotation_from_json(g, j["rotation"]);
  planar_faces(g, rs);
  return rs;
}

}  // namespace faceopt
