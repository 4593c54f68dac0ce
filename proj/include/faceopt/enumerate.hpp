#pragma once

// Exhaustive embedding enumeration, deduplicated up to reflection, plus the
// exact (brute-force) optimizers built on it. These are the reference
// answers the polynomial algorithms are checked against, and they also back
// the CLI's `enumerate` command.
//
// Reflection handling: mirroring a whole embedding reverses every bond
// order and toggles every rigid reflection bit. Fixing the first rigid
// node's bit to false (or, with no rigid nodes, keeping only bond orders
// whose first entry is smaller than their last) therefore picks exactly one
// embedding of each mirror pair; when there are no bond or rigid nodes the
// embedding is unique outright.

#include "faceopt/compose.hpp"

namespace faceopt {

// Visits every embedding once (up to reflection) in a fixed deterministic
// order. The callback may return false to stop; returns false when stopped.
inline bool enumerate_embeddings(const SpqrTree& t,
                                 const std::function<bool(const EmbeddingChoice&)>& visit) {
  std::vector<int> p_nodes = t.nodes_of_type(NodeType::P);
  std::vector<int> r_nodes = t.nodes_of_type(NodeType::R);
  bool fix_first_r = !r_nodes.empty();
  bool restrict_first_p = r_nodes.empty() && !p_nodes.empty();

  EmbeddingChoice choice;
  std::function<bool(size_t)> rec_r = [&](size_t ri) -> bool {
    if (ri == r_nodes.size()) return visit(choice);
    for (int bit = 0; bit <= (ri == 0 && fix_first_r ? 0 : 1); ++bit) {
      choice.r_flip[r_nodes[ri]] = bit == 1;
      if (!rec_r(ri + 1)) return false;
    }
    return true;
  };
  std::function<bool(size_t)> rec_p = [&](size_t pi) -> bool {
    if (pi == p_nodes.size()) return rec_r(0);
    int id = p_nodes[pi];
    int k = static_cast<int>(t.nodes[id].edges.size());
    std::vector<int> perm;
    for (int s = 1; s < k; ++s) perm.push_back(s);
    do {
      if (pi == 0 && restrict_first_p && perm.front() > perm.back()) continue;
      choice.p_perm[id] = perm;
      if (!rec_p(pi + 1)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  };
  return rec_p(0);
}

struct ExactMinMax {
  int value = 0;                     // smallest achievable largest face
  EmbeddingChoice choice;            // first embedding achieving it
  RotationSystem rotation;
  FaceReport report;
  unsigned long long embeddings = 0;  // embeddings inspected
};

// Smallest achievable largest face size by exhaustive search. Throws
// SizeGuardExceeded when there are more than `limit` embeddings.
inline ExactMinMax exact_min_max_face(const Multigraph& g, unsigned long long limit = 1000000) {
  if (!is_biconnected(g)) fail(ErrorCode::NotBiconnected, "need a biconnected input");
  ExactMinMax best;
  if (g.m() == 1) {
    best.value = 2;
    best.rotation = default_rotation(g);
    best.report = planar_faces(g, best.rotation);
    best.embeddings = 1;
    return best;
  }
  SpqrTree t = build_spqr(g);
  unsigned long long count = embedding_count_capped(t, limit + 1);
  if (count > limit)
    fail(ErrorCode::SizeGuardExceeded,
         "embedding count exceeds the limit of " + std::to_string(limit));
  best.value = -1;
  enumerate_embeddings(t, [&](const EmbeddingChoice& choice) {
    RotationSystem rs = compose_embedding(t, choice);
    FaceReport rep = planar_faces(t.g, rs);
    ++best.embeddings;
    int mx = rep.max_size();
    if (best.value < 0 || mx < best.value) {
      best.value = mx;
      best.choice = choice;
      best.rotation = std::move(rs);
      best.report = std::move(rep);
    }
    return true;
  });
  return best;
}

// First embedding (in enumeration order) whose faces all have size k.
inline std::optional<RotationSystem> exact_uniform(const Multigraph& g, int k,
                                                             unsigned long long limit = 1000000) {
  if (!is_biconnected(g)) fail(ErrorCode::NotBiconnected, "need a biconnected input");
  if (k < 2) fail(ErrorCode::InvalidParams, "face size must be at least 2");
  if (g.m() == 1) {
    if (k != 2) return std::nullopt;
    return default_rotation(g);
  }
  SpqrTree t = build_spqr(g);
  unsigned long long count = embedding_count_capped(t, limit + 1);
  if (count > limit)
    fail(ErrorCode::SizeGuardExceeded,
         "embedding count exceeds the limit of " + std::to_string(limit));
  std::optional<RotationSystem> found;
  enumerate_embeddings(t, [&](const EmbeddingChoice& choice) {
    RotationSystem rs = compose_embedding(t, choice);
    FaceReport rep = planar_faces(t.g, rs);
    for (const auto& f : rep.faces)
      if (static_cast<int>(f.size()) != k) return true;
    found = std::move(rs);
    return false;
  });
  return found;
}

}  // namespace faceopt
