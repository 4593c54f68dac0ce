#pragma once
// Exact decision: does a biconnected planar multigraph admit an embedding
// whose faces all have size at most k, for k in {2, 3, 4}?
//
// The decision runs over the decomposition tree. Every subtree hanging off a
// virtual edge embeds in a disk with its two poles on the boundary, and all
// that the rest of the graph can see of it are the lengths of its two
// boundary walks ("sides"). Interior faces must already obey the bound, and
// a side of length s ends up inside a face of size at least s+1, so only
// side pairs with both entries <= k-1 can survive. The solver computes, per
// node, the best achievable side pair together with an embedding choice
// realizing it:
//   - edge nodes are (1,1);
//   - cycle nodes add up one side of every child along each of the two
//     boundary walks (a subset-sum over per-child orientations);
//   - rigid nodes have fixed skeleton faces; each face carries a base load
//     (one per edge, plus the slack of symmetric children) and the children
//     with sides (a,a+1) place their extra unit into an incident face with
//     spare room - a bipartite matching;
//   - bond nodes arrange children in a row so that adjacent sides sum to at
//     most k (a sequencing search over side pairs), and the row ends are the
//     node's own sides.
// Side pairs are kept ordered relative to the parent edge; flipping a child
// is recorded as a subtree mirror in the embedding choice.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "faceopt/compose.hpp"
#include "faceopt/matching.hpp"
#include "faceopt/spqr.hpp"

namespace faceopt {

struct Decision {
  bool yes = false;
  RotationSystem rotation;  // witness embedding when yes
  FaceReport report;
};

namespace detail_minmax {

// Arranging the children of a bond node in a row: each token is a (sorted)
// side pair shown in either orientation, adjacent shown sides must sum to at
// most `cap`, and the outward-facing first/last sides become the node's own
// sides. Exact search over token counts with memoization.
class BondSequencer {
 public:
  struct Entry {
    int kind;  // index into kinds()
    int left, right;
  };

  BondSequencer(std::vector<std::pair<int, int>> tokens, int cap) : cap_(cap) {
    std::sort(tokens.begin(), tokens.end());
    for (const auto& tk : tokens) {
      if (kinds_.empty() || kinds_.back() != tk) {
        kinds_.push_back(tk);
        counts_.push_back(0);
      }
      ++counts_.back();
    }
  }

  const std::vector<std::pair<int, int>>& kinds() const { return kinds_; }

  // All achievable (first shown-left, last shown-right) pairs.
  std::set<std::pair<int, int>> end_pairs() {
    std::set<std::pair<int, int>> out;
    std::vector<int> rem = counts_;
    for (size_t i = 0; i < kinds_.size(); ++i) {
      for (auto [x, y] : orientations(kinds_[i])) {
        --rem[i];
        int mask = rec(rem, y);
        ++rem[i];
        for (int v = 1; v <= cap_; ++v)
          if (mask >> v & 1) out.insert({x, v});
      }
    }
    return out;
  }

  // A concrete row realizing the given end pair, if achievable.
  std::optional<std::vector<Entry>> realize(std::pair<int, int> ends) {
    std::vector<Entry> row;
    std::vector<int> rem = counts_;
    int prev = -1;  // -1: nothing placed yet
    size_t total = 0;
    for (int c : counts_) total += c;
    for (size_t step = 0; step < total; ++step) {
      bool placed = false;
      for (size_t i = 0; i < kinds_.size() && !placed; ++i) {
        if (rem[i] == 0) continue;
        for (auto [x, y] : orientations(kinds_[i])) {
          if (prev < 0 && x != ends.first) continue;
          if (prev >= 0 && prev + x > cap_) continue;
          --rem[i];
          bool ok = (rec(rem, y) >> ends.second) & 1;
          if (!ok) {
            ++rem[i];
            continue;
          }
          row.push_back({static_cast<int>(i), x, y});
          prev = y;
          placed = true;
          break;
        }
      }
      if (!placed) return std::nullopt;
    }
    return row;
  }

 private:
  static std::vector<std::pair<int, int>> orientations(std::pair<int, int> t) {
    if (t.first == t.second) return {t};
    return {t, {t.second, t.first}};
  }

  // Bitmask of achievable final shown-right values when the already placed
  // prefix ends by showing `last`.
  int rec(std::vector<int>& rem, int last) {
    bool done = true;
    for (int c : rem)
      if (c) done = false;
    if (done) return 1 << last;
    key_ = rem;
    key_.push_back(last);
    auto it = memo_.find(key_);
    if (it != memo_.end()) return it->second;
    if (memo_.size() > 4000000)
      fail(ErrorCode::TooLarge, "parallel-class arrangement search is too large");
    int mask = 0;
    for (size_t i = 0; i < kinds_.size(); ++i) {
      if (rem[i] == 0) continue;
      for (auto [x, y] : orientations(kinds_[i])) {
        if (last + x > cap_) continue;
        --rem[i];
        mask |= rec(rem, y);
        ++rem[i];
      }
    }
    key_ = rem;
    key_.push_back(last);
    memo_.emplace(key_, mask);
    return mask;
  }

  int cap_;
  std::vector<std::pair<int, int>> kinds_;
  std::vector<int> counts_;
  std::vector<int> key_;
  std::map<std::vector<int>, int> memo_;
};

// Side pair a node can achieve, ordered relative to its parent edge: `left`
// is the side lying in the skeleton face that contains dart 0 of the parent
// slot. `usable` marks a pair fit for use under any parent (both sides small
// and not the bond-only (1,3) shape); `any` marks that some embedding of the
// subtree exists at all, which suffices at the root.
struct Plan {
  int left = 1, right = 1;
  bool usable = false;
  bool any = false;
};

class Solver {
 public:
  Solver(const SpqrTree& t, int k) : t_(t), k_(k), plans_(t.nodes.size()) {}

  bool run() {
    const SpqrNode& root = t_.nodes[t_.root];
    int child = -1;
    for (const SkelEdge& se : root.edges)
      if (se.kind == SkelEdge::Kind::Virtual) child = se.child;
    Plan p = solve(child);
    if (p.usable) return true;
    if (!p.any) return false;
    // The child is a bond node whose only achievable pairs are root-only
    // shapes; re-plan it for the best of those.
    replan_bond_for_root(child);
    return true;
  }

  const EmbeddingChoice& choice() const { return choice_; }

 private:
  static constexpr Plan infeasible() { return Plan{0, 0, false, false}; }

  Plan child_plan(const SkelEdge& se) {
    if (se.kind == SkelEdge::Kind::Real) return Plan{1, 1, true, true};
    return solve(se.child);
  }

  bool chain_pair(std::pair<int, int> p) const {
    auto [a, b] = std::minmax(p.first, p.second);
    return !(a == 1 && b == 3);  // the (1,3) shape overflows under any parent
  }

  Plan solve(int id) {
    const SpqrNode& node = t_.nodes[id];
    switch (node.type) {
      case NodeType::Q:
        return plans_[id] = Plan{1, 1, true, true};
      case NodeType::S:
        return plans_[id] = solve_cycle(id);
      case NodeType::P:
        return plans_[id] = solve_bond(id);
      case NodeType::R:
        return plans_[id] = solve_rigid(id);
    }
    fail(ErrorCode::Internal, "unknown node type");
  }

  Plan solve_cycle(int id) {
    const SpqrNode& node = t_.nodes[id];
    FaceReport sf = skeleton_faces(t_, id);
    int face_left = sf.face_of_dart[dart_of(0, 0)];
    struct Kid {
      int c0, c1;  // contribution to the left walk without / with a flip
      int child;   // node id for virtual children, -1 for real edges
    };
    std::vector<Kid> kids;
    int total = 0;
    for (size_t i = 1; i < node.edges.size(); ++i) {
      Plan cp = child_plan(node.edges[i]);
      if (!cp.usable) return infeasible();
      bool aligned = sf.face_of_dart[dart_of(static_cast<int>(i), 0)] == face_left;
      Kid kd;
      kd.c0 = aligned ? cp.left : cp.right;
      kd.c1 = aligned ? cp.right : cp.left;
      kd.child = node.edges[i].kind == SkelEdge::Kind::Virtual ? node.edges[i].child : -1;
      kids.push_back(kd);
      total += cp.left + cp.right;
    }
    if (total > 2 * (k_ - 1)) return infeasible();
    // Suffix-achievable left-walk sums, for feasibility and reconstruction.
    std::vector<std::uint32_t> suffix(kids.size() + 1);
    suffix[kids.size()] = 1;
    for (size_t i = kids.size(); i-- > 0;) {
      std::uint32_t s = suffix[i + 1];
      suffix[i] = (s << kids[i].c0) | (s << kids[i].c1);
    }
    int best = -1;
    for (int L = 1; L <= k_ - 1; ++L)
      if (total - L <= k_ - 1 && (suffix[0] >> L & 1)) {
        best = L;
        break;
      }
    if (best < 0) return infeasible();
    int need = best;
    for (size_t i = 0; i < kids.size(); ++i) {
      bool flip;
      if (need - kids[i].c0 >= 0 && (suffix[i + 1] >> (need - kids[i].c0) & 1))
        flip = false;
      else
        flip = true;
      need -= flip ? kids[i].c1 : kids[i].c0;
      if (kids[i].child >= 0 && flip) choice_.subtree_mirror[kids[i].child] = true;
    }
    // Splicing hands a child's dart-1 face walk to the parent face holding
    // dart 0 of its slot, so the walk collected against the own dart-0 face
    // surfaces as the right entry of the ordered pair.
    return Plan{total - best, best, true, true};
  }

  Plan solve_rigid(int id) {
    const SpqrNode& node = t_.nodes[id];
    FaceReport sf = skeleton_faces(t_, id);
    int nf = static_cast<int>(sf.faces.size());
    int face_left = sf.face_of_dart[dart_of(0, 0)];
    int face_right = sf.face_of_dart[dart_of(0, 1)];
    std::vector<Plan> kid(node.edges.size());
    std::vector<int> asym;
    for (size_t i = 1; i < node.edges.size(); ++i) {
      kid[i] = child_plan(node.edges[i]);
      if (!kid[i].usable) return infeasible();
      int d = std::abs(kid[i].left - kid[i].right);
      if (d >= 2) return infeasible();  // a side gap of 2 never fits next to 3+ edges
      if (d == 1) asym.push_back(static_cast<int>(i));
    }
    std::vector<int> base(nf, 0);
    for (int f = 0; f < nf; ++f)
      for (int d : sf.faces[f]) {
        int slot = dart_edge(d);
        base[f] += slot == 0 ? 1 : std::min(kid[slot].left, kid[slot].right);
      }
    for (int f = 0; f < nf; ++f)
      if (base[f] > k_) return infeasible();
    // Boundary allowances: how many asymmetric extras each pole face may
    // absorb, tried from the smallest resulting side pair upwards.
    struct Cand {
      int c1, c2;
    };
    std::vector<Cand> cands;
    for (int c1 = 0; c1 <= (k_ - base[face_left] >= 1 ? 1 : 0); ++c1)
      for (int c2 = 0; c2 <= (k_ - base[face_right] >= 1 ? 1 : 0); ++c2)
        cands.push_back({c1, c2});
    std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
      int am = std::max(base[face_left] + a.c1, base[face_right] + a.c2);
      int bm = std::max(base[face_left] + b.c1, base[face_right] + b.c2);
      if (am != bm) return am < bm;
      return a.c1 + a.c2 < b.c1 + b.c2;
    });
    for (const Cand& cand : cands) {
      std::vector<int> cap(nf);
      for (int f = 0; f < nf; ++f) cap[f] = std::min(1, k_ - base[f]);
      cap[face_left] = cand.c1;
      cap[face_right] = cand.c2;
      std::vector<std::vector<int>> adj(asym.size());
      for (size_t a = 0; a < asym.size(); ++a)
        for (int dir = 0; dir < 2; ++dir) {
          int f = sf.face_of_dart[dart_of(asym[a], dir)];
          if (cap[f] == 1) adj[a].push_back(f);
        }
      std::vector<int> match = max_bipartite_matching(static_cast<int>(asym.size()), nf, adj);
      if (matching_size(match) != static_cast<int>(asym.size())) continue;
      int extra_left = 0, extra_right = 0;
      for (size_t a = 0; a < asym.size(); ++a) {
        int slot = asym[a], f = match[a];
        if (f == face_left) ++extra_left;
        if (f == face_right) ++extra_right;
        // Put the child's larger side into the matched face. Unmirrored,
        // the child surfaces its dart-1 walk (the right entry) in the face
        // at dart 0 of its slot.
        const Plan& cp = kid[slot];
        bool at_dart0 = sf.face_of_dart[dart_of(slot, 0)] == f;
        bool flip = at_dart0 ? cp.right < cp.left : cp.left < cp.right;
        if (flip) choice_.subtree_mirror[node.edges[slot].child] = true;
      }
      choice_.r_flip[id] = false;
      return Plan{base[face_left] - 1 + extra_left, base[face_right] - 1 + extra_right, true,
                  true};
    }
    return infeasible();
  }

  struct BondKids {
    std::vector<std::pair<int, int>> tokens;           // sorted side pairs
    std::map<std::pair<int, int>, std::vector<int>> slots;  // by token, ascending
  };

  std::optional<BondKids> bond_kids(int id) {
    const SpqrNode& node = t_.nodes[id];
    BondKids bk;
    for (size_t i = 1; i < node.edges.size(); ++i) {
      Plan cp = child_plan(node.edges[i]);
      if (!cp.usable) return std::nullopt;
      auto [a, b] = std::minmax(cp.left, cp.right);
      bk.tokens.push_back({a, b});
      bk.slots[{a, b}].push_back(static_cast<int>(i));
    }
    return bk;
  }

  // Turn a sequencer row into this bond node's permutation and child flips.
  void write_bond_row(int id, const BondSequencer& seq, const std::vector<BondSequencer::Entry>& row,
                      BondKids& bk) {
    const SpqrNode& node = t_.nodes[id];
    std::map<std::pair<int, int>, size_t> next;
    std::vector<int> perm;
    for (const auto& entry : row) {
      const std::pair<int, int>& kind = seq.kinds()[entry.kind];
      int slot = bk.slots[kind][next[kind]++];
      perm.push_back(slot);
      const SkelEdge& se = node.edges[slot];
      Plan cp = se.kind == SkelEdge::Kind::Real ? Plan{1, 1, true, true} : plans_[se.child];
      // The row's shown-left side faces the skeleton face holding dart 0 of
      // this slot, and an unmirrored child surfaces its dart-1 walk there —
      // the right entry of its ordered pair. Mirror when that does not match.
      bool flip = cp.right != entry.left;
      if (flip && se.kind == SkelEdge::Kind::Virtual) choice_.subtree_mirror[se.child] = true;
    }
    choice_.p_perm[id] = std::move(perm);
  }

  Plan solve_bond(int id) {
    auto bk = bond_kids(id);
    if (!bk) return infeasible();
    BondSequencer seq(bk->tokens, k_);
    std::set<std::pair<int, int>> pairs = seq.end_pairs();
    if (pairs.empty()) return infeasible();
    std::optional<std::pair<int, int>> best;
    for (const auto& p : pairs) {
      if (!chain_pair(p)) continue;
      if (!best || std::make_tuple(p.first + p.second, std::max(p.first, p.second), p.first) <
                       std::make_tuple(best->first + best->second,
                                       std::max(best->first, best->second), best->first))
        best = p;
    }
    if (!best) return Plan{0, 0, false, true};  // root-only shapes exist
    auto row = seq.realize(*best);
    write_bond_row(id, seq, *row, *bk);
    // The face holding dart 0 of the parent slot sits behind the row's last
    // element, so the node's ordered sides swap the end pair.
    return Plan{best->second, best->first, true, true};
  }

  void replan_bond_for_root(int id) {
    auto bk = bond_kids(id);
    BondSequencer seq(bk->tokens, k_);
    std::set<std::pair<int, int>> pairs = seq.end_pairs();
    std::optional<std::pair<int, int>> best;
    for (const auto& p : pairs)
      if (!best || std::make_tuple(p.first + p.second, std::max(p.first, p.second), p.first) <
                       std::make_tuple(best->first + best->second,
                                       std::max(best->first, best->second), best->first))
        best = p;
    auto row = seq.realize(*best);
    write_bond_row(id, seq, *row, *bk);
  }

  const SpqrTree& t_;
  int k_;
  std::vector<Plan> plans_;
  EmbeddingChoice choice_;
};

}  // namespace detail_minmax

// Decides whether g embeds with every face of size at most k (2 <= k <= 4)
// and returns a witness embedding when it does.
inline Decision decide_min_max_face(const Multigraph& g, int k) {
  if (k < 2 || k > 4) fail(ErrorCode::InvalidParams, "exact decision supports bounds 2 to 4");
  if (!is_biconnected(g)) fail(ErrorCode::NotBiconnected, "need a biconnected input");
  Decision d;
  if (g.m() == 1) {
    d.yes = true;
    d.rotation = default_rotation(g);
    d.report = planar_faces(g, d.rotation);
    return d;
  }
  if (k == 2) {
    // All faces of size 2 forces exactly two vertices (a bundle of parallel
    // edges, nested); witness: ascending order at one pole, descending at
    // the other.
    if (g.n() != 2) return d;
    RotationSystem rs;
    rs.order.resize(2);
    for (size_t e = 0; e < g.m(); ++e)
      rs.order[g.ends[e].first].push_back(dart_of(static_cast<int>(e), 0));
    for (size_t e = g.m(); e-- > 0;)
      rs.order[g.ends[e].second].push_back(dart_of(static_cast<int>(e), 1));
    d.yes = true;
    d.rotation = std::move(rs);
    d.report = planar_faces(g, d.rotation);
    if (d.report.max_size() > 2) fail(ErrorCode::Internal, "bundle witness is wrong");
    return d;
  }
  SpqrTree t = build_spqr(g);
  detail_minmax::Solver solver(t, k);
  if (!solver.run()) return d;
  d.rotation = compose_embedding(t, solver.choice());
  d.report = planar_faces(g, d.rotation);
  if (d.report.max_size() > k)
    fail(ErrorCode::Internal, "constructed witness violates the face bound");
  d.yes = true;
  return d;
}

}  // namespace faceopt
