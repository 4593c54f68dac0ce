#pragma once
// 6-approximation for minimizing the largest face over all embeddings of a
// biconnected planar multigraph.
//
// The builder walks the decomposition tree bottom-up and gives every node
// that is not a cycle node a "neat" embedding: its two boundary walks are
// simultaneously as short as possible (out-minimal), and every interior face
// stays within six times the optimum. Cycle nodes have no choices of their
// own; their children are oriented by the surrounding node, which treats
// each chain element as a separate edge of an expanded skeleton.
//
//   - bond nodes place the two children with the smallest short sides at
//     the ends of the bundle, short side out; the middle children keep
//     their stored orientation;
//   - rigid nodes pin every child that touches one of the two faces at the
//     parent edge short-side-out, and orient the remaining children by an
//     exact linear program: each free child spreads its two side lengths
//     fractionally over its two faces, the largest fractional face total is
//     minimized, and rounding sends the short side to the face that got the
//     smaller fractional share (ties to the smaller face index). Rounded
//     interior face totals never exceed twice the fractional optimum;
//   - the reference edge closes the outermost walks directly.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "faceopt/compose.hpp"
#include "faceopt/simplex.hpp"
#include "faceopt/spqr.hpp"

namespace faceopt {

// Diagnostics for the linear program of one rigid node.
struct RNodeLpReport {
  int node = -1;
  Rational lp_value;              // optimal fractional bound on interior totals
  std::vector<int> inner_faces;   // skeleton face indices covered below
  std::vector<int> face_base;     // fixed contributions per interior face
  struct FreeUnit {
    int face_a = -1, face_b = -1;  // positions in inner_faces
    int a = 1, b = 1;              // sorted side lengths
    bool short_to_a = false;       // rounding outcome
  };
  std::vector<FreeUnit> free_units;
  std::vector<int> shallow_sizes;  // rounded totals per interior face
  int max_shallow = 0;
};

struct ApproxResult {
  int value = 0;
  RotationSystem rotation;
  FaceReport report;
  std::vector<RNodeLpReport> r_reports;
  std::map<int, std::pair<int, int>> neat_sides;  // per non-cycle node, sorted
};

namespace detail_approx {

struct NeatPlan {
  int left = 1, right = 1;  // ordered relative to the node's parent dart
};

class NeatBuilder {
 public:
  explicit NeatBuilder(const SpqrTree& t) : t_(t) {}

  // Builds fragments for the whole tree and returns the composed choice.
  void run() {
    const SpqrNode& root = t_.nodes[t_.root];
    int child = -1;
    for (const SkelEdge& se : root.edges)
      if (se.kind == SkelEdge::Kind::Virtual) child = se.child;
    if (t_.nodes[child].type == NodeType::S) {
      // Chain at the top: every element shows its short side into the same
      // walk, so the reference edge closes walks of the two minimal totals.
      for (const Unit& u : slot_units(t_.root, find_virtual_slot())) orient_short_at(u, true);
    } else {
      build(child);
    }
  }

  const EmbeddingChoice& choice() const { return choice_; }
  std::vector<RNodeLpReport>& reports() { return reports_; }
  const std::map<int, std::pair<int, int>>& sides() const { return sides_; }

 private:
  // One independently orientable piece behind a skeleton slot: the child
  // itself, or one element of a cycle child's chain.
  struct Unit {
    int child = -1;     // node whose mirror bit realizes a flip (-1: plain edge)
    int l = 1, r = 1;   // its plan, ordered relative to its own parent dart
    bool chain0 = true;  // unit's dart-0 face feeds the slot's dart-0 face
    int a = 1, b = 1;   // sorted copies of (l, r)
  };

  int find_virtual_slot() const {
    const SpqrNode& root = t_.nodes[t_.root];
    for (size_t i = 0; i < root.edges.size(); ++i)
      if (root.edges[i].kind == SkelEdge::Kind::Virtual) return static_cast<int>(i);
    fail(ErrorCode::Internal, "root without a child");
  }

  // Mirror the unit's subtree so that its short side faces the slot face
  // indicated by `slot_dart0`: true for the face holding dart 0 of the slot.
  void orient_short_at(const Unit& u, bool slot_dart0) {
    if (u.child < 0) return;
    bool at_target = u.chain0 == slot_dart0;
    bool flip = at_target ? u.l > u.r : u.r > u.l;
    if (flip) choice_.subtree_mirror[u.child] = true;
  }

  std::vector<Unit> slot_units(int node_id, int slot) {
    const SkelEdge& se = t_.nodes[node_id].edges[slot];
    if (se.kind == SkelEdge::Kind::Real) return {Unit{}};
    if (t_.nodes[se.child].type != NodeType::S) {
      NeatPlan p = build(se.child);
      Unit u;
      u.child = se.child;
      u.l = p.left;
      u.r = p.right;
      u.a = std::min(p.left, p.right);
      u.b = std::max(p.left, p.right);
      return {u};
    }
    // A chain: one unit per element, each aligned through the cycle node's
    // two skeleton faces. The cycle node itself is never mirrored.
    int s = se.child;
    const SpqrNode& sn = t_.nodes[s];
    FaceReport sf = skeleton_faces(t_, s);
    int face_left = sf.face_of_dart[dart_of(0, 0)];
    std::vector<Unit> out;
    for (size_t i = 1; i < sn.edges.size(); ++i) {
      Unit u;
      bool aligned = sf.face_of_dart[dart_of(static_cast<int>(i), 0)] == face_left;
      if (sn.edges[i].kind == SkelEdge::Kind::Virtual) {
        NeatPlan p = build(sn.edges[i].child);
        u.child = sn.edges[i].child;
        u.l = p.left;
        u.r = p.right;
        u.a = std::min(p.left, p.right);
        u.b = std::max(p.left, p.right);
      }
      u.chain0 = aligned;
      out.push_back(u);
    }
    return out;
  }

  NeatPlan build(int id) {
    const SpqrNode& node = t_.nodes[id];
    NeatPlan plan;
    switch (node.type) {
      case NodeType::Q:
        plan = NeatPlan{1, 1};
        break;
      case NodeType::P:
        plan = build_bond(id);
        break;
      case NodeType::R:
        plan = build_rigid(id);
        break;
      case NodeType::S:
        fail(ErrorCode::Internal, "cycle nodes are embedded by their parents");
    }
    auto [a, b] = std::minmax(plan.left, plan.right);
    sides_[id] = {a, b};
    return plan;
  }

  NeatPlan build_bond(int id) {
    const SpqrNode& node = t_.nodes[id];
    int nslots = static_cast<int>(node.edges.size());
    std::vector<std::vector<Unit>> units(nslots);
    std::vector<int> ell(nslots, 0);
    for (int i = 1; i < nslots; ++i) {
      units[i] = slot_units(id, i);
      for (const Unit& u : units[i]) ell[i] += u.a;
    }
    int alpha = 1;
    for (int i = 2; i < nslots; ++i)
      if (ell[i] < ell[alpha]) alpha = i;
    int beta = alpha == 1 ? 2 : 1;
    for (int i = 1; i < nslots; ++i)
      if (i != alpha && ell[i] < ell[beta]) beta = i;
    std::vector<int> perm;
    perm.push_back(alpha);
    for (int i = 1; i < nslots; ++i)
      if (i != alpha && i != beta) perm.push_back(i);
    perm.push_back(beta);
    choice_.p_perm[id] = perm;
    // First element's outward face holds its slot's dart 0; the last one's
    // outward face holds dart 1. Middles keep their stored orientation.
    for (const Unit& u : units[alpha]) orient_short_at(u, true);
    for (const Unit& u : units[beta]) orient_short_at(u, false);
    // The parent dart's own face closes behind the last element.
    return NeatPlan{ell[beta], ell[alpha]};
  }

  NeatPlan build_rigid(int id) {
    const SpqrNode& node = t_.nodes[id];
    FaceReport sf = skeleton_faces(t_, id);
    int nf = static_cast<int>(sf.faces.size());
    int f1 = sf.face_of_dart[dart_of(0, 0)];
    int f2 = sf.face_of_dart[dart_of(0, 1)];
    RNodeLpReport report;
    report.node = id;
    std::vector<int> inner_pos(nf, -1);
    for (int f = 0; f < nf; ++f)
      if (f != f1 && f != f2) {
        inner_pos[f] = static_cast<int>(report.inner_faces.size());
        report.inner_faces.push_back(f);
      }
    report.face_base.assign(report.inner_faces.size(), 0);
    struct Free {
      Unit unit;
      int slot;
      int face_a, face_b;  // absolute skeleton faces at dart 0 / dart 1
    };
    std::vector<Free> free_units;
    int side1 = 0, side2 = 0;
    for (size_t i = 1; i < node.edges.size(); ++i) {
      int slot = static_cast<int>(i);
      int fa = sf.face_of_dart[dart_of(slot, 0)];
      int fb = sf.face_of_dart[dart_of(slot, 1)];
      if ((fa == f1 || fa == f2) && (fb == f1 || fb == f2))
        fail(ErrorCode::Internal, "skeleton edge borders both faces at the parent edge");
      for (const Unit& u : slot_units(id, slot)) {
        if (fa == f1 || fa == f2) {
          orient_short_at(u, true);
          (fa == f1 ? side1 : side2) += u.a;
          report.face_base[inner_pos[fb]] += u.b;
        } else if (fb == f1 || fb == f2) {
          orient_short_at(u, false);
          (fb == f1 ? side1 : side2) += u.a;
          report.face_base[inner_pos[fa]] += u.b;
        } else if (u.a == u.b) {
          // A symmetric unit loads both its faces the same way up; nothing
          // to decide, so it joins the fixed contributions.
          report.face_base[inner_pos[fa]] += u.a;
          report.face_base[inner_pos[fb]] += u.a;
        } else {
          free_units.push_back({u, slot, fa, fb});
        }
      }
    }
    // Fractional orientation: each free unit splits a+b over its two faces
    // within [a,b]; minimize the largest interior face total.
    LpProblem lp;
    int var_m = lp.add_var(Rational(1));
    std::vector<std::vector<std::pair<int, Rational>>> face_terms(report.inner_faces.size());
    std::vector<std::pair<int, int>> vars(free_units.size());
    for (size_t u = 0; u < free_units.size(); ++u) {
      const Free& fu = free_units[u];
      int xa = lp.add_var();
      int xb = lp.add_var();
      vars[u] = {xa, xb};
      lp.add_row({{xa, Rational(1)}, {xb, Rational(1)}}, LpProblem::Eq,
                 Rational(fu.unit.a + fu.unit.b));
      lp.add_row({{xa, Rational(1)}}, LpProblem::GreaterEq, Rational(fu.unit.a));
      lp.add_row({{xa, Rational(1)}}, LpProblem::LessEq, Rational(fu.unit.b));
      lp.add_row({{xb, Rational(1)}}, LpProblem::GreaterEq, Rational(fu.unit.a));
      lp.add_row({{xb, Rational(1)}}, LpProblem::LessEq, Rational(fu.unit.b));
      face_terms[inner_pos[fu.face_a]].push_back({xa, Rational(1)});
      face_terms[inner_pos[fu.face_b]].push_back({xb, Rational(1)});
    }
    for (size_t f = 0; f < report.inner_faces.size(); ++f) {
      auto terms = face_terms[f];
      terms.push_back({var_m, Rational(-1)});
      lp.add_row(terms, LpProblem::LessEq, Rational(-report.face_base[f]));
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
      fail(ErrorCode::Internal, "orientation relaxation must have an optimum");
    report.lp_value = sol.x[var_m];
    report.shallow_sizes = report.face_base;
    for (size_t u = 0; u < free_units.size(); ++u) {
      const Free& fu = free_units[u];
      const Rational& xa = sol.x[vars[u].first];
      const Rational& xb = sol.x[vars[u].second];
      bool short_to_a = xa < xb || (xa == xb && fu.face_a < fu.face_b);
      orient_short_at(fu.unit, short_to_a);
      report.shallow_sizes[inner_pos[short_to_a ? fu.face_a : fu.face_b]] += fu.unit.a;
      report.shallow_sizes[inner_pos[short_to_a ? fu.face_b : fu.face_a]] += fu.unit.b;
      RNodeLpReport::FreeUnit ru;
      ru.face_a = inner_pos[fu.face_a];
      ru.face_b = inner_pos[fu.face_b];
      ru.a = fu.unit.a;
      ru.b = fu.unit.b;
      ru.short_to_a = short_to_a;
      report.free_units.push_back(ru);
    }
    for (int s : report.shallow_sizes) report.max_shallow = std::max(report.max_shallow, s);
    if (Rational(report.max_shallow) > Rational(2) * report.lp_value)
      fail(ErrorCode::Internal, "rounded interior face exceeds twice the fractional bound");
    choice_.r_flip[id] = false;
    reports_.push_back(std::move(report));
    return NeatPlan{side1, side2};
  }

  const SpqrTree& t_;
  EmbeddingChoice choice_;
  std::vector<RNodeLpReport> reports_;
  std::map<int, std::pair<int, int>> sides_;
};

}  // namespace detail_approx

// Builds an embedding whose largest face is at most six times the optimum.
inline ApproxResult approx_min_max_face(const Multigraph& g) {
  if (!is_biconnected(g)) fail(ErrorCode::NotBiconnected, "need a biconnected input");
  ApproxResult out;
  if (g.m() == 1) {
    out.rotation = default_rotation(g);
    out.report = planar_faces(g, out.rotation);
    out.value = out.report.max_size();
    return out;
  }
  SpqrTree t = build_spqr(g);
  detail_approx::NeatBuilder nb(t);
  nb.run();
  out.rotation = compose_embedding(t, nb.choice());
  out.report = planar_faces(g, out.rotation);
  out.value = out.report.max_size();
  out.r_reports = std::move(nb.reports());
  out.neat_sides = nb.sides();
  return out;
}

}  // namespace faceopt
