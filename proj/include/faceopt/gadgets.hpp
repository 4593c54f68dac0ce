// Instance generators: two-pole path bundles, subdivided wheels, the
// max-face-5 hardness construction from CNF formulas, a seeded random
// biconnected planar synthesizer, and a brute-force SAT oracle used to
// cross-check the hardness pipeline.
#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "faceopt/core.hpp"
#include "faceopt/rotation.hpp"

namespace faceopt {

// Role tags for generated edges. "VariableEdge" covers everything owned by a
// variable gadget except its literal bundles (the two parallel paths of the
// variable bundle plus the plain cycle edges), "LiteralEdge" the literal
// bundles, "ClauseCycle" the plain connector edges of size-2 clause cycles,
// and "Filler" the rigidifying triangulation edges.
enum class EdgeRole { Plain, VariableEdge, LiteralEdge, ClauseCycle, Filler };

struct GadgetGraph {
  Multigraph graph;
  std::vector<EdgeRole> roles;  // parallel to graph edge indices
  int pole_u = -1, pole_v = -1; // designated poles for two-pole gadgets
};

// ---------------------------------------------------------------------------
// (1,d)-edge: a single edge in parallel with a path of length d between the
// poles. The whole gadget is a cycle of length d+1, so both faces of its
// unique embedding have size d+1.
inline GadgetGraph gen_parallel_edge(int d) {
  if (d != 2 && d != 3)
    fail(ErrorCode::InvalidParams, "parallel-path gadget needs path length 2 or 3");
  std::vector<std::pair<int, int>> ends;
  ends.push_back({0, 1});
  int prev = 0;
  for (int i = 1; i < d; ++i) {
    ends.push_back({prev, i + 1});
    prev = i + 1;
  }
  ends.push_back({prev, 1});
  GadgetGraph gg;
  gg.graph = make_graph(d + 1, ends);
  gg.roles.assign(gg.graph.m(), EdgeRole::Plain);
  gg.pole_u = 0;
  gg.pole_v = 1;
  return gg;
}

// ---------------------------------------------------------------------------
// Wheel gadget behaving like a (1, d-1)-edge whose inner faces all have size
// k: a hub joined to a d-cycle by spokes subdivided into paths of (k-1)/2
// edges. Poles are the adjacent outer vertices 0 and 1, so the two outer
// boundary paths between the poles have lengths 1 and d-1. Each inner face
// consists of two spokes plus one outer edge: 2*(k-1)/2 + 1 = k. Only odd k
// admits this balance.
inline GadgetGraph gen_wheel_edge(int d, int k) {
  if (d < 3 || d > 5)
    fail(ErrorCode::InvalidParams, "wheel gadget needs 3 to 5 outer vertices");
  if (k % 2 == 0)
    fail(ErrorCode::InvalidParity, "inner faces of two spokes plus an outer edge have odd size");
  if (k < 3) fail(ErrorCode::InvalidParams, "inner face size must be at least 3");
  const int spoke = (k - 1) / 2;
  std::vector<std::pair<int, int>> ends;
  for (int i = 0; i < d; ++i) ends.push_back({i, (i + 1) % d});
  int hub = d;
  int next = d + 1;
  for (int i = 0; i < d; ++i) {
    int prev = hub;
    for (int s = 1; s < spoke; ++s) {
      ends.push_back({prev, next});
      prev = next++;
    }
    ends.push_back({prev, i});
  }
  GadgetGraph gg;
  gg.graph = make_graph(next, ends);
  gg.roles.assign(gg.graph.m(), EdgeRole::Plain);
  gg.pole_u = 0;
  gg.pole_v = 1;
  return gg;
}

// ---------------------------------------------------------------------------
// CNF formulas: clauses hold DIMACS-style literals (+v / -v, 1-based).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  bool positive_only = false;
};

enum class SatMode { ThreeSat, OneInThree };

// Exhaustive satisfiability check. ThreeSat asks for at least one true
// literal per clause, OneInThree for exactly one.
inline bool sat_oracle(const CnfFormula& phi, SatMode mode) {
  if (phi.num_vars < 0 || phi.num_vars > 20)
    fail(ErrorCode::TooLarge, "exhaustive SAT handles at most 20 variables");
  for (const auto& cl : phi.clauses)
    for (int lit : cl) {
      if (lit == 0 || std::abs(lit) > phi.num_vars)
        fail(ErrorCode::InvalidInput, "literal out of range");
      if (phi.positive_only && lit < 0)
        fail(ErrorCode::InvalidInput, "negative literal in a positive-only formula");
    }
  const unsigned long long total = 1ull << phi.num_vars;
  for (unsigned long long mask = 0; mask < total; ++mask) {
    bool ok = true;
    for (const auto& cl : phi.clauses) {
      int true_lits = 0;
      for (int lit : cl) {
        bool val = (mask >> (std::abs(lit) - 1)) & 1ull;
        if (lit < 0) val = !val;
        if (val) ++true_lits;
      }
      if (mode == SatMode::ThreeSat ? true_lits < 1 : true_lits != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Hardness construction: a biconnected planar multigraph that admits an
// embedding with every face of size at most 5 exactly when the formula is
// satisfiable.
//
//   * variable gadget: two triangles sharing a (1,3) variable bundle. The
//     positive triangle consists of the bundle plus two slots (b->apex+ and
//     apex+->a), the negative triangle mirrors it below. A slot carries a
//     (1,2) literal bundle when the variable occurs there, otherwise a plain
//     edge. With the inner face sizes 1+3=4 worth of variable contribution
//     split as 1/3, each inner face holds contributions summing to at most 5
//     exactly when the side facing the long variable path has all its
//     literal bundles turned short side in (the "false" side transmits).
//   * clause gadget: the literal bundles of a clause are chained into a
//     cycle, corners merged for size-3 clauses and joined by two plain
//     connector edges for size-2 clauses. The clause face sees 1 from a true
//     literal and 2 from a false one, so it stays at most 5 exactly when not
//     all literals are false.
//   * every face that is not an inner gadget face is rigidified by a hub
//     vertex joined to each boundary corner (faces of size <= 3 are already
//     rigid). A hub keeps the rest of the graph connected at every bundle
//     pole pair, so the only embedding freedom left is the intended bundle
//     flips.
//
// The planar layout (slot assignment and cyclic orders) is found by
// exhaustive search over embeddings of the variable-clause incidence graph;
// formulas beyond desk scale are rejected.
namespace detail {

struct Mm5Bundle {
  int u = -1, w = -1;    // endpoints in boundary-clockwise order
  int p1 = -1;           // the short (single-edge) path
  std::vector<int> p2;   // the long path, edges ordered u -> w
};

struct Mm5Slot {
  bool is_bundle = false;
  Mm5Bundle bnd;
  int plain = -1;
  int cw_from = -1, cw_to = -1;
  int occ = -1;  // occurrence index for literal slots
};

struct Mm5Var {
  int b = -1, a = -1, apex_p = -1, apex_n = -1;
  Mm5Bundle var;
  // Boundary-clockwise slots: 0 = b->apex+, 1 = apex+->a (positive side),
  // 2 = a->apex-, 3 = apex- -> b (negative side).
  std::array<Mm5Slot, 4> slot;
};

struct Mm5Occurrence {
  int var = -1;
  bool positive = false;
  int clause = -1;
};

// Growing multigraph whose vertices can be merged (clause corners identify
// vertices of different variable gadgets).
struct Mm5Builder {
  std::vector<std::pair<int, int>> ends;
  std::vector<EdgeRole> roles;
  std::vector<int> parent;

  int add_vertex() {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
  int add_edge(int u, int v, EdgeRole role) {
    ends.emplace_back(u, v);
    roles.push_back(role);
    return static_cast<int>(ends.size()) - 1;
  }
  int dart_tail(int d) {
    const auto& e = ends[d >> 1];
    return find((d & 1) ? e.second : e.first);
  }
  int dart_head(int d) {
    const auto& e = ends[d >> 1];
    return find((d & 1) ? e.first : e.second);
  }
};

inline Mm5Bundle mm5_bundle(Mm5Builder& bld, int u, int w, int len, EdgeRole role) {
  Mm5Bundle b;
  b.u = u;
  b.w = w;
  b.p1 = bld.add_edge(u, w, role);
  int prev = u;
  for (int i = 1; i < len; ++i) {
    int nv = bld.add_vertex();
    b.p2.push_back(bld.add_edge(prev, nv, role));
    prev = nv;
  }
  b.p2.push_back(bld.add_edge(prev, w, role));
  return b;
}

// One layout candidate: an incidence rotation plus a slot assignment per
// variable. Returns the finished instance or nullopt when the candidate is
// not realizable as a planar gadget layout.
inline std::optional<GadgetGraph> mm5_attempt(
    const CnfFormula& phi, const std::vector<Mm5Occurrence>& occs,
    const Multigraph& inc, const RotationSystem& inc_rot,
    const std::vector<std::array<int, 4>>& slot_occ) {
  const int V = phi.num_vars;
  Mm5Builder bld;

  // --- variable gadgets ---
  std::vector<Mm5Var> vars(V);
  std::vector<int> occ_slot(occs.size(), -1);
  for (int v = 0; v < V; ++v) {
    Mm5Var& g = vars[v];
    g.b = bld.add_vertex();
    g.a = bld.add_vertex();
    g.apex_p = bld.add_vertex();
    g.apex_n = bld.add_vertex();
    g.var = mm5_bundle(bld, g.b, g.a, 3, EdgeRole::VariableEdge);
    const std::array<std::pair<int, int>, 4> span = {
        {{g.b, g.apex_p}, {g.apex_p, g.a}, {g.a, g.apex_n}, {g.apex_n, g.b}}};
    for (int s = 0; s < 4; ++s) {
      Mm5Slot& sl = g.slot[s];
      sl.cw_from = span[s].first;
      sl.cw_to = span[s].second;
      sl.occ = slot_occ[v][s];
      if (sl.occ >= 0) {
        sl.is_bundle = true;
        sl.bnd = mm5_bundle(bld, sl.cw_from, sl.cw_to, 2, EdgeRole::LiteralEdge);
        occ_slot[sl.occ] = s;
      } else {
        sl.plain = bld.add_edge(sl.cw_from, sl.cw_to, EdgeRole::VariableEdge);
      }
    }
  }
  auto occ_bundle = [&](int o) -> const Mm5Bundle& {
    return vars[occs[o].var].slot[occ_slot[o]].bnd;
  };

  // --- clause gadgets ---
  // Chain each clause's literal bundles in reverse incidence-rotation order
  // (the gadget picture and the incidence embedding have opposite
  // handedness). The short paths, walked against their slot direction, must
  // compose head-to-tail around the clause face.
  const int C = static_cast<int>(phi.clauses.size());
  std::vector<std::vector<int>> chain(C);          // occurrence indices
  std::vector<std::vector<int>> connectors(C);     // edge ids (size-2 only)
  for (int j = 0; j < C; ++j) {
    for (int d : inc_rot.order[V + j]) chain[j].push_back(dart_edge(d));
    std::reverse(chain[j].begin(), chain[j].end());
    const int c = static_cast<int>(chain[j].size());
    if (c == 3) {
      for (int i = 0; i < c; ++i) {
        const Mm5Bundle& cur = occ_bundle(chain[j][i]);
        const Mm5Bundle& nxt = occ_bundle(chain[j][(i + 1) % c]);
        bld.unite(cur.u, nxt.w);
      }
    } else {
      for (int i = 0; i < c; ++i) {
        const Mm5Bundle& cur = occ_bundle(chain[j][i]);
        const Mm5Bundle& nxt = occ_bundle(chain[j][(i + 1) % c]);
        connectors[j].push_back(bld.add_edge(cur.u, nxt.w, EdgeRole::ClauseCycle));
      }
    }
  }

  // Merges must not degenerate any edge into a loop.
  for (const auto& e : bld.ends)
    if (bld.find(e.first) == bld.find(e.second)) return std::nullopt;

  // --- face inventory ---
  // Every dart lands in exactly one face; continuity and coverage are
  // checked as we go, and Euler's formula at the end certifies that the
  // candidate describes a planar embedding.
  std::vector<std::vector<int>> face_darts;
  std::vector<char> used(2 * bld.ends.size(), 0);
  bool ok = true;
  auto push_face = [&](std::vector<int> ds) {
    if (!ok) return;
    if (ds.empty()) {
      ok = false;
      return;
    }
    for (size_t i = 0; i < ds.size(); ++i) {
      int d = ds[i];
      if (used[d]) {
        ok = false;
        return;
      }
      used[d] = 1;
      if (bld.dart_head(d) != bld.dart_tail(ds[(i + 1) % ds.size()])) {
        ok = false;
        return;
      }
    }
    face_darts.push_back(std::move(ds));
  };
  auto fwd = [](const std::vector<int>& es) {
    std::vector<int> out;
    for (int e : es) out.push_back(2 * e);
    return out;
  };
  auto rev = [](const std::vector<int>& es) {
    std::vector<int> out;
    for (auto it = es.rbegin(); it != es.rend(); ++it) out.push_back(2 * *it + 1);
    return out;
  };
  auto inner = [&](const Mm5Slot& s) {  // cw_from -> cw_to along the inner side
    if (s.is_bundle) return fwd(s.bnd.p2);
    return std::vector<int>{2 * s.plain};
  };
  auto append = [](std::vector<int>& into, const std::vector<int>& tail) {
    into.insert(into.end(), tail.begin(), tail.end());
  };

  for (int v = 0; v < V; ++v) {
    const Mm5Var& g = vars[v];
    std::vector<int> fplus = inner(g.slot[0]);
    append(fplus, inner(g.slot[1]));
    fplus.push_back(2 * g.var.p1 + 1);
    push_face(std::move(fplus));
    std::vector<int> fminus = fwd(g.var.p2);
    append(fminus, inner(g.slot[2]));
    append(fminus, inner(g.slot[3]));
    push_face(std::move(fminus));
    std::vector<int> lens{2 * g.var.p1};
    append(lens, rev(g.var.p2));
    push_face(std::move(lens));
    for (const Mm5Slot& s : g.slot)
      if (s.is_bundle) {
        std::vector<int> bl{2 * s.bnd.p1};
        append(bl, rev(s.bnd.p2));
        push_face(std::move(bl));
      }
  }
  for (int j = 0; j < C; ++j) {
    std::vector<int> cf;
    const int c = static_cast<int>(chain[j].size());
    for (int i = 0; i < c; ++i) {
      cf.push_back(2 * occ_bundle(chain[j][i]).p1 + 1);
      if (!connectors[j].empty()) cf.push_back(2 * connectors[j][i]);
    }
    push_face(std::move(cf));
  }

  // --- region faces, one per incidence face ---
  // An incidence face walk translates corner by corner: at a variable,
  // follow the plain boundary arc counterclockwise between the two literal
  // slots; at a size-3 clause, step across the merged corner; at a size-2
  // clause, cross the outer side of a connector edge.
  FaceReport inc_faces = faces(inc, inc_rot);
  std::vector<std::vector<int>> regions;
  for (const auto& iface : inc_faces.faces) {
    std::vector<int> region;
    int cur = -1;
    const size_t L = iface.size();
    for (size_t i = 0; ok && i < L; ++i) {
      const int at = dart_head(inc, iface[i]);
      const int occ_in = dart_edge(iface[i]);
      const int occ_out = dart_edge(iface[(i + 1) % L]);
      if (at < V) {
        const Mm5Var& g = vars[at];
        const int s_in = occ_slot[occ_in], s_out = occ_slot[occ_out];
        if (occs[occ_in].var != at || occs[occ_out].var != at) {
          ok = false;
          break;
        }
        int start = bld.find(g.slot[s_in].cw_from);
        if (cur < 0) cur = start;
        if (cur != start) {
          ok = false;
          break;
        }
        for (int s = (s_in + 3) % 4; s != s_out; s = (s + 3) % 4) {
          if (g.slot[s].is_bundle) {
            ok = false;
            break;
          }
          region.push_back(2 * g.slot[s].plain + 1);
        }
        if (!ok) break;
        cur = bld.find(g.slot[s_out].cw_to);
      } else {
        const int j = at - V;
        const Mm5Bundle& bin = occ_bundle(occ_in);
        const Mm5Bundle& bout = occ_bundle(occ_out);
        int here = bld.find(bin.w);
        if (cur < 0) cur = here;
        if (cur != here) {
          ok = false;
          break;
        }
        int want = bld.find(bout.u);
        if (connectors[j].empty()) {
          if (cur != want) {
            ok = false;
            break;
          }
        } else {
          int hit = -1;
          for (int ce : connectors[j])
            for (int d : {2 * ce, 2 * ce + 1})
              if (bld.dart_tail(d) == cur && bld.dart_head(d) == want && !used[d]) hit = d;
          if (hit < 0) {
            ok = false;
            break;
          }
          region.push_back(hit);
          cur = want;
        }
      }
    }
    if (!ok) break;
    if (region.empty()) continue;  // the region pinches to a single corner
    push_face(region);
    if (ok) regions.push_back(face_darts.back());
  }
  if (!ok) return std::nullopt;
  for (char u : used)
    if (!u) return std::nullopt;

  // --- planarity via Euler's formula ---
  int classes = 0;
  for (int v = 0; v < static_cast<int>(bld.parent.size()); ++v)
    if (bld.find(v) == v) ++classes;
  if (classes - static_cast<int>(bld.ends.size()) + static_cast<int>(face_darts.size()) != 2)
    return std::nullopt;

  // --- rigidify every region of size >= 4 with a hub vertex ---
  for (const auto& region : regions) {
    if (region.size() < 4) continue;
    int hub = bld.add_vertex();
    for (int d : region) bld.add_edge(bld.dart_tail(d), hub, EdgeRole::Filler);
  }

  // --- materialize ---
  std::vector<int> dense(bld.parent.size(), -1);
  int n = 0;
  for (int v = 0; v < static_cast<int>(bld.parent.size()); ++v)
    if (bld.find(v) == v) dense[v] = n++;
  std::vector<std::pair<int, int>> ends;
  ends.reserve(bld.ends.size());
  for (const auto& e : bld.ends)
    ends.push_back({dense[bld.find(e.first)], dense[bld.find(e.second)]});
  GadgetGraph gg;
  gg.graph = make_graph(n, ends);
  gg.roles = bld.roles;
  if (!is_biconnected(gg.graph)) return std::nullopt;
  return gg;
}

}  // namespace detail

inline GadgetGraph gen_minmax5_instance(const CnfFormula& phi) {
  const int V = phi.num_vars;
  const int C = static_cast<int>(phi.clauses.size());
  if (V < 1 || C < 1)
    fail(ErrorCode::RegimeViolation, "need at least one variable and one clause");
  if (V > 8 || C > 4)
    fail(ErrorCode::TooLarge, "hardness instances are desk scale: at most 8 variables and 4 clauses");
  std::vector<detail::Mm5Occurrence> occs;
  std::vector<std::vector<int>> pos_occ(V), neg_occ(V);
  for (int j = 0; j < C; ++j) {
    const auto& cl = phi.clauses[j];
    if (cl.size() < 2 || cl.size() > 3)
      fail(ErrorCode::RegimeViolation, "clause sizes must be 2 or 3");
    for (size_t a = 0; a < cl.size(); ++a)
      for (size_t b = a + 1; b < cl.size(); ++b)
        if (std::abs(cl[a]) == std::abs(cl[b]))
          fail(ErrorCode::RegimeViolation,
               "a clause must draw on distinct variables");
    for (int lit : cl) {
      if (lit == 0 || std::abs(lit) > V)
        fail(ErrorCode::InvalidInput, "literal out of range");
      int v = std::abs(lit) - 1;
      (lit > 0 ? pos_occ : neg_occ)[v].push_back(static_cast<int>(occs.size()));
      occs.push_back({v, lit > 0, j});
    }
  }
  for (int v = 0; v < V; ++v) {
    const int dp = static_cast<int>(pos_occ[v].size());
    const int dn = static_cast<int>(neg_occ[v].size());
    if (dp > 2 || dn > 2 || dp + dn < 1 || dp + dn > 3)
      fail(ErrorCode::RegimeViolation,
           "every variable needs at most 2 positive and 2 negative occurrences, 1 to 3 total");
  }

  // Variable-clause incidence graph; its planar embeddings drive the layout.
  std::vector<std::pair<int, int>> inc_ends;
  for (const auto& o : occs) inc_ends.push_back({o.var, V + o.clause});
  Multigraph inc = make_graph(V + C, inc_ends);
  if (!is_connected(inc))
    fail(ErrorCode::RegimeViolation, "the variable-clause incidence graph must be connected");

  // Candidate budget: rotations of the incidence graph times per-variable
  // slot assignments.
  unsigned long long budget = 1;
  auto mul_capped = [&](unsigned long long f) {
    budget = budget > 2000000 ? budget : budget * f;
  };
  for (int v = 0; v < V + C; ++v) {
    unsigned long long f = 1, deg = inc.adj[v].size();
    for (unsigned long long i = 2; i + 1 <= deg; ++i) f *= i;
    mul_capped(f);
  }
  for (int v = 0; v < V; ++v) {
    mul_capped(pos_occ[v].size() == 1 ? 2 : 1);
    mul_capped(neg_occ[v].size() == 1 ? 2 : 1);
    mul_capped(pos_occ[v].size() == 2 ? 2 : 1);
    mul_capped(neg_occ[v].size() == 2 ? 2 : 1);
  }
  if (budget > 2000000)
    fail(ErrorCode::TooLarge, "layout search space beyond desk scale");

  // Per-variable slot assignment options: positive occurrences go to slots
  // 0/1, negative ones to slots 2/3, in every order.
  std::vector<std::vector<std::array<int, 4>>> var_options(V);
  for (int v = 0; v < V; ++v) {
    std::vector<std::array<int, 2>> pos_ways, neg_ways;
    const auto& P = pos_occ[v];
    const auto& N = neg_occ[v];
    if (P.empty()) pos_ways.push_back({-1, -1});
    if (P.size() == 1) {
      pos_ways.push_back({P[0], -1});
      pos_ways.push_back({-1, P[0]});
    }
    if (P.size() == 2) {
      pos_ways.push_back({P[0], P[1]});
      pos_ways.push_back({P[1], P[0]});
    }
    if (N.empty()) neg_ways.push_back({-1, -1});
    if (N.size() == 1) {
      neg_ways.push_back({N[0], -1});
      neg_ways.push_back({-1, N[0]});
    }
    if (N.size() == 2) {
      neg_ways.push_back({N[0], N[1]});
      neg_ways.push_back({N[1], N[0]});
    }
    for (const auto& p : pos_ways)
      for (const auto& n : neg_ways)
        var_options[v].push_back({p[0], p[1], n[0], n[1]});
  }

  // Odometer over incidence rotations (first dart of every vertex pinned).
  RotationSystem rot = default_rotation(inc);
  const int nv = V + C;
  while (true) {
    FaceReport rep = faces(inc, rot);
    if (inc.n() - inc.m() + static_cast<int>(rep.faces.size()) == 2) {
      // Odometer over per-variable assignments.
      std::vector<size_t> pick(V, 0);
      while (true) {
        std::vector<std::array<int, 4>> slot_occ(V);
        for (int v = 0; v < V; ++v) slot_occ[v] = var_options[v][pick[v]];
        auto got = detail::mm5_attempt(phi, occs, inc, rot, slot_occ);
        if (got) return *got;
        int v = 0;
        while (v < V && ++pick[v] == var_options[v].size()) pick[v++] = 0;
        if (v == V) break;
      }
    }
    int v = 0;
    while (v < nv &&
           !std::next_permutation(rot.order[v].begin() + 1, rot.order[v].end())) {
      std::sort(rot.order[v].begin() + 1, rot.order[v].end());
      ++v;
    }
    if (v == nv) break;
  }
  fail(ErrorCode::RegimeViolation, "no planar gadget layout found for this formula");
}

// ---------------------------------------------------------------------------
// Seeded random biconnected planar multigraph, built by recursive
// series/parallel/wheel composition between two poles. Spends exactly
// max(2, m_target) edges; n_target only biases the series/parallel choice.
inline Multigraph gen_random_biconnected(int n_target, int m_target,
                                         unsigned long long seed) {
  if (n_target < 2 || m_target < 2)
    fail(ErrorCode::InvalidParams, "need at least 2 vertices and 2 edges");
  std::mt19937_64 rng(seed);
  const int budget = m_target;
  std::vector<std::pair<int, int>> ends;
  int next_vertex = 2;
  std::function<void(int, int, int)> grow = [&](int u, int v, int b) {
    if (b == 1) {
      ends.push_back({u, v});
      return;
    }
    enum { S, P, R };
    std::vector<int> kinds;
    const bool want_verts = next_vertex < n_target;
    for (int i = 0; i < (want_verts ? 4 : 1); ++i) kinds.push_back(S);
    for (int i = 0; i < (want_verts ? 1 : 3); ++i) kinds.push_back(P);
    if (b >= 5)
      for (int i = 0; i < 2; ++i) kinds.push_back(R);
    const int kind = kinds[rng() % kinds.size()];
    auto split = [&](int parts, int total) {
      std::vector<int> part(parts, 1);
      for (int i = 0; i < total - parts; ++i) part[rng() % parts]++;
      return part;
    };
    if (kind == S) {
      const int t = 2 + (b > 2 ? static_cast<int>(rng() % 2) : 0);
      auto part = split(t, b);
      int prev = u;
      for (int i = 0; i < t; ++i) {
        const int nxt = (i + 1 == t) ? v : next_vertex++;
        grow(prev, nxt, part[i]);
        prev = nxt;
      }
    } else if (kind == P) {
      const int t = 2 + (b > 2 ? static_cast<int>(rng() % 2) : 0);
      for (int part : split(t, b)) grow(u, v, part);
    } else {
      // Wheel with d outer vertices whose outer edge between the poles is
      // the open slot: d-1 outer edges plus d spokes, surplus budget pushed
      // into recursive slot components.
      const int d = (b >= 7 && (rng() & 1)) ? 4 : 3;
      const int base = 2 * d - 1;
      auto extra = split(base, b);
      const int hub = next_vertex++;
      std::vector<int> outer{u, v};
      for (int i = 2; i < d; ++i) outer.push_back(next_vertex++);
      int slot = 0;
      auto attach = [&](int x, int y) { grow(x, y, extra[slot++]); };
      for (int i = 1; i + 1 < d; ++i) attach(outer[i], outer[i + 1]);
      attach(outer[d - 1], u);
      for (int i = 0; i < d; ++i) attach(outer[i], hub);
    }
  };
  const int b1 = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(budget - 1));
  grow(0, 1, b1);
  grow(0, 1, budget - b1);
  Multigraph g = make_graph(next_vertex, ends);
  if (!is_biconnected(g))
    fail(ErrorCode::Internal, "random synthesis produced a non-biconnected graph");
  return g;
}

}  // namespace faceopt
