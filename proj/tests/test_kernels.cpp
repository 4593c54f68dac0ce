// Kernels under the optimizers: Hopcroft-Karp matching vs brute force,
// Dinic max-flow certified by min cuts, and the exact rational simplex vs
// vertex enumeration of the feasible region.
#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "faceopt/matching.hpp"
#include "faceopt/simplex.hpp"

using namespace faceopt;

namespace {

Rational rat(long long a, long long b = 1) { return Rational(BigInt(a), BigInt(b)); }

int brute_matching(const std::vector<std::vector<int>>& adj, size_t l, unsigned used) {
  if (l == adj.size()) return 0;
  int best = brute_matching(adj, l + 1, used);
  for (int r : adj[l])
    if (!(used >> r & 1u))
      best = std::max(best, 1 + brute_matching(adj, l + 1, used | 1u << r));
  return best;
}

// Can every item pick one of its two bins without exceeding capacities?
bool brute_assign(const std::vector<std::array<int, 2>>& choices, std::vector<int>& room,
                  size_t i) {
  if (i == choices.size()) return true;
  for (int f : choices[i])
    if (room[f] > 0) {
      --room[f];
      if (brute_assign(choices, room, i + 1)) return true;
      ++room[f];
    }
  return false;
}

// Unique solution of a square rational system, if nonsingular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const Rational zero(0);
  int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n && piv < 0; ++i)
      if (a[i][col] != zero) piv = i;
    if (piv < 0) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rational pv = a[col][col];
    for (Rational& v : a[col]) v /= pv;
    b[col] /= pv;
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col] == zero) continue;
      Rational f = a[i][col];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  return b;
}

struct Cons {
  std::vector<Rational> a;
  int rel;  // -1: <=, 0: ==, +1: >=
  Rational b;
};

bool satisfies(const std::vector<Cons>& cs, const std::vector<Rational>& x) {
  for (const Cons& c : cs) {
    Rational lhs(0);
    for (size_t j = 0; j < x.size(); ++j) lhs += c.a[j] * x[j];
    if (c.rel < 0 && lhs > c.b) return false;
    if (c.rel == 0 && lhs != c.b) return false;
    if (c.rel > 0 && lhs < c.b) return false;
  }
  return true;
}

struct BruteLp {
  bool feasible = false;
  bool has_vertex = false;
  Rational best;  // min objective over feasible vertices
};

// The region {Ax rel b, x >= 0} is pointed, so it is nonempty iff it has a
// vertex, and a bounded LP attains its optimum at one. Enumerate all
// n-subsets of tight constraints.
BruteLp brute_lp(const LpProblem& p) {
  int n = p.num_vars;
  std::vector<Cons> cs;
  for (size_t i = 0; i < p.rows.size(); ++i) {
    Cons c{std::vector<Rational>(n, Rational(0)), p.rels[i], p.rhs[i]};
    for (const auto& [j, v] : p.rows[i]) c.a[j] += v;
    cs.push_back(std::move(c));
  }
  for (int j = 0; j < n; ++j) {
    Cons c{std::vector<Rational>(n, Rational(0)), 1, Rational(0)};
    c.a[j] = Rational(1);
    cs.push_back(std::move(c));
  }
  BruteLp out;
  std::vector<int> pick;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (static_cast<int>(pick.size()) == n) {
      std::vector<std::vector<Rational>> m;
      std::vector<Rational> rhs;
      for (int i : pick) {
        m.push_back(cs[i].a);
        rhs.push_back(cs[i].b);
      }
      auto x = solve_square(std::move(m), std::move(rhs));
      if (!x || !satisfies(cs, *x)) return;
      out.feasible = true;
      Rational obj(0);
      for (int j = 0; j < n; ++j) obj += p.cost[j] * (*x)[j];
      if (!out.has_vertex || obj < out.best) {
        out.has_vertex = true;
        out.best = obj;
      }
      return;
    }
    for (size_t i = start; i + (n - pick.size()) <= cs.size(); ++i) {
      pick.push_back(static_cast<int>(i));
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

LpProblem with_box(const LpProblem& p, long long box) {
  LpProblem q = p;
  for (int j = 0; j < p.num_vars; ++j) q.add_row({{j, rat(1)}}, LpProblem::LessEq, rat(box));
  return q;
}

}  // namespace

TEST_CASE("bipartite matching on pinned instances") {
  // K_{3,3}: perfect matching.
  std::vector<std::vector<int>> k33(3, {0, 1, 2});
  auto m = max_bipartite_matching(3, 3, k33);
  CHECK(matching_size(m) == 3);
  // All left vertices compete for one right vertex.
  std::vector<std::vector<int>> star(3, {0});
  CHECK(matching_size(max_bipartite_matching(3, 1, star)) == 1);
  CHECK(matching_size(max_bipartite_matching(2, 2, {{}, {}})) == 0);
}

TEST_CASE("bipartite matching matches brute force on random instances") {
  std::mt19937 rng(20260814);
  for (int it = 0; it < 300; ++it) {
    int nl = 1 + (int)(rng() % 6), nr = 1 + (int)(rng() % 6);
    std::vector<std::vector<int>> adj(nl);
    for (int l = 0; l < nl; ++l)
      for (int r = 0; r < nr; ++r)
        if (rng() % 5 < 2) adj[l].push_back(r);
    auto ml = max_bipartite_matching(nl, nr, adj);
    CAPTURE(nl, nr, it);
    REQUIRE(matching_size(ml) == brute_matching(adj, 0, 0));
    // The reported matching is a real one.
    std::vector<bool> used(nr, false);
    for (int l = 0; l < nl; ++l) {
      if (ml[l] < 0) continue;
      REQUIRE(std::count(adj[l].begin(), adj[l].end(), ml[l]) == 1);
      REQUIRE(!used[ml[l]]);
      used[ml[l]] = true;
    }
  }
}

TEST_CASE("max flow on a pinned network") {
  MaxFlow f(4);
  f.add_edge(0, 1, 3);
  f.add_edge(0, 2, 2);
  f.add_edge(1, 2, 1);
  int at = f.add_edge(1, 3, 2);
  int bt = f.add_edge(2, 3, 3);
  CHECK(f.run(0, 3) == 5);
  CHECK(f.flow_on(at) == 2);
  CHECK(f.flow_on(bt) == 3);
}

TEST_CASE("max flow is certified by a minimum cut on random networks") {
  std::mt19937 rng(77);
  for (int it = 0; it < 300; ++it) {
    int n = 2 + (int)(rng() % 6);
    MaxFlow f(n);
    struct E {
      int u, v, h;
      long long cap;
    };
    std::vector<E> edges;
    int m = 2 + (int)(rng() % 12);
    for (int i = 0; i < m; ++i) {
      int u = (int)(rng() % n), v = (int)(rng() % n);
      if (u == v) continue;
      long long cap = rng() % 6;
      edges.push_back({u, v, f.add_edge(u, v, cap), cap});
    }
    long long value = f.run(0, n - 1);
    CAPTURE(n, it);
    // Capacity bounds and flow conservation.
    std::vector<long long> net(n, 0);
    for (const E& e : edges) {
      long long fl = f.flow_on(e.h);
      REQUIRE(fl >= 0);
      REQUIRE(fl <= e.cap);
      net[e.u] -= fl;
      net[e.v] += fl;
    }
    for (int v = 1; v + 1 < n; ++v) REQUIRE(net[v] == 0);
    REQUIRE(net[n - 1] == value);
    // Weak duality closes: the residual cut has exactly the flow's value.
    auto reach = f.residual_reachable(0);
    REQUIRE(!reach[n - 1]);
    long long cut = 0;
    for (const E& e : edges)
      if (reach[e.u] && !reach[e.v]) cut += e.cap;
    REQUIRE(cut == value);
  }
}

TEST_CASE("two-choice assignment feasibility via flow matches brute force") {
  std::mt19937 rng(5150);
  for (int it = 0; it < 200; ++it) {
    int ne = 1 + (int)(rng() % 6), nf = 1 + (int)(rng() % 4);
    std::vector<std::array<int, 2>> choices(ne);
    for (auto& c : choices) {
      c[0] = (int)(rng() % nf);
      c[1] = (int)(rng() % nf);
    }
    std::vector<int> room(nf);
    for (int& r : room) r = (int)(rng() % 4);
    MaxFlow f(2 + ne + nf);
    for (int e = 0; e < ne; ++e) {
      f.add_edge(0, 2 + e, 1);
      f.add_edge(2 + e, 2 + ne + choices[e][0], 1);
      if (choices[e][1] != choices[e][0]) f.add_edge(2 + e, 2 + ne + choices[e][1], 1);
    }
    for (int b = 0; b < nf; ++b) f.add_edge(2 + ne + b, 1, room[b]);
    bool flow_ok = f.run(0, 1) == ne;
    std::vector<int> room2 = room;
    CAPTURE(ne, nf, it);
    REQUIRE(flow_ok == brute_assign(choices, room2, 0));
  }
}

TEST_CASE("simplex on pinned programs") {
  {
    LpProblem p;
    int x = p.add_var(rat(-1)), y = p.add_var(rat(-1));
    p.add_row({{x, rat(1)}, {y, rat(1)}}, LpProblem::LessEq, rat(1));
    auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == rat(-1));
  }
  {
    // Exact fractional optimum.
    LpProblem p;
    int x = p.add_var(rat(1));
    p.add_row({{x, rat(3)}}, LpProblem::GreaterEq, rat(1));
    auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == rat(1, 3));
    CHECK(s.objective == rat(1, 3));
  }
  {
    // Equalities only.
    LpProblem p;
    int x = p.add_var(rat(1)), y = p.add_var(rat(1));
    p.add_row({{x, rat(1)}, {y, rat(1)}}, LpProblem::Eq, rat(2));
    p.add_row({{x, rat(1)}, {y, rat(-1)}}, LpProblem::Eq, rat(0));
    auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x == std::vector<Rational>{rat(1), rat(1)});
    CHECK(s.objective == rat(2));
  }
  {
    // A redundant duplicated equality must be dropped, not break phase 2.
    LpProblem p;
    int x = p.add_var(rat(1));
    p.add_row({{x, rat(1)}}, LpProblem::Eq, rat(1));
    p.add_row({{x, rat(1)}}, LpProblem::Eq, rat(1));
    auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == rat(1));
  }
  {
    LpProblem p;
    int x = p.add_var(rat(-1));
    p.add_row({{x, rat(1)}}, LpProblem::LessEq, rat(4));
    p.add_row({{x, rat(1)}}, LpProblem::GreaterEq, rat(6));
    CHECK(solve_lp(p).status == LpStatus::Infeasible);
  }
  {
    LpProblem p;
    int x = p.add_var(rat(-1));
    p.add_row({{x, rat(1)}}, LpProblem::GreaterEq, rat(1));
    CHECK(solve_lp(p).status == LpStatus::Unbounded);
  }
  {
    // No constraints at all.
    LpProblem p;
    p.add_var(rat(0));
    auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == rat(0));
    LpProblem q;
    q.add_var(rat(-1));
    CHECK(solve_lp(q).status == LpStatus::Unbounded);
  }
  {
    // Beale's cycling example; Bland's rule must terminate at -1/20.
    LpProblem p;
    int x1 = p.add_var(rat(-3, 4)), x2 = p.add_var(rat(150));
    int x3 = p.add_var(rat(-1, 50)), x4 = p.add_var(rat(6));
    p.add_row({{x1, rat(1, 4)}, {x2, rat(-60)}, {x3, rat(-1, 25)}, {x4, rat(9)}},
              LpProblem::LessEq, rat(0));
    p.add_row({{x1, rat(1, 2)}, {x2, rat(-90)}, {x3, rat(-1, 50)}, {x4, rat(3)}},
              LpProblem::LessEq, rat(0));
    p.add_row({{x3, rat(1)}}, LpProblem::LessEq, rat(1));
    auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == rat(-1, 20));
  }
}

TEST_CASE("simplex agrees with vertex enumeration on random programs") {
  std::mt19937 rng(424242);
  auto small = [&](int lo, int hi) { return lo + (int)(rng() % (hi - lo + 1)); };
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int it = 0; it < 300; ++it) {
    LpProblem p;
    int n = small(1, 4);
    for (int j = 0; j < n; ++j) p.add_var(rat(small(-3, 3)));
    int m = small(0, 4);
    for (int i = 0; i < m; ++i) {
      std::vector<std::pair<int, Rational>> terms;
      for (int j = 0; j < n; ++j) {
        int coeff = small(-3, 3);
        if (coeff != 0) terms.push_back({j, rat(coeff)});
      }
      auto rel = static_cast<LpProblem::Rel>(small(-1, 1));
      p.add_row(std::move(terms), rel, rat(small(-5, 5)));
    }
    CAPTURE(it, n, m);
    LpSolution s = solve_lp(p);
    BruteLp brute = brute_lp(p);
    if (s.status == LpStatus::Infeasible) {
      REQUIRE(!brute.feasible);
      ++infeasible;
      continue;
    }
    REQUIRE(brute.feasible);
    if (s.status == LpStatus::Optimal) {
      REQUIRE(s.objective == brute.best);
      // The reported point is feasible and achieves the objective.
      std::vector<Cons> cs;
      for (size_t i = 0; i < p.rows.size(); ++i) {
        Cons c{std::vector<Rational>(n, Rational(0)), p.rels[i], p.rhs[i]};
        for (const auto& [j, v] : p.rows[i]) c.a[j] += v;
        cs.push_back(std::move(c));
      }
      REQUIRE(satisfies(cs, s.x));
      for (const Rational& v : s.x) REQUIRE(v >= Rational(0));
      Rational obj(0);
      for (int j = 0; j < n; ++j) obj += p.cost[j] * s.x[j];
      REQUIRE(obj == s.objective);
      // Self-certification: demanding strictly better is infeasible.
      LpProblem better = p;
      std::vector<std::pair<int, Rational>> objrow;
      for (int j = 0; j < n; ++j)
        if (p.cost[j] != Rational(0)) objrow.push_back({j, p.cost[j]});
      better.add_row(std::move(objrow), LpProblem::LessEq, s.objective - rat(1));
      REQUIRE(solve_lp(better).status == LpStatus::Infeasible);
      ++optimal;
    } else {
      // Unboundedness: inside a huge box, the optimum drops strictly below
      // every vertex of the original region, which a bounded program's
      // optimum never could (boxing only shrinks the region).
      BruteLp boxed = brute_lp(with_box(p, 1000000));
      REQUIRE(boxed.has_vertex);
      REQUIRE(boxed.best < brute.best);
      LpSolution sb = solve_lp(with_box(p, 1000000));
      REQUIRE(sb.status == LpStatus::Optimal);
      REQUIRE(sb.objective == boxed.best);
      ++unbounded;
    }
  }
  // The generator really exercises all three outcomes.
  CHECK(optimal >= 60);
  CHECK(infeasible >= 30);
  CHECK(unbounded >= 30);
}
