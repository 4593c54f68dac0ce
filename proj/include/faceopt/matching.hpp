#pragma once
// Combinatorial kernels used by the face-size optimizers: maximum bipartite
// matching (Hopcroft-Karp) and integer maximum flow (Dinic).

#include <functional>
#include <queue>
#include <vector>

#include "faceopt/core.hpp"

namespace faceopt {

// --- maximum bipartite matching -------------------------------------------

// adj[l] lists the right-side neighbours of left vertex l. Returns the
// matched right vertex per left vertex, -1 where unmatched. Deterministic:
// augmenting paths follow adjacency order.
inline std::vector<int> max_bipartite_matching(int num_left, int num_right,
                                               const std::vector<std::vector<int>>& adj) {
  std::vector<int> match_l(num_left, -1), match_r(num_right, -1);
  std::vector<int> dist(num_left, -1);

  auto bfs = [&]() {
    std::queue<int> q;
    bool reachable_free = false;
    for (int l = 0; l < num_left; ++l) {
      dist[l] = match_l[l] < 0 ? 0 : -1;
      if (match_l[l] < 0) q.push(l);
    }
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int l2 = match_r[r];
        if (l2 < 0)
          reachable_free = true;
        else if (dist[l2] < 0) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int l) -> bool {
    for (int r : adj[l]) {
      int l2 = match_r[r];
      if (l2 < 0 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = -1;
    return false;
  };

  while (bfs())
    for (int l = 0; l < num_left; ++l)
      if (match_l[l] < 0) dfs(l);
  return match_l;
}

inline int matching_size(const std::vector<int>& match_l) {
  int k = 0;
  for (int r : match_l) k += r >= 0;
  return k;
}

// --- maximum flow -----------------------------------------------------------

// Dinic's algorithm over integer capacities. add_edge returns a handle;
// after run(), flow_on(handle) reports the flow pushed through that edge.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : out_(n) {}

  int add_node() {
    out_.emplace_back();
    return static_cast<int>(out_.size()) - 1;
  }

  int num_nodes() const { return static_cast<int>(out_.size()); }

  int add_edge(int u, int v, long long cap) {
    int h = static_cast<int>(to_.size());
    to_.push_back(v);
    cap_.push_back(cap);
    out_[u].push_back(h);
    to_.push_back(u);
    cap_.push_back(0);
    out_[v].push_back(h + 1);
    return h;
  }

  long long flow_on(int handle) const { return cap_[handle ^ 1]; }

  long long run(int s, int t) {
    long long total = 0;
    while (bfs(s, t)) {
      iter_.assign(out_.size(), 0);
      while (long long f = dfs(s, t, kInf)) total += f;
    }
    return total;
  }

  // Nodes reachable from s in the residual network; after run() this is the
  // source side of a minimum cut.
  std::vector<bool> residual_reachable(int s) const {
    std::vector<bool> seen(out_.size(), false);
    std::queue<int> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int h : out_[u])
        if (cap_[h] > 0 && !seen[to_[h]]) {
          seen[to_[h]] = true;
          q.push(to_[h]);
        }
    }
    return seen;
  }

 private:
  static constexpr long long kInf = 1LL << 60;

  bool bfs(int s, int t) {
    level_.assign(out_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int h : out_[u])
        if (cap_[h] > 0 && level_[to_[h]] < 0) {
          level_[to_[h]] = level_[u] + 1;
          q.push(to_[h]);
        }
    }
    return level_[t] >= 0;
  }

  long long dfs(int u, int t, long long lim) {
    if (u == t) return lim;
    for (int& i = iter_[u]; i < static_cast<int>(out_[u].size()); ++i) {
      int h = out_[u][i];
      int v = to_[h];
      if (cap_[h] <= 0 || level_[v] != level_[u] + 1) continue;
      long long f = dfs(v, t, std::min(lim, cap_[h]));
      if (f > 0) {
        cap_[h] -= f;
        cap_[h ^ 1] += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<int> to_;
  std::vector<long long> cap_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_, iter_;
};

}  // namespace faceopt
