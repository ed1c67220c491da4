#include "hpclab/maxflow.hpp"

#include <map>
#include <queue>

#include "hpclab/instances.hpp"

namespace hpclab {

namespace {

struct Dinic {
  struct Arc {
    int to;
    BigInt cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> level, iter;

  explicit Dinic(int n) : adj(n), level(n), iter(n) {}

  void add_arc(int u, int v, const BigInt& cap_uv, const BigInt& cap_vu) {
    adj[u].push_back({v, cap_uv, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, cap_vu, static_cast<int>(adj[u].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Arc& a : adj[u])
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[u] + 1;
          q.push(a.to);
        }
    }
    return level[t] >= 0;
  }

  BigInt dfs(int u, int t, const BigInt& limit) {
    if (u == t) return limit;
    for (int& i = iter[u]; i < static_cast<int>(adj[u].size()); ++i) {
      Arc& a = adj[u][i];
      if (a.cap <= 0 || level[a.to] != level[u] + 1) continue;
      BigInt pushed = dfs(a.to, t, limit < a.cap ? limit : a.cap);
      if (pushed > 0) {
        a.cap -= pushed;
        adj[a.to][a.rev].cap += pushed;
        return pushed;
      }
    }
    level[u] = -1;
    return 0;
  }

  BigInt run(int s, int t, const BigInt& infinite) {
    BigInt flow = 0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      for (;;) {
        BigInt pushed = dfs(s, t, infinite);
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }
};

}  // namespace

MaxFlowResult max_flow(const LayeredGraph& g) {
  if (g.s < 0 || g.t < 0 || g.s >= g.vertex_count || g.t >= g.vertex_count)
    throw std::invalid_argument("max_flow: graph has no designated s/t");

  // Merge parallel edges: capacity of (u,v) is the total weight between them.
  std::map<std::pair<int, int>, BigInt> cap;
  for (const auto& e : g.edges) {
    if (e.weight < 0) throw std::invalid_argument("max_flow: negative capacity");
    if (e.tail == e.head) continue;
    if (g.directed) {
      cap[{e.tail, e.head}] += e.weight;
    } else {
      int u = std::min(e.tail, e.head), v = std::max(e.tail, e.head);
      cap[{u, v}] += e.weight;
    }
  }

  Dinic dinic(g.vertex_count);
  BigInt total = 0;
  for (const auto& [uv, c] : cap) {
    total += c;
    if (g.directed)
      dinic.add_arc(uv.first, uv.second, c, BigInt(0));
    else
      dinic.add_arc(uv.first, uv.second, c, c);
  }

  MaxFlowResult res;
  res.value = dinic.run(g.s, g.t, total + 1);

  res.source_side.assign(g.vertex_count, 0);
  std::queue<int> q;
  q.push(g.s);
  res.source_side[g.s] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const auto& a : dinic.adj[u])
      if (a.cap > 0 && !res.source_side[a.to]) {
        res.source_side[a.to] = 1;
        q.push(a.to);
      }
  }

  res.cut_weight = 0;
  for (const auto& [uv, c] : cap) {
    bool crosses = g.directed ? (res.source_side[uv.first] && !res.source_side[uv.second])
                              : (res.source_side[uv.first] != res.source_side[uv.second]);
    if (crosses) {
      res.cut_edges.push_back(uv);
      res.cut_weight += c;
    }
  }
  return res;
}

BigInt brute_force_min_cut(const LayeredGraph& g) {
  if (g.s < 0 || g.t < 0) throw std::invalid_argument("brute_force_min_cut: needs s and t");
  std::vector<int> free_vertices;
  for (int v = 0; v < g.vertex_count; ++v)
    if (v != g.s && v != g.t) free_vertices.push_back(v);
  if (free_vertices.size() > 20)
    throw ResourceError("brute_force_min_cut: budget is 20 free vertices, got " +
                        std::to_string(free_vertices.size()));

  // Pre-merge capacities once.
  std::map<std::pair<int, int>, BigInt> cap;
  for (const auto& e : g.edges) {
    if (e.tail == e.head) continue;
    cap[{e.tail, e.head}] += e.weight;
  }

  std::vector<char> side(g.vertex_count, 0);
  side[g.s] = 1;
  BigInt best = -1;
  for (std::uint64_t mask = 0; mask < (1ULL << free_vertices.size()); ++mask) {
    for (std::size_t i = 0; i < free_vertices.size(); ++i)
      side[free_vertices[i]] = (mask >> i) & 1 ? 1 : 0;
    BigInt val = 0;
    for (const auto& [uv, c] : cap) {
      bool crosses = g.directed ? (side[uv.first] && !side[uv.second]) : (side[uv.first] != side[uv.second]);
      if (crosses) val += c;
    }
    if (best < 0 || val < best) best = val;
  }
  return best;
}

}  // namespace hpclab
