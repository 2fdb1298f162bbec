#include "credal/graph.hpp"

#include <algorithm>
#include <functional>

namespace credal {

std::vector<int> topological_order(const ParentLists& parents) {
  const int n = static_cast<int>(parents.size());
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> ch(n);
  for (int v = 0; v < n; ++v) {
    for (int p : parents[v]) {
      if (p < 0 || p >= n)
        throw validation_error("graph: parent index out of range");
      ch[p].push_back(v);
      ++indeg[v];
    }
  }
  std::vector<int> stack, order;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int c : ch[v])
      if (--indeg[c] == 0) stack.push_back(c);
  }
  if (static_cast<int>(order.size()) != n)
    throw validation_error("graph: directed cycle");
  return order;
}

std::vector<std::vector<int>> children_lists(const ParentLists& parents) {
  std::vector<std::vector<int>> ch(parents.size());
  for (int v = 0; v < static_cast<int>(parents.size()); ++v)
    for (int p : parents[v]) ch[p].push_back(v);
  return ch;
}

ParentLists drop_out_arcs(const ParentLists& parents,
                          const std::vector<bool>& fixed) {
  ParentLists out(parents.size());
  for (size_t v = 0; v < parents.size(); ++v)
    for (int p : parents[v])
      if (!fixed[p]) out[v].push_back(p);
  return out;
}

std::vector<int> markov_blanket_plus(const ParentLists& parents, int node) {
  const int n = static_cast<int>(parents.size());
  std::vector<bool> in(n, false);
  in[node] = true;
  for (int p : parents[node]) in[p] = true;
  for (int v = 0; v < n; ++v) {
    bool child = false;
    for (int p : parents[v])
      if (p == node) child = true;
    if (!child) continue;
    in[v] = true;
    for (int p : parents[v]) in[p] = true;
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (in[v]) out.push_back(v);
  return out;
}

namespace {

// Undirected skeleton restricted to a node subset: adjacency with edge ids,
// one edge per arc (the graph is a DAG, so no parallel edges).
struct Skeleton {
  std::vector<int> nodes;             // sorted subset
  std::vector<int> pos;               // node -> position in `nodes`, or -1
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor pos, edge)
  int edges = 0;
};

Skeleton make_skeleton(const ParentLists& parents,
                       const std::vector<int>& subset) {
  Skeleton s;
  s.nodes = subset;
  std::sort(s.nodes.begin(), s.nodes.end());
  s.pos.assign(parents.size(), -1);
  for (size_t i = 0; i < s.nodes.size(); ++i) s.pos[s.nodes[i]] = i;
  s.adj.resize(s.nodes.size());
  for (int v : s.nodes) {
    for (int p : parents[v]) {
      if (s.pos[p] < 0) continue;
      int a = s.pos[p], b = s.pos[v];
      s.adj[a].push_back({b, s.edges});
      s.adj[b].push_back({a, s.edges});
      ++s.edges;
    }
  }
  return s;
}

// Bridges via DFS lowpoint; returns per-edge flag.
std::vector<bool> find_bridges(const Skeleton& s) {
  const int n = static_cast<int>(s.nodes.size());
  std::vector<bool> bridge(s.edges, false);
  std::vector<int> tin(n, -1), low(n, 0);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int pe) {
    tin[v] = low[v] = timer++;
    for (auto [to, e] : s.adj[v]) {
      if (e == pe) continue;
      if (tin[to] >= 0) {
        low[v] = std::min(low[v], tin[to]);
      } else {
        dfs(to, e);
        low[v] = std::min(low[v], low[to]);
        if (low[to] > tin[v]) bridge[e] = true;
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (tin[v] < 0) dfs(v, -1);
  return bridge;
}

}  // namespace

bool is_singly_connected(const ParentLists& parents,
                         const std::vector<int>& subset) {
  Skeleton s = make_skeleton(parents, subset);
  // A forest has exactly nodes - components edges; equivalently no edge lies
  // on a cycle.
  std::vector<bool> bridge = find_bridges(s);
  for (int e = 0; e < s.edges; ++e)
    if (!bridge[e]) return false;
  return true;
}

std::vector<int> find_loop_cutset(const ParentLists& parents, int class_node,
                                  const std::vector<bool>& evidence) {
  const int n = static_cast<int>(parents.size());
  std::vector<bool> fixed = evidence;
  fixed.resize(n, false);
  std::vector<int> cutset;

  for (int guard = 0; guard <= n; ++guard) {
    ParentLists view = drop_out_arcs(parents, fixed);
    std::vector<int> bplus = markov_blanket_plus(view, class_node);
    Skeleton s = make_skeleton(view, bplus);
    std::vector<bool> bridge = find_bridges(s);
    bool cyclic = false;
    for (int e = 0; e < s.edges; ++e)
      if (!bridge[e]) cyclic = true;
    if (!cyclic) {
      std::sort(cutset.begin(), cutset.end());
      return cutset;
    }

    // Eligible: a non-class, non-fixed blanket node with an outgoing
    // non-bridge arc inside the blanket.
    int best = -1, best_deg = -1;
    for (size_t i = 0; i < s.nodes.size(); ++i) {
      int v = s.nodes[i];
      if (v == class_node || fixed[v]) continue;
      bool opens = false;
      // v's outgoing arcs appear as edges where v is the parent.
      for (int u : s.nodes) {
        for (int p : view[u]) {
          if (p != v) continue;
          // find the edge id of (v, u)
          for (auto [to, e] : s.adj[i])
            if (to == s.pos[u] && !bridge[e]) opens = true;
        }
      }
      if (!opens) continue;
      int deg = static_cast<int>(s.adj[i].size());
      if (deg > best_deg) {
        best_deg = deg;
        best = v;
      }
    }
    if (best < 0)
      throw precondition_error(
          "find_loop_cutset: no eligible node can break the remaining loop");
    fixed[best] = true;
    cutset.push_back(best);
  }
  throw error("find_loop_cutset: failed to converge");
}

}  // namespace credal
