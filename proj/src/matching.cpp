#include "map2ec/matching.hpp"

#include <algorithm>
#include <queue>

namespace map2ec {

namespace {

// Edmonds' blossom algorithm over dense indices 0..n-1.
class Blossom {
 public:
  explicit Blossom(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

  void add_edge(int u, int v) {
    if (u == v) return;
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }

  // match[v] = partner or -1
  std::vector<int> solve() {
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    match_.assign(static_cast<std::size_t>(n_), -1);
    p_.assign(static_cast<std::size_t>(n_), -1);
    base_.resize(static_cast<std::size_t>(n_));
    // greedy seed
    for (int v = 0; v < n_; ++v) {
      if (match_[static_cast<std::size_t>(v)] != -1) continue;
      for (int to : adj_[static_cast<std::size_t>(v)])
        if (match_[static_cast<std::size_t>(to)] == -1) {
          match_[static_cast<std::size_t>(v)] = to;
          match_[static_cast<std::size_t>(to)] = v;
          break;
        }
    }
    for (int v = 0; v < n_; ++v)
      if (match_[static_cast<std::size_t>(v)] == -1) {
        int u = find_path(v);
        while (u != -1) {  // augment along parent links
          int pv = p_[static_cast<std::size_t>(u)];
          int ppv = match_[static_cast<std::size_t>(pv)];
          match_[static_cast<std::size_t>(u)] = pv;
          match_[static_cast<std::size_t>(pv)] = u;
          u = ppv;
        }
      }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    int v = a;
    while (true) {
      v = base_[static_cast<std::size_t>(v)];
      seen[static_cast<std::size_t>(v)] = true;
      if (match_[static_cast<std::size_t>(v)] == -1) break;
      v = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(v)])];
    }
    v = b;
    while (true) {
      v = base_[static_cast<std::size_t>(v)];
      if (seen[static_cast<std::size_t>(v)]) return v;
      v = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(v)])];
    }
  }

  void mark_path(int v, int b, int child, std::vector<bool>& in_blossom) {
    while (base_[static_cast<std::size_t>(v)] != b) {
      in_blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = true;
      in_blossom[static_cast<std::size_t>(
          base_[static_cast<std::size_t>(match_[static_cast<std::size_t>(v)])])] = true;
      p_[static_cast<std::size_t>(v)] = child;
      child = match_[static_cast<std::size_t>(v)];
      v = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(v)])];
    }
  }

  int find_path(int root) {
    std::vector<bool> used(static_cast<std::size_t>(n_), false);
    std::fill(p_.begin(), p_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[static_cast<std::size_t>(i)] = i;
    used[static_cast<std::size_t>(root)] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj_[static_cast<std::size_t>(v)]) {
        if (base_[static_cast<std::size_t>(v)] == base_[static_cast<std::size_t>(to)] ||
            match_[static_cast<std::size_t>(v)] == to)
          continue;
        if (to == root ||
            (match_[static_cast<std::size_t>(to)] != -1 &&
             p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(to)])] != -1)) {
          int curbase = lca(v, to);
          std::vector<bool> in_blossom(static_cast<std::size_t>(n_), false);
          mark_path(v, curbase, to, in_blossom);
          mark_path(to, curbase, v, in_blossom);
          for (int i = 0; i < n_; ++i)
            if (in_blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(i)])]) {
              base_[static_cast<std::size_t>(i)] = curbase;
              if (!used[static_cast<std::size_t>(i)]) {
                used[static_cast<std::size_t>(i)] = true;
                q.push(i);
              }
            }
        } else if (p_[static_cast<std::size_t>(to)] == -1) {
          p_[static_cast<std::size_t>(to)] = v;
          if (match_[static_cast<std::size_t>(to)] == -1) return to;
          used[static_cast<std::size_t>(match_[static_cast<std::size_t>(to)])] = true;
          q.push(match_[static_cast<std::size_t>(to)]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, p_, base_;
};

}  // namespace

EdgeSet max_matching(const Graph& g) {
  int n = g.vertex_count();
  if (n == 0) return {};
  std::map<VertexId, int> idx;
  for (int i = 0; i < n; ++i) idx[g.vertices()[static_cast<std::size_t>(i)]] = i;
  Blossom bl(n);
  for (const Edge& e : g.edges()) bl.add_edge(idx[e.u], idx[e.v]);
  std::vector<int> match = bl.solve();
  EdgeSet out;
  for (int i = 0; i < n; ++i) {
    int j = match[static_cast<std::size_t>(i)];
    if (j <= i) continue;
    VertexId u = g.vertices()[static_cast<std::size_t>(i)];
    VertexId v = g.vertices()[static_cast<std::size_t>(j)];
    auto e = g.find_edge(u, v);
    require(e.has_value(), Err::Internal, "matching produced a non-edge");
    out.push_back(*e);
  }
  return sorted_unique(std::move(out));
}

EdgeSet max_degree_constrained_subgraph(const Graph& g, const DegreeBounds& b) {
  for (VertexId v : g.vertices())
    require(b.at(v) <= g.degree(v), Err::CapacityExceedsDegree,
            "cap(" + std::to_string(v) + ") = " + std::to_string(b.at(v)) + " exceeds degree " +
                std::to_string(g.degree(v)));
  int m = g.edge_count();
  // gadget node ids: copies first, then (eA, eB) per edge
  std::map<VertexId, std::pair<int, int>> copy_range;  // [first, count)
  int next = 0;
  for (VertexId v : g.vertices()) {
    copy_range[v] = {next, b.at(v)};
    next += b.at(v);
  }
  int edge_base = next;
  next += 2 * m;
  Blossom bl(next);
  for (EdgeId e = 0; e < m; ++e) {
    int ea = edge_base + 2 * e;
    int eb = ea + 1;
    bl.add_edge(ea, eb);
    const Edge& ed = g.edge(e);
    auto [fu, cu] = copy_range[ed.u];
    for (int i = 0; i < cu; ++i) bl.add_edge(ea, fu + i);
    auto [fv, cv] = copy_range[ed.v];
    for (int i = 0; i < cv; ++i) bl.add_edge(eb, fv + i);
  }
  std::vector<int> match = bl.solve();

  // Normalize: if exactly one side of an edge gadget is matched to a copy and
  // the other side is free, rematch the pair internally (same cardinality).
  for (EdgeId e = 0; e < m; ++e) {
    int ea = edge_base + 2 * e;
    int eb = ea + 1;
    int ma = match[static_cast<std::size_t>(ea)];
    int mb = match[static_cast<std::size_t>(eb)];
    if ((ma == -1) != (mb == -1)) {
      if (ma != -1) match[static_cast<std::size_t>(ma)] = -1;
      if (mb != -1) match[static_cast<std::size_t>(mb)] = -1;
      match[static_cast<std::size_t>(ea)] = eb;
      match[static_cast<std::size_t>(eb)] = ea;
    }
  }
  int matched_pairs = 0;
  for (int v = 0; v < next; ++v)
    if (match[static_cast<std::size_t>(v)] > v) ++matched_pairs;

  EdgeSet selected;
  for (EdgeId e = 0; e < m; ++e) {
    int ea = edge_base + 2 * e;
    int eb = ea + 1;
    int ma = match[static_cast<std::size_t>(ea)];
    int mb = match[static_cast<std::size_t>(eb)];
    if (ma != -1 && ma != eb && mb != -1 && mb != ea) selected.push_back(e);
  }
  // Gadget projection identity: |selected| = |matching| - |E|.
  require(static_cast<int>(selected.size()) == matched_pairs - m, Err::Internal,
          "gadget projection offset mismatch");
  std::map<VertexId, int> deg;
  for (EdgeId e : selected) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  for (VertexId v : g.vertices())
    require(deg[v] <= b.at(v), Err::Internal, "degree-constrained subgraph violates a cap");
  return selected;
}

}  // namespace map2ec
